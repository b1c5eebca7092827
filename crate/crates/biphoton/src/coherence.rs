//! Off-diagonal coherence zeta of the post-selected two-qubit state.
//!
//! With the pair delay traced out, the HV/VH coherence of the post-selected
//! polarization state is
//!
//! ```text
//! zeta_W = int_{-W}^{W} M(tau) phi_HV(tau) phi_VH(tau) e^{-i dw tau} dtau
//!          -----------------------------------------------------------
//!          2 int_{-W}^{W} M(tau) phi_HV(tau) phi_VH(tau) dtau
//! ```
//!
//! where M is the biphoton intensity envelope of the modulation and W the
//! coincidence-window half-width. For the symmetric double exponential and
//! matched modulation the integral has closed forms in theta = dw * tau0:
//!
//! - unmodulated: 1 / (2 (1 + theta^2))
//! - triangular (synchronized square waves, duty 0.5):
//!   (pi x - theta + pi x theta^2 + theta^3) /
//!   [2 x (pi - x theta) (1 + theta^2)^2],  x = tanh(pi / (2 theta))
//! - cosinusoidal: (2 + 7 theta^2 + 2 theta^4) /
//!   [2 (2 + theta^2) (1 + 4 theta^2)]
//! - periodic sinc^2 with s lines: a finite sum of Lorentzians via the
//!   Fourier expansion M_s(tau) = (1/s^2) sum_k (s - |k|) e^{i k dw tau}.
//!
//! `zeta_numeric` is the independent adaptive-quadrature route used to
//! validate every closed form, and the only route that handles finite
//! windows, mismatched square-wave drives and asymmetric wavepackets.
//! Concurrence of the ideal state is C = 2 zeta, and the fidelity of the two
//! interfering two-photon wavefunctions is F = 2 zeta as well.

use crate::quad::{self, QuadError};
use crate::wavepacket::{BiphotonWavepacket, ModulationKind, ModulationSpec};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Relative tolerance for all coherence quadratures.
const QUAD_REL_TOL: f64 = 1e-9;
/// Evaluation budget per half-line integral.
const QUAD_MAX_EVALS: usize = 4_000_000;
/// Integration is truncated where exp(-tau/tau_product) < 3e-20.
const DECAY_CUTOFF: f64 = 45.0;

#[derive(Debug, Error)]
pub enum CoherenceError {
    #[error("coincidence window must be positive (or infinite), got {0}")]
    InvalidWindow(f64),
    #[error("theta must be non-negative, got {0}")]
    InvalidTheta(f64),
    #[error("periodic sinc^2 needs at least 2 terms, got {0}")]
    TooFewTerms(u32),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Parameter bundle for coherence evaluations: theta = dw * tau0, the
/// coincidence-window half-width (ns, may be infinite) and the modulation.
#[derive(Clone, Copy, Debug)]
pub struct CoherenceParams {
    pub theta: f64,
    pub window: f64,
    pub modulation: ModulationSpec,
}

impl CoherenceParams {
    pub fn new(
        theta: f64,
        window: f64,
        modulation: ModulationSpec,
    ) -> Result<Self, CoherenceError> {
        if !(theta >= 0.0) {
            return Err(CoherenceError::InvalidTheta(theta));
        }
        if !(window > 0.0) {
            return Err(CoherenceError::InvalidWindow(window));
        }
        Ok(Self {
            theta,
            window,
            modulation,
        })
    }

    /// Closed-form zeta for the matched modulation at infinite window.
    pub fn closed_form_zeta(&self) -> Result<f64, CoherenceError> {
        zeta_matched(self.theta, &self.modulation)
    }
}

/// Coherence of the unmodulated biphoton: 1 / (2 (1 + theta^2)).
pub fn zeta_unmodulated(theta: f64) -> f64 {
    0.5 / (1.0 + theta * theta)
}

/// Coherence under the matched triangular envelope (synchronized square-wave
/// modulation at duty 0.5), with x = tanh(pi / (2 theta)). The theta = 0
/// limit is 1/2.
pub fn zeta_triangular(theta: f64) -> f64 {
    if theta == 0.0 {
        return 0.5;
    }
    let x = (PI / (2.0 * theta)).tanh();
    let t2 = theta * theta;
    let numerator = PI * x - theta + PI * x * t2 + theta * t2;
    let denominator = 2.0 * x * (PI - x * theta) * (1.0 + t2) * (1.0 + t2);
    numerator / denominator
}

/// Coherence under the matched cosinusoidal envelope.
pub fn zeta_cosinusoidal(theta: f64) -> f64 {
    let t2 = theta * theta;
    (2.0 + 7.0 * t2 + 2.0 * t2 * t2) / (2.0 * (2.0 + t2) * (1.0 + 4.0 * t2))
}

/// Coherence under the matched periodic-sinc^2 envelope with `s` comb lines.
///
/// Uses the Fourier expansion M_s(tau) = (1/s^2) sum_k (s-|k|) e^{i k dw tau},
/// which turns numerator and denominator into finite Lorentzian sums
/// 1/(1 + ((k-1) theta)^2) and 1/(1 + (k theta)^2).
pub fn zeta_sinc2(theta: f64, s: u32) -> Result<f64, CoherenceError> {
    if s < 2 {
        return Err(CoherenceError::TooFewTerms(s));
    }
    let weights = ((1 - s as i64)..=(s as i64 - 1))
        .map(|k| (k, (s as i64 - k.abs()) as f64 / (s as f64 * s as f64)));
    Ok(zeta_fourier(theta, weights))
}

/// zeta from an envelope Fourier expansion M(tau) = sum_k w_k e^{i k dw tau}.
fn zeta_fourier(theta: f64, weights: impl Iterator<Item = (i64, f64)>) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (k, w) in weights {
        let km1 = (k - 1) as f64 * theta;
        let k0 = k as f64 * theta;
        num += w / (1.0 + km1 * km1);
        den += w / (1.0 + k0 * k0);
    }
    num / (2.0 * den)
}

/// Closed-form zeta for a modulation scheme assumed matched to the detuning.
/// Square waves at duty != 0.5 have no quoted closed form and are evaluated
/// through `zeta_numeric` by the callers that need them.
pub fn zeta_matched(theta: f64, modulation: &ModulationSpec) -> Result<f64, CoherenceError> {
    if !(theta >= 0.0) {
        return Err(CoherenceError::InvalidTheta(theta));
    }
    match modulation.kind() {
        ModulationKind::None => Ok(zeta_unmodulated(theta)),
        ModulationKind::Cosinusoidal => Ok(zeta_cosinusoidal(theta)),
        ModulationKind::PeriodicSinc2 { terms } => zeta_sinc2(theta, terms),
        ModulationKind::SquareWave { duty, .. } => {
            if (duty - 0.5).abs() < 1e-12 {
                Ok(zeta_triangular(theta))
            } else {
                // Matched square wave at general duty: quadrature on a
                // unit-tau0 wavepacket carrying the requested theta.
                let wp = BiphotonWavepacket::symmetric(1.0, theta)
                    .expect("unit wavepacket is valid");
                let m = ModulationSpec::square_wave(theta / (4.0 * PI), duty)
                    .map_err(|_| CoherenceError::InvalidTheta(theta))?;
                Ok(zeta_numeric(&wp, &m, f64::INFINITY)?.re)
            }
        }
    }
}

/// Fidelity F = 2 zeta of the two interfering two-photon wavefunctions for
/// the matched modulation; F = 1 means fully indistinguishable.
pub fn interference_fidelity(
    theta: f64,
    modulation: &ModulationSpec,
) -> Result<f64, CoherenceError> {
    Ok(2.0 * zeta_matched(theta, modulation)?)
}

/// Windowed coherence by adaptive quadrature:
///
/// ```text
/// zeta_W = int_{-W}^{W} M phi_HV phi_VH e^{-i dw tau} dtau
///        / [ 2 int_{-W}^{W} M phi_HV phi_VH dtau ]
/// ```
///
/// Returns a complex value; it is real for arm-synchronized envelopes (the
/// integrand is then even) and acquires a phase when the square-wave arms
/// carry a relative phase offset. Oscillatory integrands are split at
/// carrier half-periods and envelope breakpoints; exactly periodic
/// integrands (matched modulation, or no modulation at nonzero detuning)
/// are reduced to one envelope period plus an exact geometric tail.
pub fn zeta_numeric(
    wp: &BiphotonWavepacket,
    modulation: &ModulationSpec,
    window: f64,
) -> Result<Complex64, CoherenceError> {
    if !(window > 0.0) {
        return Err(CoherenceError::InvalidWindow(window));
    }
    let dw = wp.delta_omega();
    let rate = 1.0 / wp.product_decay_const();
    let numerator = half_line_integral(modulation, dw, window, 1.0, dw, rate)?
        + half_line_integral(modulation, dw, window, -1.0, dw, rate)?;
    let denominator = half_line_integral(modulation, dw, window, 1.0, 0.0, rate)?
        + half_line_integral(modulation, dw, window, -1.0, 0.0, rate)?;
    Ok(numerator / (2.0 * denominator))
}

/// Probability that a generated pair both survives the modulation and lands
/// inside the coincidence window:
/// int_{-W}^{W} M(tau) |phi_HV(tau)|^2 dtau / int |phi_HV|^2 dtau.
pub fn surviving_in_window_fraction(
    wp: &BiphotonWavepacket,
    modulation: &ModulationSpec,
    window: f64,
) -> Result<f64, CoherenceError> {
    if !(window > 0.0) {
        return Err(CoherenceError::InvalidWindow(window));
    }
    let dw = wp.delta_omega();
    let right = half_line_integral(modulation, dw, window, 1.0, 0.0, 1.0 / wp.tau_right())?;
    let left = half_line_integral(modulation, dw, window, -1.0, 0.0, 1.0 / wp.tau_left())?;
    Ok((right.re + left.re) / wp.intensity_norm())
}

/// Integral of M(sign u) e^{-rate u} e^{-i sign carrier u} over u in
/// [0, min(window, cutoff)], i.e. one half-line of a coherence-type
/// integrand after substituting tau = sign * u. The exponential factor of
/// the double-exponential family is exact, so the decay rate is a plain
/// parameter.
fn half_line_integral(
    modulation: &ModulationSpec,
    dw: f64,
    window: f64,
    sign: f64,
    carrier: f64,
    rate: f64,
) -> Result<Complex64, CoherenceError> {
    let tau_p = 1.0 / rate;
    let phase = -sign * carrier;
    let periodic = |u: f64| {
        let m = modulation.envelope(dw, sign * u);
        Complex64::from_polar(m, phase * u)
    };

    if let Some(period) = common_period(modulation, dw, carrier != 0.0) {
        // A period longer than the decay cutoff gains nothing from the
        // geometric reduction; fall through to plain truncation.
        if period <= DECAY_CUTOFF * tau_p {
            let mut breaks = envelope_breaks_for_side(modulation, dw, sign, period);
            add_carrier_breaks(&mut breaks, carrier, period, 4096);
            let limit = window; // geometric tail handles large windows exactly
            return Ok(quad::integrate_periodic_decay(
                &periodic,
                period,
                rate,
                limit,
                &breaks,
                QUAD_REL_TOL,
                QUAD_MAX_EVALS,
            )?);
        }
    }

    // General path: truncate at the decay cutoff and split panels at carrier
    // half-periods and envelope features.
    let cutoff = DECAY_CUTOFF * tau_p;
    let limit = window.min(cutoff);
    let f = |u: f64| periodic(u) * (-rate * u).exp();
    let mut breaks = vec![0.0, limit];
    if carrier != 0.0 {
        let half = PI / carrier.abs();
        let n = ((limit / half) as usize).min(4096);
        breaks.extend((1..=n).map(|k| k as f64 * half).filter(|&x| x < limit));
    }
    if let Some(env_period) = modulation.envelope_period(dw) {
        let inner = envelope_breaks_for_side(modulation, dw, sign, env_period);
        let tiles = ((limit / env_period) as usize).min(512);
        for t in 0..=tiles {
            let base = t as f64 * env_period;
            for &b in &inner {
                let x = base + b;
                if x > 0.0 && x < limit {
                    breaks.push(x);
                }
            }
            if t > 0 && base < limit {
                breaks.push(base);
            }
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * limit.max(1.0));
    Ok(quad::integrate_segments(
        &f,
        &breaks,
        QUAD_REL_TOL,
        0.0,
        QUAD_MAX_EVALS,
    )?)
}

/// Period of the full periodic factor M(tau) e^{-i carrier tau}, when the
/// factor is exactly periodic.
fn common_period(modulation: &ModulationSpec, dw: f64, with_carrier: bool) -> Option<f64> {
    let carrier_period = if dw == 0.0 {
        None
    } else {
        Some(std::f64::consts::TAU / dw.abs())
    };
    match modulation.kind() {
        ModulationKind::None => {
            if with_carrier {
                carrier_period
            } else {
                None // constant integrand; the general path is exact and cheap
            }
        }
        ModulationKind::Cosinusoidal | ModulationKind::PeriodicSinc2 { .. } => carrier_period,
        ModulationKind::SquareWave { .. } => {
            let env = modulation.envelope_period(dw)?;
            if !with_carrier {
                return Some(env);
            }
            if modulation.is_matched(dw) {
                carrier_period
            } else {
                None
            }
        }
    }
}

/// Envelope breakpoints within one period, mapped to the u axis of the
/// requested side (tau = sign * u).
fn envelope_breaks_for_side(
    modulation: &ModulationSpec,
    dw: f64,
    sign: f64,
    period: f64,
) -> Vec<f64> {
    let mut pts: Vec<f64> = modulation
        .envelope_breakpoints(dw)
        .into_iter()
        .map(|b| {
            if sign > 0.0 {
                b
            } else {
                (period - b).rem_euclid(period)
            }
        })
        .filter(|&b| b > 0.0 && b < period)
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * period);
    pts
}

fn add_carrier_breaks(breaks: &mut Vec<f64>, carrier: f64, period: f64, cap: usize) {
    if carrier == 0.0 {
        return;
    }
    let half = PI / carrier.abs();
    let n = ((period / half) as usize).min(cap);
    breaks.extend((1..=n).map(|k| k as f64 * half).filter(|&x| x < period));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::rad_per_ns_from_mhz;

    const TAU0: f64 = 22.5;

    fn theta_of_mhz(mhz: f64) -> f64 {
        rad_per_ns_from_mhz(mhz) * TAU0
    }

    #[test]
    fn unmodulated_trivials() {
        assert_eq!(zeta_unmodulated(0.0), 0.5);
        assert!((zeta_unmodulated(1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn unmodulated_at_50_mhz() {
        // Frozen from the Lorentzian transform of the double exponential:
        // 1 / (2 (1 + theta^2)) at theta = 2 pi * 0.05 * 22.5 = 7.0685835.
        let theta = theta_of_mhz(50.0);
        assert!((theta - 7.0685835).abs() < 1e-6);
        assert!((zeta_unmodulated(theta) - 0.009810678956438).abs() < 1e-12);
        assert!((zeta_unmodulated(theta) - 0.009810).abs() < 1e-6);
    }

    #[test]
    fn unmodulated_strictly_decreasing() {
        let mut prev = zeta_unmodulated(0.0);
        for k in 1..=400 {
            let theta = k as f64 * 0.05;
            let z = zeta_unmodulated(theta);
            assert!(z < prev);
            prev = z;
        }
    }

    #[test]
    fn triangular_limits_and_values() {
        assert_eq!(zeta_triangular(0.0), 0.5);
        assert!((zeta_triangular(1e-9) - 0.5).abs() < 1e-9);
        // Frozen from the closed form at theta = 7.0685835, independently
        // confirmed against zeta_numeric below (0.2103 to four decimals).
        assert!((zeta_triangular(theta_of_mhz(50.0)) - 0.210229452350474).abs() < 1e-12);
        assert!((zeta_triangular(theta_of_mhz(50.0)) - 0.2103).abs() < 1e-4);
        // Large-theta asymptote 2 / pi^2.
        let asym = 2.0 / (PI * PI);
        assert!((zeta_triangular(100.0) - asym).abs() < 1e-3);
    }

    #[test]
    fn cosinusoidal_limits_and_values() {
        assert_eq!(zeta_cosinusoidal(0.0), 0.5);
        assert!((zeta_cosinusoidal(1e6) - 0.25).abs() < 1e-11);
        assert!((zeta_cosinusoidal(theta_of_mhz(100.0)) - 0.251549267008070).abs() < 1e-12);
        assert!((zeta_cosinusoidal(theta_of_mhz(100.0)) - 0.2516).abs() < 1e-4);
    }

    #[test]
    fn sinc2_trivials_and_reduction() {
        assert!((zeta_sinc2(0.0, 17).unwrap() - 0.5).abs() < 1e-15);
        // Large theta with s lines approaches (s-1)/(2s).
        assert!((zeta_sinc2(1e4, 100).unwrap() - 99.0 / 200.0).abs() < 1e-6);
        // s = 2 reduction to the cosinusoidal closed form.
        for k in 0..60 {
            let theta = k as f64 * 0.37;
            let a = zeta_sinc2(theta, 2).unwrap();
            let b = zeta_cosinusoidal(theta);
            assert!((a - b).abs() < 1e-14, "theta={theta}: {a} vs {b}");
        }
        let t50 = theta_of_mhz(50.0);
        assert!((zeta_sinc2(t50, 2).unwrap() - 0.2560).abs() < 5e-5);
    }

    #[test]
    fn sinc2_rejects_single_term() {
        assert!(matches!(
            zeta_sinc2(1.0, 1),
            Err(CoherenceError::TooFewTerms(1))
        ));
    }

    #[test]
    fn numeric_matches_unmodulated_closed_form() {
        let wp = BiphotonWavepacket::symmetric(TAU0, 1.0 / TAU0).unwrap(); // theta = 1
        let z = zeta_numeric(&wp, &ModulationSpec::none(), f64::INFINITY).unwrap();
        assert!((z.re - 0.25).abs() < 1e-9);
        assert!(z.im.abs() < 1e-12);
    }

    #[test]
    fn numeric_small_window_limit() {
        let wp = BiphotonWavepacket::symmetric(TAU0, rad_per_ns_from_mhz(80.0)).unwrap();
        let z = zeta_numeric(&wp, &ModulationSpec::none(), 1e-4).unwrap();
        assert!((z.re - 0.5).abs() < 1e-7, "got {}", z.re);
    }

    #[test]
    fn numeric_triangular_at_50_mhz() {
        let dw = rad_per_ns_from_mhz(50.0);
        let wp = BiphotonWavepacket::symmetric(TAU0, dw).unwrap();
        let m = ModulationSpec::square_wave_matched(dw).unwrap();
        let z = zeta_numeric(&wp, &m, f64::INFINITY).unwrap();
        let closed = zeta_triangular(theta_of_mhz(50.0));
        assert!((z.re - closed).abs() < 1e-6, "{} vs {closed}", z.re);
    }

    #[test]
    fn numeric_window_limit_reaches_closed_form() {
        // W = 50 tau0 is indistinguishable from the infinite window at 1e-4.
        let dw = rad_per_ns_from_mhz(50.0);
        let wp = BiphotonWavepacket::symmetric(TAU0, dw).unwrap();
        for m in [
            ModulationSpec::none(),
            ModulationSpec::cosinusoidal(),
            ModulationSpec::square_wave_matched(dw).unwrap(),
        ] {
            let z_w = zeta_numeric(&wp, &m, 50.0 * TAU0).unwrap().re;
            let z_inf = zeta_numeric(&wp, &m, f64::INFINITY).unwrap().re;
            assert!((z_w - z_inf).abs() < 1e-4, "{m:?}");
        }
    }

    #[test]
    fn numeric_periodic_and_general_paths_agree() {
        // The matched cosinusoidal case can be evaluated both by the
        // geometric-tail reduction and by brute segmentation (through an
        // off-by-epsilon drive that defeats the matched-path test).
        let dw = rad_per_ns_from_mhz(40.0);
        let wp = BiphotonWavepacket::symmetric(TAU0, dw).unwrap();
        let matched = ModulationSpec::square_wave_matched(dw).unwrap();
        let nearly = ModulationSpec::square_wave(dw / (4.0 * PI) * (1.0 + 1e-7), 0.5).unwrap();
        let a = zeta_numeric(&wp, &matched, f64::INFINITY).unwrap().re;
        let b = zeta_numeric(&wp, &nearly, f64::INFINITY).unwrap().re;
        assert!((a - b).abs() < 1e-5, "{a} vs {b}");
    }

    #[test]
    fn numeric_handles_asymmetric_wavepacket() {
        // The product phi_HV phi_VH is even in tau, so zeta stays real and
        // equals the symmetric formula with the harmonic-mean constant.
        let dw = rad_per_ns_from_mhz(50.0);
        let wp = BiphotonWavepacket::asymmetric(21.0, 24.0, dw).unwrap();
        let z = zeta_numeric(&wp, &ModulationSpec::none(), f64::INFINITY).unwrap();
        let theta_eff = dw * wp.product_decay_const();
        assert!(z.im.abs() < 1e-10);
        assert!((z.re - zeta_unmodulated(theta_eff)).abs() < 1e-9);
    }

    #[test]
    fn relative_phase_offset_makes_zeta_complex() {
        let dw = rad_per_ns_from_mhz(50.0);
        let wp = BiphotonWavepacket::symmetric(TAU0, dw).unwrap();
        let m = ModulationSpec::square_wave_matched(dw)
            .unwrap()
            .with_relative_phase(PI / 2.0);
        let z = zeta_numeric(&wp, &m, f64::INFINITY).unwrap();
        assert!(z.im.abs() > 1e-3, "expected a phase, got {z}");
        assert!(z.norm() <= 0.5 + 1e-9);
    }

    #[test]
    fn rejects_bad_window() {
        let wp = BiphotonWavepacket::symmetric(TAU0, 0.0).unwrap();
        assert!(zeta_numeric(&wp, &ModulationSpec::none(), 0.0).is_err());
        assert!(zeta_numeric(&wp, &ModulationSpec::none(), -3.0).is_err());
        assert!(zeta_numeric(&wp, &ModulationSpec::none(), f64::NAN).is_err());
    }

    #[test]
    fn fidelity_is_twice_zeta() {
        let t = theta_of_mhz(50.0);
        assert!(
            (interference_fidelity(t, &ModulationSpec::none()).unwrap() - 0.01962).abs() < 5e-6
        );
        assert_eq!(
            interference_fidelity(0.0, &ModulationSpec::none()).unwrap(),
            1.0
        );
        let f = interference_fidelity(100.0, &ModulationSpec::periodic_sinc2(100).unwrap())
            .unwrap();
        assert!((f - 0.99).abs() < 1e-3);
    }

    #[test]
    fn params_validation() {
        assert!(CoherenceParams::new(1.0, f64::INFINITY, ModulationSpec::none()).is_ok());
        assert!(CoherenceParams::new(-0.1, 1.0, ModulationSpec::none()).is_err());
        assert!(CoherenceParams::new(1.0, 0.0, ModulationSpec::none()).is_err());
    }
}
