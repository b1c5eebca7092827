//! Biphoton temporal wavepackets and amplitude-modulation envelopes.
//!
//! The two-photon amplitude is a double exponential in the detection-time
//! difference tau = t2 - t1:
//!
//! ```text
//! phi_HV(tau) = exp(-tau / (2 tau_right))   for tau >= 0
//!             = exp(+tau / (2 tau_left))    for tau <  0
//! phi_VH(tau) = phi_HV(-tau)
//! ```
//!
//! so the temporal intensity |phi|^2 decays with constants `tau_left` /
//! `tau_right` (the measured 21 ns / 24 ns of the source; 22.5 ns symmetric
//! for closed-form work).
//!
//! Modulation is pure amplitude modulation: each photon (or, conditionally,
//! the pair as a whole) is attenuated by |m(t)|^2 in [0, 1]. What decoherence
//! cares about is the induced biphoton intensity envelope M(tau):
//!
//! - synchronized per-photon square waves -> triangular M(tau),
//! - conditional cosinusoidal modulation -> M(tau) = |(1 + e^{i dw tau})/2|^2,
//! - conditional periodic-sinc^2 -> M_s(tau) = |(1/s) sum_n e^{i n dw tau}|^2.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WavepacketError {
    #[error("decay time constants must be positive, got ({tau_left}, {tau_right}) ns")]
    NonPositiveTimeConstant { tau_left: f64, tau_right: f64 },
    #[error("modulation frequency must be positive, got {0} GHz")]
    NonPositiveFrequency(f64),
    #[error("duty cycle must lie in (0, 1], got {0}")]
    InvalidDuty(f64),
    #[error("periodic sinc^2 needs at least 2 terms, got {0}")]
    TooFewTerms(u32),
    #[error("{0} modulation has no per-photon waveform; it only applies conditionally")]
    ConditionalOnly(&'static str),
}

/// Which two-photon amplitude to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrdering {
    /// H photon in port 1, V photon in port 2.
    Hv,
    /// V photon in port 1, H photon in port 2.
    Vh,
}

/// Double-exponential biphoton wavepacket with carrier detuning.
///
/// Only the detuning `omega_s - omega_i` enters any observable; the absolute
/// carriers are kept for bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiphotonWavepacket {
    tau_left: f64,
    tau_right: f64,
    omega_s: f64,
    omega_i: f64,
}

impl BiphotonWavepacket {
    /// General constructor; times in ns, angular frequencies in rad/ns.
    pub fn new(
        tau_left: f64,
        tau_right: f64,
        omega_s: f64,
        omega_i: f64,
    ) -> Result<Self, WavepacketError> {
        if !(tau_left > 0.0) || !(tau_right > 0.0) {
            return Err(WavepacketError::NonPositiveTimeConstant {
                tau_left,
                tau_right,
            });
        }
        Ok(Self {
            tau_left,
            tau_right,
            omega_s,
            omega_i,
        })
    }

    /// Symmetric wavepacket with intensity decay constant `tau0` (ns) and
    /// detuning `delta_omega` (rad/ns).
    pub fn symmetric(tau0: f64, delta_omega: f64) -> Result<Self, WavepacketError> {
        Self::new(tau0, tau0, delta_omega, 0.0)
    }

    /// Asymmetric wavepacket; `delta_omega` in rad/ns.
    pub fn asymmetric(
        tau_left: f64,
        tau_right: f64,
        delta_omega: f64,
    ) -> Result<Self, WavepacketError> {
        Self::new(tau_left, tau_right, delta_omega, 0.0)
    }

    pub fn tau_left(&self) -> f64 {
        self.tau_left
    }

    pub fn tau_right(&self) -> f64 {
        self.tau_right
    }

    /// Detuning omega_s - omega_i in rad/ns.
    pub fn delta_omega(&self) -> f64 {
        self.omega_s - self.omega_i
    }

    pub fn is_symmetric(&self) -> bool {
        self.tau_left == self.tau_right
    }

    /// Two-photon amplitude phi_HV or phi_VH at delay `tau` (ns). Real and
    /// in (0, 1] for this family.
    pub fn amplitude(&self, ordering: PairOrdering, tau: f64) -> f64 {
        let t = match ordering {
            PairOrdering::Hv => tau,
            PairOrdering::Vh => -tau,
        };
        if t >= 0.0 {
            (-t / (2.0 * self.tau_right)).exp()
        } else {
            (t / (2.0 * self.tau_left)).exp()
        }
    }

    /// Decay constant of the product phi_HV(tau) phi_VH(tau), which is
    /// exp(-|tau| / tau_product) with the harmonic-mean constant
    /// 2 tau_left tau_right / (tau_left + tau_right). Symmetric under
    /// tau -> -tau even for asymmetric wavepackets.
    pub fn product_decay_const(&self) -> f64 {
        2.0 * self.tau_left * self.tau_right / (self.tau_left + self.tau_right)
    }

    /// Integral of |phi_HV|^2 over all delays: tau_left + tau_right.
    pub fn intensity_norm(&self) -> f64 {
        self.tau_left + self.tau_right
    }

    /// Fraction of the normalized delay distribution |phi_HV|^2 with
    /// |tau| <= window.
    pub fn in_window_fraction(&self, window: f64) -> f64 {
        if window.is_infinite() {
            return 1.0;
        }
        let left = self.tau_left * (1.0 - (-window / self.tau_left).exp());
        let right = self.tau_right * (1.0 - (-window / self.tau_right).exp());
        (left + right) / self.intensity_norm()
    }

    /// Inverse CDF of the normalized delay distribution |phi_HV|^2;
    /// `u` in [0, 1).
    pub fn delay_quantile(&self, u: f64) -> f64 {
        let norm = self.intensity_norm();
        let p_left = self.tau_left / norm;
        if u < p_left {
            // CDF(tau) = tau_left exp(tau/tau_left) / norm for tau < 0
            self.tau_left * (u * norm / self.tau_left).ln()
        } else {
            // 1 - CDF(tau) = tau_right exp(-tau/tau_right) / norm for tau >= 0
            -self.tau_right * (((1.0 - u) * norm / self.tau_right).ln())
        }
    }
}

/// Modulation waveform families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModulationKind {
    /// No modulation; envelope identically 1.
    None,
    /// Synchronized per-photon square-wave intensity. `frequency` is the
    /// EOM drive frequency in GHz (cycles/ns); the transmitted intensity
    /// square wave and the induced triangular envelope both have period
    /// 1/(2 frequency). `relative_phase` offsets arm 2 against arm 1 in
    /// radians of the intensity-wave period.
    SquareWave {
        frequency: f64,
        duty: f64,
        relative_phase: f64,
    },
    /// Conditional cosinusoidal envelope |(1 + e^{i dw tau})/2|^2 at the
    /// pair's own detuning.
    Cosinusoidal,
    /// Conditional periodic-sinc^2 envelope with `terms` comb lines;
    /// reduces to the cosinusoidal envelope at terms = 2.
    PeriodicSinc2 { terms: u32 },
}

/// A validated modulation scheme plus the thinning mode used by the
/// event-level simulation: synchronous per-photon gating or conditional
/// gating of the pair by the envelope M(tau).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModulationSpec {
    kind: ModulationKind,
    conditional: bool,
}

impl ModulationSpec {
    pub fn none() -> Self {
        Self {
            kind: ModulationKind::None,
            conditional: false,
        }
    }

    /// Synchronous square-wave modulation; `frequency` in GHz (EOM drive),
    /// intensity wave at 2*frequency.
    pub fn square_wave(frequency: f64, duty: f64) -> Result<Self, WavepacketError> {
        if !(frequency > 0.0) {
            return Err(WavepacketError::NonPositiveFrequency(frequency));
        }
        if !(duty > 0.0 && duty <= 1.0) {
            return Err(WavepacketError::InvalidDuty(duty));
        }
        Ok(Self {
            kind: ModulationKind::SquareWave {
                frequency,
                duty,
                relative_phase: 0.0,
            },
            conditional: false,
        })
    }

    /// Square wave matched to a detuning: drive at delta_omega / (4 pi) GHz
    /// so the triangular envelope beats at delta_omega.
    pub fn square_wave_matched(delta_omega: f64) -> Result<Self, WavepacketError> {
        Self::square_wave(delta_omega.abs() / (4.0 * std::f64::consts::PI), 0.5)
    }

    pub fn cosinusoidal() -> Self {
        Self {
            kind: ModulationKind::Cosinusoidal,
            conditional: true,
        }
    }

    pub fn periodic_sinc2(terms: u32) -> Result<Self, WavepacketError> {
        if terms < 2 {
            return Err(WavepacketError::TooFewTerms(terms));
        }
        Ok(Self {
            kind: ModulationKind::PeriodicSinc2 { terms },
            conditional: true,
        })
    }

    /// Offset arm 2's intensity wave by `radians` of its period
    /// (square wave only; no-op otherwise).
    pub fn with_relative_phase(mut self, radians: f64) -> Self {
        if let ModulationKind::SquareWave {
            ref mut relative_phase,
            ..
        } = self.kind
        {
            *relative_phase = radians;
        }
        self
    }

    /// Switch the event-level thinning mode. Cosinusoidal and sinc^2
    /// envelopes exist only conditionally.
    pub fn with_conditional(mut self, conditional: bool) -> Result<Self, WavepacketError> {
        match self.kind {
            ModulationKind::Cosinusoidal if !conditional => {
                Err(WavepacketError::ConditionalOnly("cosinusoidal"))
            }
            ModulationKind::PeriodicSinc2 { .. } if !conditional => {
                Err(WavepacketError::ConditionalOnly("periodic sinc^2"))
            }
            _ => {
                self.conditional = conditional;
                Ok(self)
            }
        }
    }

    pub fn kind(&self) -> ModulationKind {
        self.kind
    }

    pub fn is_none(&self) -> bool {
        matches!(self.kind, ModulationKind::None)
    }

    pub fn is_conditional(&self) -> bool {
        self.conditional
    }

    /// Biphoton intensity envelope M(tau) in [0, 1].
    ///
    /// For the square wave this is the circular autocorrelation of the
    /// 0/1 intensity wave (triangular at duty 0.5: peak 1/2 at tau = 0,
    /// minimum 0, period 1/(2 frequency)). Cosinusoidal and sinc^2 use the
    /// supplied `delta_omega` (rad/ns) as their comb spacing.
    pub fn envelope(&self, delta_omega: f64, tau: f64) -> f64 {
        match self.kind {
            ModulationKind::None => 1.0,
            ModulationKind::SquareWave {
                frequency,
                duty,
                relative_phase,
            } => {
                let period = 1.0 / (2.0 * frequency);
                let shift = relative_phase / std::f64::consts::TAU * period;
                square_autocorrelation(tau + shift, period, duty)
            }
            ModulationKind::Cosinusoidal => 0.5 * (1.0 + (delta_omega * tau).cos()),
            ModulationKind::PeriodicSinc2 { terms } => {
                periodic_sinc2(delta_omega * tau, terms)
            }
        }
    }

    /// Period of the envelope M(tau), if periodic. The square wave owns its
    /// period; the conditional envelopes beat at the pair detuning.
    pub fn envelope_period(&self, delta_omega: f64) -> Option<f64> {
        match self.kind {
            ModulationKind::None => None,
            ModulationKind::SquareWave { frequency, .. } => Some(1.0 / (2.0 * frequency)),
            ModulationKind::Cosinusoidal | ModulationKind::PeriodicSinc2 { .. } => {
                if delta_omega == 0.0 {
                    None
                } else {
                    Some(std::f64::consts::TAU / delta_omega.abs())
                }
            }
        }
    }

    /// Interior breakpoints of M(tau) within one envelope period, for
    /// quadrature seeding: kinks of the triangular wave, lobe zeros of the
    /// sinc^2 comb.
    pub fn envelope_breakpoints(&self, delta_omega: f64) -> Vec<f64> {
        match self.kind {
            ModulationKind::None | ModulationKind::Cosinusoidal => Vec::new(),
            ModulationKind::SquareWave {
                frequency,
                duty,
                relative_phase,
            } => {
                let period = 1.0 / (2.0 * frequency);
                let shift = relative_phase / std::f64::consts::TAU * period;
                let a = duty * period;
                // Kinks of the circular overlap at tau + shift = 0, a, period - a.
                let mut pts: Vec<f64> = [0.0, a, period - a]
                    .iter()
                    .map(|p| (p - shift).rem_euclid(period))
                    .collect();
                pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
                pts.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * period);
                pts
            }
            ModulationKind::PeriodicSinc2 { terms } => {
                let period = match self.envelope_period(delta_omega) {
                    Some(p) => p,
                    None => return Vec::new(),
                };
                (1..terms).map(|k| k as f64 * period / terms as f64).collect()
            }
        }
    }

    /// True when the envelope beats at the pair detuning, so the integrand
    /// M(tau) e^{-i dw tau} is exactly periodic.
    pub fn is_matched(&self, delta_omega: f64) -> bool {
        match self.kind {
            ModulationKind::None => false,
            ModulationKind::Cosinusoidal | ModulationKind::PeriodicSinc2 { .. } => true,
            ModulationKind::SquareWave { frequency, .. } => {
                let envelope_omega = 2.0 * std::f64::consts::TAU * frequency;
                (envelope_omega - delta_omega.abs()).abs() <= 1e-9 * envelope_omega.max(1e-300)
            }
        }
    }

    /// Per-photon transmitted intensity |m(t)|^2 at absolute time `t`.
    /// Only the square wave (and trivially no modulation) has one.
    pub fn per_photon_intensity(&self, arm2: bool, t: f64) -> Result<f64, WavepacketError> {
        match self.kind {
            ModulationKind::None => Ok(1.0),
            ModulationKind::SquareWave {
                frequency,
                duty,
                relative_phase,
            } => {
                let period = 1.0 / (2.0 * frequency);
                let shift = if arm2 {
                    relative_phase / std::f64::consts::TAU * period
                } else {
                    0.0
                };
                let phase = (t + shift).rem_euclid(period);
                Ok(if phase < duty * period { 1.0 } else { 0.0 })
            }
            ModulationKind::Cosinusoidal => Err(WavepacketError::ConditionalOnly("cosinusoidal")),
            ModulationKind::PeriodicSinc2 { .. } => {
                Err(WavepacketError::ConditionalOnly("periodic sinc^2"))
            }
        }
    }
}

/// Circular autocorrelation of a 0/1 square wave with the given period and
/// duty, normalized by the period: the overlap fraction of two on-windows
/// offset by tau.
fn square_autocorrelation(tau: f64, period: f64, duty: f64) -> f64 {
    let a = duty * period;
    let t = tau.rem_euclid(period);
    ((a - t).max(0.0) + (t - (period - a)).max(0.0)) / period
}

/// |(1/s) sum_{n=1..s} e^{i n x}|^2 = sin^2(s x / 2) / (s^2 sin^2(x / 2)),
/// continued to 1 at the comb teeth x = 2 pi k.
fn periodic_sinc2(x: f64, s: u32) -> f64 {
    let s = s as f64;
    let half = 0.5 * x;
    let denom = half.sin();
    if denom.abs() < 1e-8 {
        // Near a comb tooth: sin(s h)/ (s sin h) -> cos-corrected series; the
        // quadratic term keeps ~1e-16 accuracy at this switchover distance.
        let h = half - (half / std::f64::consts::PI).round() * std::f64::consts::PI;
        let ratio = 1.0 - (s * s - 1.0) * h * h / 6.0;
        return (ratio * ratio).clamp(0.0, 1.0);
    }
    let r = (s * half).sin() / (s * denom);
    (r * r).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::rad_per_ns_from_mhz;

    #[test]
    fn amplitude_examples() {
        let wp = BiphotonWavepacket::symmetric(22.5, 0.0).unwrap();
        assert_eq!(wp.amplitude(PairOrdering::Hv, 0.0), 1.0);
        assert!((wp.amplitude(PairOrdering::Hv, 45.0) - (-1.0_f64).exp()).abs() < 1e-15);

        let asym = BiphotonWavepacket::asymmetric(21.0, 24.0, 0.0).unwrap();
        assert!((asym.amplitude(PairOrdering::Hv, -21.0) - (-0.5_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn hv_vh_mirror_symmetry() {
        let wp = BiphotonWavepacket::asymmetric(21.0, 24.0, 0.0).unwrap();
        for k in -40..=40 {
            let tau = k as f64 * 1.7;
            let hv = wp.amplitude(PairOrdering::Hv, tau);
            let vh = wp.amplitude(PairOrdering::Vh, -tau);
            assert!((hv - vh).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_time_constants() {
        assert!(BiphotonWavepacket::symmetric(0.0, 0.0).is_err());
        assert!(BiphotonWavepacket::asymmetric(21.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn product_decay_is_harmonic_mean() {
        let wp = BiphotonWavepacket::asymmetric(21.0, 24.0, 0.0).unwrap();
        let eff = wp.product_decay_const();
        assert!((eff - 22.4).abs() < 1e-12);
        for k in -20..=20 {
            let tau = k as f64 * 3.3;
            let product = wp.amplitude(PairOrdering::Hv, tau) * wp.amplitude(PairOrdering::Vh, tau);
            assert!((product - (-(tau.abs()) / eff).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn delay_quantile_inverts_cdf() {
        let wp = BiphotonWavepacket::asymmetric(21.0, 24.0, 0.0).unwrap();
        for &u in &[0.01, 0.2, 0.4666, 0.47, 0.6, 0.93, 0.999] {
            let tau = wp.delay_quantile(u);
            // CDF(tau) computed directly from the piecewise exponential.
            let norm = wp.intensity_norm();
            let cdf = if tau < 0.0 {
                wp.tau_left() * (tau / wp.tau_left()).exp() / norm
            } else {
                (wp.tau_left() + wp.tau_right() * (1.0 - (-tau / wp.tau_right()).exp())) / norm
            };
            assert!((cdf - u).abs() < 1e-12, "u={u} tau={tau} cdf={cdf}");
        }
    }

    #[test]
    fn square_envelope_trivials() {
        let m = ModulationSpec::square_wave(0.025, 0.5).unwrap(); // 25 MHz drive
        assert!((m.envelope(0.0, 0.0) - 0.5).abs() < 1e-15);
        // Period 1/(2f) = 20 ns; zero of the triangle at half period.
        assert!(m.envelope(0.0, 10.0).abs() < 1e-15);
        assert!((m.envelope(0.0, 20.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn square_envelope_matches_numerical_convolution() {
        // Invariant: the closed-form circular overlap equals the numerically
        // convolved intensity wave to 1e-9 on a tau grid. The convolution is
        // integrated with panels split at the jump points of s(t) s(t+tau),
        // where the integrand is piecewise constant.
        use num_complex::Complex64;
        for &duty in &[0.3, 0.5, 0.8] {
            let m = ModulationSpec::square_wave(0.025, duty).unwrap();
            let period = 1.0 / (2.0 * 0.025);
            for k in 0..40 {
                let tau = k as f64 * period / 37.0;
                let mut breaks: Vec<f64> = vec![0.0, period];
                for edge in [0.0, duty * period] {
                    for jump in [edge, (edge - tau).rem_euclid(period)] {
                        if jump > 0.0 && jump < period {
                            breaks.push(jump);
                        }
                    }
                }
                breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
                breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
                let product = |t: f64| {
                    let s1 = m.per_photon_intensity(false, t).unwrap();
                    let s2 = m.per_photon_intensity(false, t + tau).unwrap();
                    Complex64::new(s1 * s2, 0.0)
                };
                let numeric = crate::quad::integrate_segments(&product, &breaks, 1e-12, 0.0, 100_000)
                    .unwrap()
                    .re
                    / period;
                let closed = m.envelope(0.0, tau);
                assert!(
                    (numeric - closed).abs() < 1e-9,
                    "duty={duty} tau={tau}: {numeric} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn cosinusoidal_trivials() {
        let m = ModulationSpec::cosinusoidal();
        let dw = rad_per_ns_from_mhz(100.0);
        let tau_pi = std::f64::consts::PI / dw;
        assert!(m.envelope(dw, tau_pi).abs() < 1e-15);
        assert!((m.envelope(dw, 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sinc2_reduces_to_cosinusoidal_at_two_terms() {
        let s2 = ModulationSpec::periodic_sinc2(2).unwrap();
        let cos = ModulationSpec::cosinusoidal();
        let dw = rad_per_ns_from_mhz(50.0);
        for k in -300..=300 {
            let tau = k as f64 * 0.31;
            assert!((s2.envelope(dw, tau) - cos.envelope(dw, tau)).abs() < 1e-12);
        }
    }

    #[test]
    fn sinc2_unity_at_zero() {
        let m = ModulationSpec::periodic_sinc2(2).unwrap();
        assert!((m.envelope(rad_per_ns_from_mhz(40.0), 0.0) - 1.0).abs() < 1e-15);
        let m100 = ModulationSpec::periodic_sinc2(100).unwrap();
        let dw = rad_per_ns_from_mhz(40.0);
        let period = std::f64::consts::TAU / dw;
        assert!((m100.envelope(dw, period) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn envelope_periodicity() {
        let dw = rad_per_ns_from_mhz(50.0);
        let cases = [
            ModulationSpec::square_wave_matched(dw).unwrap(),
            ModulationSpec::cosinusoidal(),
            ModulationSpec::periodic_sinc2(7).unwrap(),
        ];
        for m in cases {
            let p = m.envelope_period(dw).unwrap();
            for k in -50..=50 {
                let tau = k as f64 * 0.77;
                assert!(
                    (m.envelope(dw, tau + p) - m.envelope(dw, tau)).abs() < 1e-12,
                    "{m:?} at tau={tau}"
                );
            }
        }
    }

    #[test]
    fn envelope_bounded() {
        let dw = rad_per_ns_from_mhz(80.0);
        let mods = [
            ModulationSpec::none(),
            ModulationSpec::square_wave(0.04, 0.7).unwrap(),
            ModulationSpec::cosinusoidal(),
            ModulationSpec::periodic_sinc2(100).unwrap(),
        ];
        for m in mods {
            for k in -500..=500 {
                let v = m.envelope(dw, k as f64 * 0.173);
                assert!((0.0..=1.0).contains(&v), "{m:?} gave {v}");
            }
        }
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            ModulationSpec::square_wave(0.02, 0.0).unwrap_err(),
            WavepacketError::InvalidDuty(0.0)
        );
        assert_eq!(
            ModulationSpec::square_wave(0.02, 1.5).unwrap_err(),
            WavepacketError::InvalidDuty(1.5)
        );
        assert_eq!(
            ModulationSpec::periodic_sinc2(1).unwrap_err(),
            WavepacketError::TooFewTerms(1)
        );
        assert!(ModulationSpec::cosinusoidal().with_conditional(false).is_err());
        assert!(ModulationSpec::square_wave(0.02, 0.5)
            .unwrap()
            .with_conditional(true)
            .is_ok());
    }

    #[test]
    fn matched_square_wave_detection() {
        let dw = rad_per_ns_from_mhz(50.0);
        assert!(ModulationSpec::square_wave_matched(dw).unwrap().is_matched(dw));
        assert!(!ModulationSpec::square_wave(0.04, 0.5).unwrap().is_matched(dw));
        assert!(ModulationSpec::cosinusoidal().is_matched(dw));
    }

    #[test]
    fn in_window_fraction_limits() {
        let wp = BiphotonWavepacket::symmetric(22.5, 0.0).unwrap();
        assert!((wp.in_window_fraction(f64::INFINITY) - 1.0).abs() < 1e-15);
        let f = wp.in_window_fraction(22.5);
        assert!((f - (1.0 - (-1.0_f64).exp())).abs() < 1e-14);
    }
}
