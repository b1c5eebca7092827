//! Interference observables: HOM coincidence, time-resolved beats and
//! CHSH S vs. coincidence window.
//!
//! The post-selected coherence depends on the coincidence window W, so the
//! CHSH value does too. With the envelope matched to the detuning the
//! integrand M(tau) phi^2 e^{-i dw tau} is exactly periodic under the
//! exponential decay, which makes zeta (and hence S) exactly equal to its
//! asymptotic value whenever W is a whole number of beat periods; between
//! period boundaries the partially included beat cycle makes zeta wiggle
//! around that value. Window sweeps that want the clean Fig.-5-style
//! plateaus should therefore sample at beat-period multiples
//! (`beat_period_windows`).

use crate::coherence::{self, CoherenceError};
use crate::entanglement::{
    build_state, chsh_fixed, ChshAngles, EntanglementError, ImperfectionModel,
};
use crate::quad;
use crate::wavepacket::{BiphotonWavepacket, ModulationKind, ModulationSpec, PairOrdering};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InterferenceError {
    #[error("histogram bin edges must be finite and strictly increasing (at least 2)")]
    BadEdges,
    #[error("windows must be positive, finite and strictly increasing")]
    BadWindows,
    #[error(transparent)]
    Coherence(#[from] CoherenceError),
    #[error(transparent)]
    Entanglement(#[from] EntanglementError),
}

/// Binned non-negative real data over time.
#[derive(Clone, Debug)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<f64>,
}

impl Histogram {
    pub fn new(bin_edges: Vec<f64>, counts: Vec<f64>) -> Result<Self, InterferenceError> {
        if bin_edges.len() < 2
            || counts.len() + 1 != bin_edges.len()
            || bin_edges.iter().any(|e| !e.is_finite())
            || bin_edges.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(InterferenceError::BadEdges);
        }
        Ok(Self { bin_edges, counts })
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    }

    /// Sum of counts weighted by bin widths.
    pub fn total_mass(&self) -> f64 {
        self.bin_edges
            .windows(2)
            .zip(&self.counts)
            .map(|(w, c)| c * (w[1] - w[0]))
            .sum()
    }

    /// Bin centers of strict local minima of the counts.
    pub fn local_minima(&self) -> Vec<f64> {
        let centers = self.bin_centers();
        let mut out = Vec::new();
        for i in 1..self.counts.len().saturating_sub(1) {
            if self.counts[i] < self.counts[i - 1] && self.counts[i] < self.counts[i + 1] {
                out.push(centers[i]);
            }
        }
        out
    }
}

/// CHSH S against coincidence window.
#[derive(Clone, Debug)]
pub struct WindowSweep {
    pub windows: Vec<f64>,
    pub s_values: Vec<f64>,
    /// Detuning in rad/ns.
    pub frequency_difference: f64,
    pub modulation: ModulationSpec,
}

/// Normalized HOM coincidence probability P = (1 - F)/2 relative to the
/// distinguishable baseline 1/2, with F the interference fidelity; P = 0 is
/// the full dip.
pub fn hom_coincidence(
    wp: &BiphotonWavepacket,
    modulation: &ModulationSpec,
) -> Result<f64, InterferenceError> {
    Ok((1.0 - pair_fidelity(wp, modulation)?) / 2.0)
}

/// Fidelity F = 2 zeta of the interfering two-photon wavefunctions for this
/// wavepacket and modulation at infinite window. Dispatches to the closed
/// forms whenever they apply (symmetric wavepacket, matched or absent
/// modulation) and to quadrature otherwise, so identities built on it hold
/// to machine precision.
pub fn pair_fidelity(
    wp: &BiphotonWavepacket,
    modulation: &ModulationSpec,
) -> Result<f64, InterferenceError> {
    let dw = wp.delta_omega();
    let closed_form_applies = wp.is_symmetric()
        && match modulation.kind() {
            ModulationKind::None
            | ModulationKind::Cosinusoidal
            | ModulationKind::PeriodicSinc2 { .. } => true,
            ModulationKind::SquareWave { .. } => modulation.is_matched(dw),
        };
    if closed_form_applies {
        let theta = dw.abs() * wp.tau_left();
        Ok(coherence::interference_fidelity(theta, modulation)?)
    } else {
        Ok(2.0 * coherence::zeta_numeric(wp, modulation, f64::INFINITY)?.re)
    }
}

/// Time-resolved two-photon beat G(tau) = |phi_HV(tau) + e^{i dw tau}
/// phi_VH(tau)|^2, averaged over each bin. Unnormalized: the histogram mass
/// equals the integral of G over the binned range.
pub fn beat_histogram(
    wp: &BiphotonWavepacket,
    bin_edges: &[f64],
) -> Result<Histogram, InterferenceError> {
    if bin_edges.len() < 2
        || bin_edges.iter().any(|e| !e.is_finite())
        || bin_edges.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(InterferenceError::BadEdges);
    }
    let dw = wp.delta_omega();
    let g = |tau: f64| {
        let hv = wp.amplitude(PairOrdering::Hv, tau);
        let vh = wp.amplitude(PairOrdering::Vh, tau);
        let amp = Complex64::new(hv, 0.0) + Complex64::from_polar(vh, dw * tau);
        Complex64::new(amp.norm_sqr(), 0.0)
    };
    let mut counts = Vec::with_capacity(bin_edges.len() - 1);
    for w in bin_edges.windows(2) {
        let mut breaks = vec![w[0], w[1]];
        // Split at the kink at tau = 0 and at carrier half-periods.
        if w[0] < 0.0 && w[1] > 0.0 {
            breaks.push(0.0);
        }
        if dw != 0.0 {
            let half = PI / dw.abs();
            let k0 = (w[0] / half).ceil() as i64;
            let k1 = (w[1] / half).floor() as i64;
            for k in k0..=k1 {
                let x = k as f64 * half;
                if x > w[0] && x < w[1] {
                    breaks.push(x);
                }
            }
        }
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let integral = quad::integrate_segments(&g, &breaks, 1e-10, 0.0, 200_000)
            .map_err(CoherenceError::from)?;
        counts.push(integral.re / (w[1] - w[0]));
    }
    Histogram::new(bin_edges.to_vec(), counts)
}

/// Windows at whole multiples of the beat period 2 pi / dw, up to and
/// including `max_window`. On these windows the matched-modulation CHSH
/// value is exactly flat.
pub fn beat_period_windows(delta_omega: f64, max_window: f64) -> Vec<f64> {
    if delta_omega == 0.0 {
        return Vec::new();
    }
    let period = std::f64::consts::TAU / delta_omega.abs();
    let n = (max_window / period + 1e-9).floor() as usize;
    (1..=n).map(|k| k as f64 * period).collect()
}

/// CHSH |S| for each coincidence window: the windowed coherence feeds the
/// density-matrix builder, the imperfection model supplies the
/// window-dependent accidental fraction and the analyzer offsets.
pub fn chsh_vs_window(
    wp: &BiphotonWavepacket,
    modulation: &ModulationSpec,
    imperfections: Option<&ImperfectionModel>,
    windows: &[f64],
    angles: &ChshAngles,
) -> Result<WindowSweep, InterferenceError> {
    if windows.is_empty()
        || windows.iter().any(|w| !(w.is_finite() && *w > 0.0))
        || windows.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(InterferenceError::BadWindows);
    }
    let mut s_values = Vec::with_capacity(windows.len());
    for &w in windows {
        s_values.push(chsh_at_window(wp, modulation, imperfections, w, angles)?);
    }
    Ok(WindowSweep {
        windows: windows.to_vec(),
        s_values,
        frequency_difference: wp.delta_omega(),
        modulation: *modulation,
    })
}

/// |S| at a single coincidence window.
pub fn chsh_at_window(
    wp: &BiphotonWavepacket,
    modulation: &ModulationSpec,
    imperfections: Option<&ImperfectionModel>,
    window: f64,
    angles: &ChshAngles,
) -> Result<f64, InterferenceError> {
    let zeta_w = coherence::zeta_numeric(wp, modulation, window)?;
    let (state, effective_angles) = match imperfections {
        None => (build_state(zeta_w, None)?, *angles),
        Some(model) => {
            let fraction = coherence::surviving_in_window_fraction(wp, modulation, window)?;
            let resolved = ImperfectionModel {
                accidental_fraction: model.epsilon_at_window(window, fraction),
                ..*model
            };
            (
                build_state(zeta_w, Some(&resolved))?,
                angles.with_basis_errors(model.basis_error_a, model.basis_error_b),
            )
        }
    };
    Ok(chsh_fixed(&state, &effective_angles).abs())
}
