//! Two-qubit polarization tomography: simulated coincidence counts on the
//! 16 settings {H, V, D, R} x {H, V, D, R}, linear inversion and
//! maximum-likelihood reconstruction.
//!
//! Counts follow a binomial model: each setting analyzes a fixed number of
//! generated pairs and the pass-pass coincidences succeed with probability
//! Tr[rho (Pi_a (x) Pi_b)]. Linear inversion solves the measurement map by
//! least squares and may return an unphysical (negative-eigenvalue) matrix;
//! the MLE reconstructs through the positivity-enforcing factorization
//! rho = G^dagger G / Tr[G^dagger G] by gradient ascent with backtracking
//! line search.

use crate::entanglement::{EntanglementError, TwoQubitState};
use crate::linalg::{self, CMat};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TomographyError {
    #[error("no count records supplied")]
    EmptyRecords,
    #[error("measurement map is singular; the setting set is not informationally complete")]
    SingularMap,
    #[error("pairs_per_setting must be at least 1")]
    NoPairs,
    #[error("invalid count record: {0}")]
    InvalidRecord(String),
    #[error("count CSV parse error at line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Entanglement(#[from] EntanglementError),
}

/// Single-qubit pure-state projector |psi><psi| with
/// |psi> = cos(theta) |H> + e^{i phi} sin(theta) |V>.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projector {
    pub theta: f64,
    pub phi: f64,
}

impl Projector {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn horizontal() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn vertical() -> Self {
        Self::new(FRAC_PI_2, 0.0)
    }

    pub fn diagonal() -> Self {
        Self::new(FRAC_PI_4, 0.0)
    }

    pub fn circular() -> Self {
        Self::new(FRAC_PI_4, FRAC_PI_2)
    }

    /// Jones vector (amplitudes on H, V).
    pub fn jones(&self) -> [Complex64; 2] {
        [
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::from_polar(self.theta.sin(), self.phi),
        ]
    }

    /// Jones vector of the orthogonal (reject) state.
    pub fn jones_perp(&self) -> [Complex64; 2] {
        [
            Complex64::new(self.theta.sin(), 0.0),
            -Complex64::from_polar(self.theta.cos(), self.phi),
        ]
    }

    /// 2x2 projector matrix.
    pub fn matrix(&self) -> CMat {
        let j = self.jones();
        let mut m = CMat::zeros(2);
        for a in 0..2 {
            for b in 0..2 {
                m[(a, b)] = j[a] * j[b].conj();
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSetting {
    pub id: String,
    pub projector_a: Projector,
    pub projector_b: Projector,
}

impl MeasurementSetting {
    /// 4x4 coincidence projector Pi_a (x) Pi_b.
    pub fn joint_projector(&self) -> CMat {
        self.projector_a.matrix().kron(&self.projector_b.matrix())
    }
}

/// The canonical informationally complete 16-setting set
/// {H, V, D, R} x {H, V, D, R}.
pub fn standard_settings() -> Vec<MeasurementSetting> {
    let singles = [
        ('H', Projector::horizontal()),
        ('V', Projector::vertical()),
        ('D', Projector::diagonal()),
        ('R', Projector::circular()),
    ];
    let mut out = Vec::with_capacity(16);
    for (la, pa) in singles {
        for (lb, pb) in singles {
            out.push(MeasurementSetting {
                id: format!("{la}{lb}"),
                projector_a: pa,
                projector_b: pb,
            });
        }
    }
    out
}

/// Pass-pass coincidence probability Tr[rho (Pi_a (x) Pi_b)].
pub fn setting_probability(state: &TwoQubitState, setting: &MeasurementSetting) -> f64 {
    state
        .matrix()
        .mul(&setting.joint_projector())
        .trace()
        .re
        .clamp(0.0, 1.0)
}

/// One tomography acquisition: `counts` pass-pass coincidences out of
/// `integration` analyzed pairs at the recorded projector angles.
#[derive(Clone, Debug, PartialEq)]
pub struct CountRecord {
    pub setting_id: String,
    /// theta_a, phi_a, theta_b, phi_b (radians).
    pub projector_angles: [f64; 4],
    pub counts: u64,
    pub integration: u64,
}

impl CountRecord {
    pub fn setting(&self) -> MeasurementSetting {
        MeasurementSetting {
            id: self.setting_id.clone(),
            projector_a: Projector::new(self.projector_angles[0], self.projector_angles[1]),
            projector_b: Projector::new(self.projector_angles[2], self.projector_angles[3]),
        }
    }
}

/// Draw binomial coincidence counts for every setting; deterministic for a
/// fixed seed (one independent substream per setting).
pub fn simulate_counts(
    state: &TwoQubitState,
    settings: &[MeasurementSetting],
    pairs_per_setting: u64,
    seed: u64,
) -> Result<Vec<CountRecord>, TomographyError> {
    if pairs_per_setting == 0 {
        return Err(TomographyError::NoPairs);
    }
    let mut out = Vec::with_capacity(settings.len());
    for (k, setting) in settings.iter().enumerate() {
        let p = setting_probability(state, setting);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let counts = Binomial::new(pairs_per_setting, p)
            .expect("probability is clamped to [0, 1]")
            .sample(&mut rng);
        out.push(CountRecord {
            setting_id: setting.id.clone(),
            projector_angles: [
                setting.projector_a.theta,
                setting.projector_a.phi,
                setting.projector_b.theta,
                setting.projector_b.phi,
            ],
            counts,
            integration: pairs_per_setting,
        });
    }
    Ok(out)
}

/// Hermitian operator basis sigma_i (x) sigma_j, i, j in 0..4.
fn pauli_basis() -> Vec<CMat> {
    let mut basis = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            basis.push(linalg::pauli(i).kron(&linalg::pauli(j)));
        }
    }
    basis
}

/// Real measurement matrix A[m][k] = Tr[B_k Pi_m] / 4 mapping Pauli
/// coefficients to pass-pass probabilities.
fn measurement_matrix(settings: &[MeasurementSetting]) -> Vec<f64> {
    let basis = pauli_basis();
    let mut a = vec![0.0; settings.len() * 16];
    for (m, setting) in settings.iter().enumerate() {
        let proj = setting.joint_projector();
        for (k, b) in basis.iter().enumerate() {
            a[m * 16 + k] = b.mul(&proj).trace().re / 4.0;
        }
    }
    a
}

/// Rank of the measurement map of a setting list.
pub fn measurement_rank(settings: &[MeasurementSetting]) -> usize {
    linalg::matrix_rank(&measurement_matrix(settings), settings.len(), 16, 1e-10)
}

/// Least-squares inverse of the measurement map. The result is Hermitian
/// and trace-normalized but may carry negative eigenvalues; feed it to
/// `mle_reconstruct` for a physical state.
pub fn linear_inversion(records: &[CountRecord]) -> Result<CMat, TomographyError> {
    if records.is_empty() {
        return Err(TomographyError::EmptyRecords);
    }
    let settings: Vec<MeasurementSetting> = records.iter().map(CountRecord::setting).collect();
    for r in records {
        if r.counts > r.integration || r.integration == 0 {
            return Err(TomographyError::InvalidRecord(format!(
                "setting {}: counts {} / integration {}",
                r.setting_id, r.counts, r.integration
            )));
        }
    }
    let a = measurement_matrix(&settings);
    let m = settings.len();
    let p: Vec<f64> = records
        .iter()
        .map(|r| r.counts as f64 / r.integration as f64)
        .collect();

    // Normal equations (A^T A) x = A^T p.
    let mut ata = vec![0.0; 16 * 16];
    let mut atp = vec![0.0; 16];
    for row in 0..m {
        for i in 0..16 {
            let ai = a[row * 16 + i];
            if ai == 0.0 {
                continue;
            }
            atp[i] += ai * p[row];
            for j in 0..16 {
                ata[i * 16 + j] += ai * a[row * 16 + j];
            }
        }
    }
    let x = linalg::lu_solve(&ata, &atp, 16).ok_or(TomographyError::SingularMap)?;

    let basis = pauli_basis();
    let mut rho = CMat::zeros(4);
    for (k, b) in basis.iter().enumerate() {
        rho = rho.add(&b.scale(Complex64::new(x[k] / 4.0, 0.0)));
    }
    let trace = rho.trace().re;
    if trace.abs() < 1e-9 {
        return Err(TomographyError::SingularMap);
    }
    Ok(rho.scale(Complex64::new(1.0 / trace, 0.0)))
}

/// Outcome of a maximum-likelihood reconstruction.
#[derive(Clone, Debug)]
pub struct MleResult {
    pub state: TwoQubitState,
    pub converged: bool,
    pub iterations: usize,
    /// Binomial log-likelihood of the returned state (without the
    /// count-independent combinatorial constant).
    pub log_likelihood: f64,
    /// Log-likelihood after each accepted iteration (non-decreasing).
    pub ll_trace: Vec<f64>,
}

/// Maximum-likelihood state: maximizes the product of per-setting binomial
/// likelihoods over rho = G^dagger G / Tr[G^dagger G] by gradient ascent
/// with backtracking line search. Stops when the log-likelihood improves by
/// less than 1e-10 or after 10^4 iterations; non-convergence returns the
/// best iterate with `converged = false`.
pub fn mle_reconstruct(records: &[CountRecord]) -> Result<MleResult, TomographyError> {
    if records.is_empty() {
        return Err(TomographyError::EmptyRecords);
    }
    let projectors: Vec<CMat> = records
        .iter()
        .map(|r| r.setting().joint_projector())
        .collect();
    let n: Vec<f64> = records.iter().map(|r| r.counts as f64).collect();
    let total: Vec<f64> = records.iter().map(|r| r.integration as f64).collect();
    for r in records {
        if r.counts > r.integration || r.integration == 0 {
            return Err(TomographyError::InvalidRecord(format!(
                "setting {}: counts {} / integration {}",
                r.setting_id, r.counts, r.integration
            )));
        }
    }

    let rho_of = |g: &CMat| -> CMat {
        let gg = g.dagger().mul(g);
        let t = gg.trace().re;
        gg.scale(Complex64::new(1.0 / t, 0.0))
    };
    // rho is invariant under G -> c G; keep the factor at unit scale so the
    // multiplicative updates cannot overflow.
    fn normalize_factor(g: &CMat) -> CMat {
        let s = g.max_abs().max(f64::MIN_POSITIVE);
        g.scale(Complex64::new(1.0 / s, 0.0))
    }
    let log_lik = |rho: &CMat| -> f64 {
        let mut ll = 0.0;
        for (k, proj) in projectors.iter().enumerate() {
            let p = rho.mul(proj).trace().re.clamp(1e-12, 1.0 - 1e-12);
            if n[k] > 0.0 {
                ll += n[k] * p.ln();
            }
            if total[k] - n[k] > 0.0 {
                ll += (total[k] - n[k]) * (1.0 - p).ln();
            }
        }
        ll
    };

    // Warm start from linear inversion when the setting set permits it,
    // with eigenvalues clamped to a tiny positive floor. For consistent
    // counts the inversion already sits at the optimum, and the likelihood
    // is quadratically flat there, so first-order polish from a distant
    // start would be slow.
    let mut g = match linear_inversion(records) {
        Ok(rho_lin) => {
            let (vals, vecs) = rho_lin.hermitian_eigen();
            let mut rho0 = CMat::zeros(4);
            for (k, &lam) in vals.iter().enumerate() {
                let clamped = lam.max(1e-10);
                for i in 0..4 {
                    for j in 0..4 {
                        rho0[(i, j)] +=
                            vecs[(i, k)] * vecs[(j, k)].conj() * Complex64::new(clamped, 0.0);
                    }
                }
            }
            let t = rho0.trace().re;
            rho0.scale(Complex64::new(1.0 / t, 0.0)).sqrt_psd(0.0)
        }
        Err(_) => CMat::identity(4).scale(Complex64::new(0.5, 0.0)),
    };

    let mut rho = rho_of(&g);
    let mut ll = log_lik(&rho);
    let mut step = 1e-3;
    let mut converged = false;
    let mut iterations = 0;
    let mut ll_trace = vec![ll];

    for iter in 0..10_000 {
        iterations = iter + 1;
        // R = sum_k [n_k/p_k - (N_k - n_k)/(1 - p_k)] Pi_k: the stationary
        // state satisfies R rho = Tr[R rho] rho.
        let mut r = CMat::zeros(4);
        for (k, proj) in projectors.iter().enumerate() {
            let p = rho.mul(proj).trace().re.clamp(1e-12, 1.0 - 1e-12);
            let w = n[k] / p - (total[k] - n[k]) / (1.0 - p);
            if w != 0.0 {
                r = r.add(&proj.scale(Complex64::new(w, 0.0)));
            }
        }
        let lagrange = r.mul(&rho).trace().re;

        let mut improved = false;
        let mut gain = 0.0;

        // Fixed-point candidate G <- G (R + shift I): the multiplicative
        // update contracts boundary directions far faster than plain
        // gradient steps. Accepted only if the likelihood improves, which
        // keeps the iteration monotone.
        let r_eigs = r.hermitian_eigenvalues();
        let span = (r_eigs[3] - r_eigs[0]).abs().max(1e-30);
        let shift = (-r_eigs[0]).max(0.0) + 1e-3 * span;
        let a = r.add(&CMat::identity(4).scale(Complex64::new(shift, 0.0)));
        let trial = normalize_factor(&g.mul(&a));
        let trial_rho = rho_of(&trial);
        let trial_ll = log_lik(&trial_rho);
        if trial_ll > ll {
            gain = trial_ll - ll;
            g = trial;
            rho = trial_rho;
            ll = trial_ll;
            improved = true;
        } else {
            // Line-searched gradient ascent on G: direction G (R - mu I).
            let r_tangent = r.sub(&CMat::identity(4).scale(Complex64::new(lagrange, 0.0)));
            let direction = g.mul(&r_tangent);
            let dir_scale = direction.max_abs().max(f64::MIN_POSITIVE);
            let g_scale = g.max_abs().max(f64::MIN_POSITIVE);
            for _ in 0..60 {
                let trial =
                    g.add(&direction.scale(Complex64::new(step * g_scale / dir_scale, 0.0)));
                let trial_rho = rho_of(&trial);
                let trial_ll = log_lik(&trial_rho);
                if trial_ll > ll {
                    gain = trial_ll - ll;
                    g = normalize_factor(&trial);
                    rho = trial_rho;
                    ll = trial_ll;
                    step *= 1.3;
                    improved = true;
                    break;
                }
                step *= 0.5;
                if step < 1e-18 {
                    break;
                }
            }
        }
        ll_trace.push(ll);
        if !improved || gain < 1e-10 {
            // Either no uphill step exists within the search budget or the
            // improvement fell below the stopping threshold.
            converged = true;
            break;
        }
    }

    let state = TwoQubitState::new(rho)?;
    Ok(MleResult {
        state,
        converged,
        iterations,
        log_likelihood: ll,
        ll_trace,
    })
}

/// CSV schema identifier for count records.
pub const COUNTS_CSV_SCHEMA: &str = "biphoton.tomography_counts.v1";

/// Write records as CSV with columns
/// setting_id, theta_a, phi_a, theta_b, phi_b, counts, integration.
pub fn write_records_csv<W: Write>(
    records: &[CountRecord],
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(out, "# schema: {COUNTS_CSV_SCHEMA}")?;
    writeln!(out, "setting_id,theta_a,phi_a,theta_b,phi_b,counts,integration")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.setting_id,
            r.projector_angles[0],
            r.projector_angles[1],
            r.projector_angles[2],
            r.projector_angles[3],
            r.counts,
            r.integration
        )?;
    }
    Ok(())
}

/// Read records written by `write_records_csv`.
pub fn read_records_csv<R: BufRead>(input: R) -> Result<Vec<CountRecord>, TomographyError> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(|e| TomographyError::Csv {
            line: idx + 1,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with("setting_id") {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 7 {
            return Err(TomographyError::Csv {
                line: idx + 1,
                message: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64, TomographyError> {
            s.parse().map_err(|_| TomographyError::Csv {
                line: idx + 1,
                message: format!("bad number {s:?}"),
            })
        };
        out.push(CountRecord {
            setting_id: fields[0].to_string(),
            projector_angles: [
                parse(fields[1])?,
                parse(fields[2])?,
                parse(fields[3])?,
                parse(fields[4])?,
            ],
            counts: parse(fields[5])? as u64,
            integration: parse(fields[6])? as u64,
        });
    }
    if out.is_empty() {
        return Err(TomographyError::EmptyRecords);
    }
    Ok(out)
}

/// Exact (noiseless) records for a state: counts = round(N p).
pub fn exact_records(
    state: &TwoQubitState,
    settings: &[MeasurementSetting],
    pairs_per_setting: u64,
) -> Vec<CountRecord> {
    settings
        .iter()
        .map(|s| CountRecord {
            setting_id: s.id.clone(),
            projector_angles: [
                s.projector_a.theta,
                s.projector_a.phi,
                s.projector_b.theta,
                s.projector_b.phi,
            ],
            counts: (setting_probability(state, s) * pairs_per_setting as f64).round() as u64,
            integration: pairs_per_setting,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::build_state;

    #[test]
    fn sixteen_settings_and_hh_projector() {
        let settings = standard_settings();
        assert_eq!(settings.len(), 16);
        let hh = &settings[0];
        assert_eq!(hh.id, "HH");
        let proj = hh.joint_projector();
        // |HH><HH| has a single 1 in the (0,0) corner.
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((proj[(i, j)].re - expect).abs() < 1e-15);
                assert!(proj[(i, j)].im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn projectors_are_projectors() {
        for p in [
            Projector::horizontal(),
            Projector::vertical(),
            Projector::diagonal(),
            Projector::circular(),
        ] {
            let m = p.matrix();
            assert!(m.is_hermitian(1e-12));
            assert!((m.trace().re - 1.0).abs() < 1e-12);
            assert!(m.mul(&m).max_abs_diff(&m) < 1e-12);
            // Perp state is orthogonal.
            let j = p.jones();
            let jp = p.jones_perp();
            let overlap = j[0].conj() * jp[0] + j[1].conj() * jp[1];
            assert!(overlap.norm() < 1e-15);
        }
    }

    #[test]
    fn full_rank_sixteen() {
        assert_eq!(measurement_rank(&standard_settings()), 16);
    }

    #[test]
    fn twelve_settings_are_rank_deficient() {
        let subset: Vec<MeasurementSetting> = standard_settings()
            .into_iter()
            .filter(|s| !s.id.starts_with('R'))
            .collect();
        assert_eq!(subset.len(), 12);
        assert!(measurement_rank(&subset) < 16);
        let state = TwoQubitState::bell_psi_plus();
        let records = exact_records(&state, &subset, 1_000_000);
        assert!(matches!(
            linear_inversion(&records),
            Err(TomographyError::SingularMap)
        ));
    }

    #[test]
    fn bell_probabilities() {
        let bell = TwoQubitState::bell_psi_plus();
        let settings = standard_settings();
        let by_id = |id: &str| {
            settings
                .iter()
                .find(|s| s.id == id)
                .map(|s| setting_probability(&bell, s))
                .unwrap()
        };
        assert!(by_id("HH").abs() < 1e-15);
        assert!((by_id("HV") - 0.5).abs() < 1e-15);
        assert!((by_id("DD") - 0.5).abs() < 1e-15);
    }

    #[test]
    fn binomial_counts_match_mean() {
        let bell = TwoQubitState::bell_psi_plus();
        let settings = standard_settings();
        let records = simulate_counts(&bell, &settings, 1_000_000, 7).unwrap();
        let hv = records.iter().find(|r| r.setting_id == "HV").unwrap();
        // mean N/2, 3 sigma = 3 * 500
        assert!((hv.counts as f64 - 500_000.0).abs() < 1500.0);
        let hh = records.iter().find(|r| r.setting_id == "HH").unwrap();
        assert_eq!(hh.counts, 0);
        // Deterministic per seed.
        let again = simulate_counts(&bell, &settings, 1_000_000, 7).unwrap();
        assert_eq!(records, again);
        let other = simulate_counts(&bell, &settings, 1_000_000, 8).unwrap();
        assert_ne!(records, other);
    }

    #[test]
    fn maximally_mixed_counts_mean_quarter() {
        let mm = TwoQubitState::maximally_mixed();
        let records = simulate_counts(&mm, &standard_settings(), 1_000_000, 3).unwrap();
        for r in records {
            assert!(
                (r.counts as f64 - 250_000.0).abs() < 3.0 * 433.0 + 600.0,
                "{}: {}",
                r.setting_id,
                r.counts
            );
        }
    }

    #[test]
    fn linear_inversion_round_trips_exact_probabilities() {
        let settings = standard_settings();
        for zeta in [0.0, 0.25, 0.5] {
            let state = build_state(Complex64::new(zeta, 0.0), None).unwrap();
            // Large N so that round(N p) loses nothing.
            let records = exact_records(&state, &settings, 1_u64 << 40);
            let rho = linear_inversion(&records).unwrap();
            assert!(
                rho.max_abs_diff(state.matrix()) < 1e-10,
                "zeta = {zeta}"
            );
        }
    }

    #[test]
    fn mle_on_noiseless_bell_records() {
        let bell = TwoQubitState::bell_psi_plus();
        let records = exact_records(&bell, &standard_settings(), 1_u64 << 40);
        let result = mle_reconstruct(&records).unwrap();
        assert!(result.converged);
        assert!(
            (result.state.concurrence() - 1.0).abs() < 1e-6,
            "C = {}",
            result.state.concurrence()
        );
    }

    #[test]
    fn mle_on_maximally_mixed_records() {
        let mm = TwoQubitState::maximally_mixed();
        let records = exact_records(&mm, &standard_settings(), 1_u64 << 40);
        let result = mle_reconstruct(&records).unwrap();
        assert!(result.state.concurrence() < 1e-8);
    }

    #[test]
    fn mle_concurrence_tracks_noisy_counts() {
        let state = build_state(Complex64::new(0.25, 0.0), None).unwrap();
        let records = simulate_counts(&state, &standard_settings(), 1_000_000, 11).unwrap();
        let result = mle_reconstruct(&records).unwrap();
        assert!(
            (result.state.concurrence() - 0.5).abs() < 0.02,
            "C = {}",
            result.state.concurrence()
        );
    }

    #[test]
    fn csv_round_trip() {
        let bell = TwoQubitState::bell_psi_plus();
        let records = simulate_counts(&bell, &standard_settings(), 10_000, 5).unwrap();
        let mut buf = Vec::new();
        write_records_csv(&records, &mut buf).unwrap();
        let parsed = read_records_csv(buf.as_slice()).unwrap();
        assert_eq!(records, parsed);
    }

    #[test]
    fn empty_and_invalid_inputs() {
        assert!(matches!(
            mle_reconstruct(&[]),
            Err(TomographyError::EmptyRecords)
        ));
        let bell = TwoQubitState::bell_psi_plus();
        assert!(matches!(
            simulate_counts(&bell, &standard_settings(), 0, 1),
            Err(TomographyError::NoPairs)
        ));
        let mut records = exact_records(&bell, &standard_settings(), 100);
        records[0].counts = 200;
        assert!(matches!(
            linear_inversion(&records),
            Err(TomographyError::InvalidRecord(_))
        ));
    }
}
