//! Event-level simulation: timestamped, polarization-resolved detector
//! clicks generated pair by pair from the biphoton wavepacket.
//!
//! Pipeline: `generate_pairs` -> `thin_by_modulation` -> `inject_accidentals`
//! -> coincidence analysis. Every stage draws from its own purpose-tagged
//! ChaCha substream of the run seed, so toggling one feature never perturbs
//! the randomness of the others, and identical configurations produce
//! bit-identical streams. Emission is chunked in time; each chunk owns
//! independent substreams, so chunks can be generated in any order (or in
//! parallel) and merged by timestamp into the same canonical stream.
//!
//! Serialized forms: CSV (`arm,time_ns,outcome,origin`) and a
//! length-prefixed little-endian binary format (one record per event; see
//! `write_events_binary`).

use crate::tomography::Projector;
use crate::wavepacket::{BiphotonWavepacket, ModulationSpec, PairOrdering, WavepacketError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Poisson};
use std::collections::VecDeque;
use std::io::{BufRead, Read, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MonteCarloError {
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
    #[error("insufficient coincidences for setting {setting}: {got} < {min}")]
    InsufficientCoincidences {
        setting: usize,
        got: u64,
        min: u64,
    },
    #[error("event data parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Wavepacket(#[from] WavepacketError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arm {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Reject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Pair,
    Accidental,
}

/// One detector click. The pair tag links the two photons of a generated
/// pair for diagnostics and conditional thinning; analysis operations never
/// read it (nor the origin tag).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectionEvent {
    pub arm: Arm,
    pub time_ns: f64,
    pub outcome: Outcome,
    pub origin: Origin,
    pub pair: Option<u64>,
}

/// Time-sorted sequence of detection events.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EventStream {
    events: Vec<DetectionEvent>,
}

impl EventStream {
    pub fn from_events(mut events: Vec<DetectionEvent>) -> Self {
        events.sort_by(|a, b| a.time_ns.total_cmp(&b.time_ns));
        Self { events }
    }

    pub fn events(&self) -> &[DetectionEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Full configuration of one simulated acquisition.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    /// Pair generation rate (1/ns).
    pub pair_rate: f64,
    /// Acquisition length (ns).
    pub duration: f64,
    pub wavepacket: BiphotonWavepacket,
    pub modulation: ModulationSpec,
    /// Analyzer on arm 1 (pass projector).
    pub analyzer_a: Projector,
    /// Analyzer on arm 2.
    pub analyzer_b: Projector,
    /// Per-arm background singles rate (1/ns).
    pub accidental_rate: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), MonteCarloError> {
        if !(self.pair_rate > 0.0) {
            return Err(MonteCarloError::InvalidConfig(format!(
                "pair_rate {} must be positive",
                self.pair_rate
            )));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(MonteCarloError::InvalidConfig(format!(
                "duration {} must be positive and finite",
                self.duration
            )));
        }
        if !(self.accidental_rate >= 0.0) {
            return Err(MonteCarloError::InvalidConfig(format!(
                "accidental_rate {} must be non-negative",
                self.accidental_rate
            )));
        }
        Ok(())
    }
}

// Purpose tags for substream derivation: stream id = (chunk << 3) | purpose.
const PURPOSE_EMISSION: u64 = 0;
const PURPOSE_DELAY: u64 = 1;
const PURPOSE_OUTCOME: u64 = 2;
const PURPOSE_THIN: u64 = 3;
const PURPOSE_ACCIDENTAL_ARM1: u64 = 4;
const PURPOSE_ACCIDENTAL_ARM2: u64 = 5;

fn substream(seed: u64, chunk: u64, purpose: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream((chunk << 3) | purpose);
    rng
}

/// Emission chunk length targeting ~256 pairs per chunk.
fn chunk_length(pair_rate: f64, duration: f64) -> f64 {
    (256.0 / pair_rate).min(duration)
}

fn poisson_count(rng: &mut ChaCha12Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive finite mean").sample(rng) as u64
}

/// Generate photon-pair detection events.
///
/// Pair emissions are Poisson at `pair_rate`; the relative delay tau of the
/// arm-2 photon is drawn from the normalized |phi_HV|^2 by inverse CDF; the
/// polarization outcomes follow the Born rule for the conditional pair
/// state phi_HV(tau) |HV> + e^{i dw tau} phi_VH(tau) |VH> at the configured
/// analyzers. Pairs whose photons fall outside [0, duration) are dropped
/// (a boundary effect of order tau0/duration). No modulation thinning and
/// no background here; see `thin_by_modulation` and `inject_accidentals`.
pub fn generate_pairs(config: &RunConfig) -> Result<EventStream, MonteCarloError> {
    config.validate()?;
    let wp = &config.wavepacket;
    let dw = wp.delta_omega();
    let chunk_len = chunk_length(config.pair_rate, config.duration);
    let n_chunks = (config.duration / chunk_len).ceil() as u64;

    let mut events = Vec::new();
    let mut pair_index: u64 = 0;
    for chunk in 0..n_chunks {
        let t0 = chunk as f64 * chunk_len;
        let t1 = (t0 + chunk_len).min(config.duration);
        let len = t1 - t0;
        if len <= 0.0 {
            break;
        }
        let mut rng_e = substream(config.seed, chunk, PURPOSE_EMISSION);
        let mut rng_d = substream(config.seed, chunk, PURPOSE_DELAY);
        let mut rng_o = substream(config.seed, chunk, PURPOSE_OUTCOME);

        let count = poisson_count(&mut rng_e, config.pair_rate * len);
        let mut emissions: Vec<f64> = (0..count)
            .map(|_| t0 + rng_e.random::<f64>() * len)
            .collect();
        emissions.sort_by(f64::total_cmp);

        for t_emit in emissions {
            let tau = wp.delay_quantile(rng_d.random::<f64>());
            let t2 = t_emit + tau;
            let (o1, o2) = born_outcomes(
                wp,
                dw,
                tau,
                &config.analyzer_a,
                &config.analyzer_b,
                rng_o.random::<f64>(),
            );
            if t_emit >= 0.0 && t_emit < config.duration && t2 >= 0.0 && t2 < config.duration {
                events.push(DetectionEvent {
                    arm: Arm::One,
                    time_ns: t_emit,
                    outcome: o1,
                    origin: Origin::Pair,
                    pair: Some(pair_index),
                });
                events.push(DetectionEvent {
                    arm: Arm::Two,
                    time_ns: t2,
                    outcome: o2,
                    origin: Origin::Pair,
                    pair: Some(pair_index),
                });
            }
            pair_index += 1;
        }
    }
    Ok(EventStream::from_events(events))
}

/// Joint Born-rule outcomes for the conditional pair state at delay tau.
fn born_outcomes(
    wp: &BiphotonWavepacket,
    dw: f64,
    tau: f64,
    analyzer_a: &Projector,
    analyzer_b: &Projector,
    u: f64,
) -> (Outcome, Outcome) {
    let alpha = Complex64::new(wp.amplitude(PairOrdering::Hv, tau), 0.0);
    let beta = Complex64::from_polar(wp.amplitude(PairOrdering::Vh, tau), dw * tau);
    let norm = alpha.norm_sqr() + beta.norm_sqr();

    let a_pass = analyzer_a.jones();
    let a_rej = analyzer_a.jones_perp();
    let b_pass = analyzer_b.jones();
    let b_rej = analyzer_b.jones_perp();

    // <xy|psi> = alpha x_H* y_V* + beta x_V* y_H*
    let amp = |x: &[Complex64; 2], y: &[Complex64; 2]| -> f64 {
        (alpha * x[0].conj() * y[1].conj() + beta * x[1].conj() * y[0].conj()).norm_sqr() / norm
    };
    let p_pp = amp(&a_pass, &b_pass);
    let p_pr = amp(&a_pass, &b_rej);
    let p_rp = amp(&a_rej, &b_pass);

    if u < p_pp {
        (Outcome::Pass, Outcome::Pass)
    } else if u < p_pp + p_pr {
        (Outcome::Pass, Outcome::Reject)
    } else if u < p_pp + p_pr + p_rp {
        (Outcome::Reject, Outcome::Pass)
    } else {
        (Outcome::Reject, Outcome::Reject)
    }
}

/// Apply amplitude modulation as probabilistic thinning.
///
/// Synchronous mode gates each photon independently with probability
/// |m(t)|^2 at its absolute detection time; conditional mode keeps or drops
/// the pair as a whole with probability M(tau) at its delay. Survival draws
/// come from the per-pair thinning substream of `seed`, so the decision for
/// pair k depends only on (seed, k). Events without a pair tag (injected
/// background) pass through untouched; thin before injecting accidentals.
pub fn thin_by_modulation(
    stream: &EventStream,
    modulation: &ModulationSpec,
    delta_omega: f64,
    seed: u64,
) -> Result<EventStream, MonteCarloError> {
    if modulation.is_none() {
        return Ok(stream.clone());
    }
    // Collect partner times per pair tag for conditional gating.
    let mut kept: Vec<DetectionEvent> = Vec::with_capacity(stream.len());
    if modulation.is_conditional() {
        let mut partner_time = std::collections::HashMap::new();
        for e in stream.events() {
            if let Some(tag) = e.pair {
                partner_time
                    .entry(tag)
                    .or_insert_with(Vec::new)
                    .push((e.arm, e.time_ns));
            }
        }
        for e in stream.events() {
            match e.pair {
                None => kept.push(*e),
                Some(tag) => {
                    let times = &partner_time[&tag];
                    if times.len() != 2 {
                        kept.push(*e); // unpaired survivor, nothing to gate on
                        continue;
                    }
                    let t1 = times.iter().find(|(a, _)| *a == Arm::One).map(|(_, t)| *t);
                    let t2 = times.iter().find(|(a, _)| *a == Arm::Two).map(|(_, t)| *t);
                    let (Some(t1), Some(t2)) = (t1, t2) else {
                        kept.push(*e);
                        continue;
                    };
                    let tau = t2 - t1;
                    let mut rng = substream(seed, tag, PURPOSE_THIN);
                    let survive = rng.random::<f64>() < modulation.envelope(delta_omega, tau);
                    if survive {
                        kept.push(*e);
                    }
                }
            }
        }
    } else {
        for e in stream.events() {
            match e.pair {
                None => kept.push(*e),
                Some(tag) => {
                    let mut rng = substream(seed, tag, PURPOSE_THIN);
                    // Two draws per pair, arm 1 first, so both photons of a
                    // pair see a stable sequence regardless of stream order.
                    let u1: f64 = rng.random();
                    let u2: f64 = rng.random();
                    let (u, arm2) = match e.arm {
                        Arm::One => (u1, false),
                        Arm::Two => (u2, true),
                    };
                    let p = modulation.per_photon_intensity(arm2, e.time_ns)?;
                    if u < p {
                        kept.push(*e);
                    }
                }
            }
        }
    }
    Ok(EventStream::from_events(kept))
}

/// Add per-arm Poisson background with unpolarized outcomes
/// (Bernoulli 1/2 at any analyzer). The merged stream stays time-sorted.
pub fn inject_accidentals(
    stream: &EventStream,
    config: &RunConfig,
) -> Result<EventStream, MonteCarloError> {
    config.validate()?;
    if config.accidental_rate == 0.0 {
        return Ok(stream.clone());
    }
    let chunk_len = chunk_length(config.pair_rate, config.duration);
    let n_chunks = (config.duration / chunk_len).ceil() as u64;
    let mut events = stream.events().to_vec();
    for (arm, purpose) in [
        (Arm::One, PURPOSE_ACCIDENTAL_ARM1),
        (Arm::Two, PURPOSE_ACCIDENTAL_ARM2),
    ] {
        for chunk in 0..n_chunks {
            let t0 = chunk as f64 * chunk_len;
            let t1 = (t0 + chunk_len).min(config.duration);
            let len = t1 - t0;
            if len <= 0.0 {
                break;
            }
            let mut rng = substream(config.seed, chunk, purpose);
            let count = poisson_count(&mut rng, config.accidental_rate * len);
            for _ in 0..count {
                let t = t0 + rng.random::<f64>() * len;
                let outcome = if rng.random::<f64>() < 0.5 {
                    Outcome::Pass
                } else {
                    Outcome::Reject
                };
                events.push(DetectionEvent {
                    arm,
                    time_ns: t,
                    outcome,
                    origin: Origin::Accidental,
                    pair: None,
                });
            }
        }
    }
    Ok(EventStream::from_events(events))
}

/// Full pipeline: generate, thin, inject background.
pub fn run_scenario(config: &RunConfig) -> Result<EventStream, MonteCarloError> {
    let pairs = generate_pairs(config)?;
    let thinned = thin_by_modulation(
        &pairs,
        &config.modulation,
        config.wavepacket.delta_omega(),
        config.seed,
    )?;
    inject_accidentals(&thinned, config)
}

/// A matched coincidence: indices into the stream for the arm-1 and arm-2
/// events.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoincidencePair {
    pub arm1_index: usize,
    pub arm2_index: usize,
}

/// Greedy time-ordered coincidence matching: walking the stream in time
/// order, an event pairs with the oldest unmatched event of the other arm
/// within |t1 - t2| <= window; each event is used at most once.
pub fn coincidence_pairs(stream: &EventStream, window: f64) -> Vec<CoincidencePair> {
    let events = stream.events();
    let mut out = Vec::new();
    let mut waiting: [VecDeque<usize>; 2] = [VecDeque::new(), VecDeque::new()];
    for (idx, e) in events.iter().enumerate() {
        let (own, other) = match e.arm {
            Arm::One => (0, 1),
            Arm::Two => (1, 0),
        };
        while let Some(&front) = waiting[other].front() {
            if e.time_ns - events[front].time_ns > window {
                waiting[other].pop_front();
            } else {
                break;
            }
        }
        if let Some(front) = waiting[other].pop_front() {
            let (a1, a2) = if e.arm == Arm::One {
                (idx, front)
            } else {
                (front, idx)
            };
            out.push(CoincidencePair {
                arm1_index: a1,
                arm2_index: a2,
            });
        } else {
            waiting[own].push_back(idx);
        }
    }
    out
}

/// Pass/reject-resolved coincidence counts at one analyzer setting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoincidenceCounts {
    pub pass_pass: u64,
    pub pass_reject: u64,
    pub reject_pass: u64,
    pub reject_reject: u64,
}

impl CoincidenceCounts {
    pub fn total(&self) -> u64 {
        self.pass_pass + self.pass_reject + self.reject_pass + self.reject_reject
    }

    /// Correlation E = (N_pp - N_pr - N_rp + N_rr) / N.
    pub fn correlation(&self) -> f64 {
        let n = self.total();
        if n == 0 {
            return 0.0;
        }
        (self.pass_pass as f64 - self.pass_reject as f64 - self.reject_pass as f64
            + self.reject_reject as f64)
            / n as f64
    }
}

/// Count coincidences within the window, resolved by outcome.
pub fn coincidence_analysis(stream: &EventStream, window: f64) -> CoincidenceCounts {
    let events = stream.events();
    let mut counts = CoincidenceCounts::default();
    for pair in coincidence_pairs(stream, window) {
        match (
            events[pair.arm1_index].outcome,
            events[pair.arm2_index].outcome,
        ) {
            (Outcome::Pass, Outcome::Pass) => counts.pass_pass += 1,
            (Outcome::Pass, Outcome::Reject) => counts.pass_reject += 1,
            (Outcome::Reject, Outcome::Pass) => counts.reject_pass += 1,
            (Outcome::Reject, Outcome::Reject) => counts.reject_reject += 1,
        }
    }
    counts
}

/// Delays t2 - t1 of matched coincidences.
pub fn coincidence_delays(stream: &EventStream, window: f64) -> Vec<f64> {
    let events = stream.events();
    coincidence_pairs(stream, window)
        .into_iter()
        .map(|p| events[p.arm2_index].time_ns - events[p.arm1_index].time_ns)
        .collect()
}

/// CHSH estimate from the four setting streams.
#[derive(Clone, Copy, Debug)]
pub struct ChshEstimate {
    /// Signed S = E(a,b) + E(a,b') + E(a',b) - E(a',b').
    pub s: f64,
    /// Binomial standard error.
    pub std_error: f64,
    pub counts: [CoincidenceCounts; 4],
}

/// Minimum coincidences per setting for a CHSH estimate.
pub const MIN_COINCIDENCES: u64 = 100;

/// Estimate S from streams measured at (a,b), (a,b'), (a',b), (a',b').
pub fn estimate_chsh(
    streams: &[EventStream; 4],
    window: f64,
) -> Result<ChshEstimate, MonteCarloError> {
    let mut counts = [CoincidenceCounts::default(); 4];
    for (k, stream) in streams.iter().enumerate() {
        counts[k] = coincidence_analysis(stream, window);
        if counts[k].total() < MIN_COINCIDENCES {
            return Err(MonteCarloError::InsufficientCoincidences {
                setting: k,
                got: counts[k].total(),
                min: MIN_COINCIDENCES,
            });
        }
    }
    let e: Vec<f64> = counts.iter().map(CoincidenceCounts::correlation).collect();
    let s = e[0] + e[1] + e[2] - e[3];
    let var: f64 = counts
        .iter()
        .zip(&e)
        .map(|(c, ei)| (1.0 - ei * ei) / c.total() as f64)
        .sum();
    Ok(ChshEstimate {
        s,
        std_error: var.sqrt(),
        counts,
    })
}

/// Estimate the coherence as <cos(dw tau)>/2 over matched coincidences,
/// with its standard error.
pub fn estimate_zeta(stream: &EventStream, window: f64, delta_omega: f64) -> Option<(f64, f64)> {
    let delays = coincidence_delays(stream, window);
    if delays.is_empty() {
        return None;
    }
    let n = delays.len() as f64;
    let vals: Vec<f64> = delays.iter().map(|&t| (delta_omega * t).cos()).collect();
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    Some((0.5 * mean, 0.5 * (var / n).sqrt()))
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// CSV schema identifier for event streams.
pub const EVENTS_CSV_SCHEMA: &str = "biphoton.events.v1";
/// Binary format magic.
pub const EVENTS_BINARY_MAGIC: &[u8; 4] = b"BPEV";
/// Binary format version.
pub const EVENTS_BINARY_VERSION: u16 = 1;

/// Write the stream as CSV: `arm,time_ns,outcome,origin`.
pub fn write_events_csv<W: Write>(stream: &EventStream, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "# schema: {EVENTS_CSV_SCHEMA}")?;
    writeln!(out, "arm,time_ns,outcome,origin")?;
    for e in stream.events() {
        writeln!(
            out,
            "{},{},{},{}",
            match e.arm {
                Arm::One => 1,
                Arm::Two => 2,
            },
            e.time_ns,
            match e.outcome {
                Outcome::Pass => "pass",
                Outcome::Reject => "reject",
            },
            match e.origin {
                Origin::Pair => "pair",
                Origin::Accidental => "accidental",
            }
        )?;
    }
    Ok(())
}

/// Read a stream written by `write_events_csv` (pair tags are not
/// serialized and come back as `None`).
pub fn read_events_csv<R: BufRead>(input: R) -> Result<EventStream, MonteCarloError> {
    let mut events = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with("arm,") {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 4 {
            return Err(MonteCarloError::Parse(format!(
                "line {}: expected 4 fields, got {}",
                idx + 1,
                fields.len()
            )));
        }
        let arm = match fields[0] {
            "1" => Arm::One,
            "2" => Arm::Two,
            other => {
                return Err(MonteCarloError::Parse(format!(
                    "line {}: bad arm {other:?}",
                    idx + 1
                )))
            }
        };
        let time_ns: f64 = fields[1]
            .parse()
            .map_err(|_| MonteCarloError::Parse(format!("line {}: bad time", idx + 1)))?;
        let outcome = match fields[2] {
            "pass" => Outcome::Pass,
            "reject" => Outcome::Reject,
            other => {
                return Err(MonteCarloError::Parse(format!(
                    "line {}: bad outcome {other:?}",
                    idx + 1
                )))
            }
        };
        let origin = match fields[3] {
            "pair" => Origin::Pair,
            "accidental" => Origin::Accidental,
            other => {
                return Err(MonteCarloError::Parse(format!(
                    "line {}: bad origin {other:?}",
                    idx + 1
                )))
            }
        };
        events.push(DetectionEvent {
            arm,
            time_ns,
            outcome,
            origin,
            pair: None,
        });
    }
    Ok(EventStream::from_events(events))
}

/// Binary layout: magic `BPEV`, u16 version, u64 record count, then one
/// length-prefixed record per event: u32 payload length (= 11), u8 arm
/// (1/2), u8 outcome (0 = pass, 1 = reject), u8 origin (0 = pair,
/// 1 = accidental), f64 time in ns. All integers and the float are
/// little-endian.
pub fn write_events_binary<W: Write>(stream: &EventStream, out: &mut W) -> std::io::Result<()> {
    out.write_all(EVENTS_BINARY_MAGIC)?;
    out.write_all(&EVENTS_BINARY_VERSION.to_le_bytes())?;
    out.write_all(&(stream.len() as u64).to_le_bytes())?;
    for e in stream.events() {
        out.write_all(&11u32.to_le_bytes())?;
        out.write_all(&[
            match e.arm {
                Arm::One => 1u8,
                Arm::Two => 2,
            },
            match e.outcome {
                Outcome::Pass => 0u8,
                Outcome::Reject => 1,
            },
            match e.origin {
                Origin::Pair => 0u8,
                Origin::Accidental => 1,
            },
        ])?;
        out.write_all(&e.time_ns.to_le_bytes())?;
    }
    Ok(())
}

/// Read a stream written by `write_events_binary`.
pub fn read_events_binary<R: Read>(input: &mut R) -> Result<EventStream, MonteCarloError> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != EVENTS_BINARY_MAGIC {
        return Err(MonteCarloError::Parse("bad magic".into()));
    }
    let mut buf2 = [0u8; 2];
    input.read_exact(&mut buf2)?;
    let version = u16::from_le_bytes(buf2);
    if version != EVENTS_BINARY_VERSION {
        return Err(MonteCarloError::Parse(format!(
            "unsupported version {version}"
        )));
    }
    let mut buf8 = [0u8; 8];
    input.read_exact(&mut buf8)?;
    let count = u64::from_le_bytes(buf8);
    let mut events = Vec::with_capacity(count.min(1 << 24) as usize);
    for _ in 0..count {
        let mut buf4 = [0u8; 4];
        input.read_exact(&mut buf4)?;
        let len = u32::from_le_bytes(buf4);
        if len != 11 {
            return Err(MonteCarloError::Parse(format!(
                "unexpected record length {len}"
            )));
        }
        let mut tags = [0u8; 3];
        input.read_exact(&mut tags)?;
        input.read_exact(&mut buf8)?;
        let arm = match tags[0] {
            1 => Arm::One,
            2 => Arm::Two,
            other => return Err(MonteCarloError::Parse(format!("bad arm byte {other}"))),
        };
        let outcome = match tags[1] {
            0 => Outcome::Pass,
            1 => Outcome::Reject,
            other => return Err(MonteCarloError::Parse(format!("bad outcome byte {other}"))),
        };
        let origin = match tags[2] {
            0 => Origin::Pair,
            1 => Origin::Accidental,
            other => return Err(MonteCarloError::Parse(format!("bad origin byte {other}"))),
        };
        events.push(DetectionEvent {
            arm,
            time_ns: f64::from_le_bytes(buf8),
            outcome,
            origin,
            pair: None,
        });
    }
    Ok(EventStream::from_events(events))
}
