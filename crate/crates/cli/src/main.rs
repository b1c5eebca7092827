//! Command-line front end: runs the simulation scenarios end to end and
//! emits plot-ready CSV tables.
//!
//! Exit codes: 0 success, 2 usage/configuration error, 3 numerical failure.

// Flag guards use `!(x > 0.0)` on purpose: the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;

use biphoton::coherence::{
    zeta_cosinusoidal, zeta_numeric, zeta_sinc2, zeta_triangular, zeta_unmodulated,
};
use biphoton::entanglement::{
    build_state, chsh_fixed, fit_imperfections, fit_imperfections_constrained,
    CalibrationTargets, ChshAngles, ImperfectionModel,
};
use biphoton::interference::{beat_period_windows, chsh_at_window};
use biphoton::montecarlo::{
    coincidence_analysis, estimate_chsh, estimate_zeta, run_scenario, write_events_binary,
    write_events_csv, EventStream, RunConfig,
};
use biphoton::tomography::{
    mle_reconstruct, standard_settings, write_records_csv, CountRecord, Projector,
};
use biphoton::units::rad_per_ns_from_mhz;
use biphoton::wavepacket::{BiphotonWavepacket, ModulationSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "biphoton",
    about = "Two-photon interference, entanglement revival and CHSH simulation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence and fidelity of each modulation scheme over a theta grid.
    ZetaSweep(ZetaSweepArgs),
    /// Ideal and imperfection-calibrated concurrence vs. frequency difference.
    ConcurrenceVsFrequency(ConcurrenceArgs),
    /// CHSH |S| vs. coincidence window, unmodulated and modulated.
    ChshWindow(ChshWindowArgs),
    /// Event-level simulation: detection streams plus coincidence analysis.
    Montecarlo(MontecarloArgs),
    /// Fit the imperfection model to target concurrence and purity.
    FitImperfections(FitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModulationArg {
    None,
    Triangular,
    Cosinusoidal,
    Sinc2,
}

#[derive(Args)]
struct ZetaSweepArgs {
    /// Smallest theta = delta_omega * tau0 on the grid.
    #[arg(long, default_value_t = 1e-3)]
    theta_min: f64,
    /// Largest theta on the grid.
    #[arg(long, default_value_t = 1e3)]
    theta_max: f64,
    /// Number of grid points (log-spaced unless --linear).
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Space the grid linearly instead of logarithmically.
    #[arg(long)]
    linear: bool,
    /// Comb lines of the periodic sinc^2 column.
    #[arg(long, default_value_t = 100)]
    sinc_terms: u32,
    /// Output CSV path ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ConcurrenceArgs {
    /// Comma-separated frequency differences in MHz.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,10,20,30,40,50,60,70,80,90,100"
    )]
    freq_mhz: Vec<f64>,
    /// Symmetric wavepacket intensity decay constant (ns).
    #[arg(long, default_value_t = 22.5)]
    tau0_ns: f64,
    /// Imperfection parameter file (defaults to the built-in calibration).
    #[arg(long)]
    imperfections: Option<PathBuf>,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ChshWindowArgs {
    /// Frequency difference in MHz.
    #[arg(long)]
    freq_mhz: f64,
    /// Modulation applied in the modulated columns.
    #[arg(long, value_enum, default_value_t = ModulationArg::Cosinusoidal)]
    modulation: ModulationArg,
    #[arg(long, default_value_t = 100)]
    sinc_terms: u32,
    #[arg(long, default_value_t = 22.5)]
    tau0_ns: f64,
    /// Imperfection parameter file (defaults to the built-in calibration).
    #[arg(long)]
    imperfections: Option<PathBuf>,
    /// Smallest window (ns).
    #[arg(long, default_value_t = 2.0)]
    window_min: f64,
    /// Largest window (ns).
    #[arg(long, default_value_t = 100.0)]
    window_max: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Sample at whole beat periods instead of a uniform grid; there the
    /// ideal modulated S is exactly flat.
    #[arg(long)]
    snap_periods: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct MontecarloArgs {
    /// Scenario configuration file; replaces the scenario flags below.
    #[arg(long, conflicts_with_all = ["freq_mhz", "modulation", "pairs", "seed", "window_ns"])]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 50.0)]
    freq_mhz: f64,
    #[arg(long, value_enum, default_value_t = ModulationArg::None)]
    modulation: ModulationArg,
    #[arg(long, default_value_t = 100)]
    sinc_terms: u32,
    #[arg(long, default_value_t = 22.5)]
    tau0_ns: f64,
    /// Generated pairs per analyzer setting.
    #[arg(long, default_value_t = 1_000_000)]
    pairs: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Coincidence window half-width (ns).
    #[arg(long, default_value_t = 100.0)]
    window_ns: f64,
    /// Pair generation rate (1/ns).
    #[arg(long, default_value_t = 1e-6)]
    pair_rate: f64,
    /// Per-arm background singles rate (1/ns).
    #[arg(long, default_value_t = 0.0)]
    accidental_rate: f64,
    /// Output directory for event files and analysis tables.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    /// Target degenerate concurrence.
    #[arg(long)]
    target_c: f64,
    /// Target degenerate purity.
    #[arg(long)]
    target_purity: f64,
    /// Lower bound of the nondegenerate unmodulated purity window.
    #[arg(long, requires = "nondegenerate_purity_hi")]
    nondegenerate_purity_lo: Option<f64>,
    /// Upper bound of the nondegenerate unmodulated purity window.
    #[arg(long, requires = "nondegenerate_purity_lo")]
    nondegenerate_purity_hi: Option<f64>,
    /// Frequencies (MHz) at which the nondegenerate constraint applies.
    #[arg(long, value_delimiter = ',', default_value = "50,100")]
    nondegenerate_freqs_mhz: Vec<f64>,
    /// Tolerance on the degenerate concurrence target.
    #[arg(long, default_value_t = 0.02)]
    concurrence_tolerance: f64,
    #[arg(long, default_value_t = 22.5)]
    tau0_ns: f64,
    /// Output imperfection parameter file ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn numerical(e: impl std::fmt::Display) -> Self {
        CliError::Numerical(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ZetaSweep(args) => cmd_zeta_sweep(args),
        Command::ConcurrenceVsFrequency(args) => cmd_concurrence_vs_frequency(args),
        Command::ChshWindow(args) => cmd_chsh_window(args),
        Command::Montecarlo(args) => cmd_montecarlo(args),
        Command::FitImperfections(args) => cmd_fit_imperfections(args),
    };
    match result {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    }
}

/// Write to a file or stdout when the path is "-".
fn write_output(path: &str, contents: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{contents}");
        std::io::stdout().flush().map_err(CliError::numerical)?;
        Ok(())
    } else {
        fs::write(path, contents)
            .map_err(|e| CliError::Numerical(format!("cannot write {path}: {e}")))
    }
}

fn build_modulation(
    kind: ModulationArg,
    delta_omega: f64,
    sinc_terms: u32,
) -> Result<ModulationSpec, CliError> {
    match kind {
        ModulationArg::None => Ok(ModulationSpec::none()),
        ModulationArg::Triangular => {
            ModulationSpec::square_wave_matched(delta_omega).map_err(|_| {
                CliError::Usage(
                    "matched square-wave modulation needs a nonzero frequency difference"
                        .into(),
                )
            })
        }
        ModulationArg::Cosinusoidal => Ok(ModulationSpec::cosinusoidal()),
        ModulationArg::Sinc2 => {
            ModulationSpec::periodic_sinc2(sinc_terms).map_err(CliError::usage)
        }
    }
}

fn load_imperfections(path: Option<&Path>) -> Result<ImperfectionModel, CliError> {
    match path {
        None => Ok(ImperfectionModel::reference_calibration()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            config::imperfections_from_str(&text).map_err(CliError::usage)
        }
    }
}

fn cmd_zeta_sweep(args: ZetaSweepArgs) -> Result<(), CliError> {
    if !(args.theta_min >= 0.0)
        || !(args.theta_max > args.theta_min)
        || args.points < 1
        || (!args.linear && args.theta_min <= 0.0)
    {
        return Err(CliError::Usage(format!(
            "invalid theta range [{}, {}] with {} points",
            args.theta_min, args.theta_max, args.points
        )));
    }
    let thetas: Vec<f64> = if args.points == 1 {
        vec![args.theta_min]
    } else if args.linear {
        (0..args.points)
            .map(|k| {
                args.theta_min
                    + (args.theta_max - args.theta_min) * k as f64 / (args.points - 1) as f64
            })
            .collect()
    } else {
        (0..args.points)
            .map(|k| {
                args.theta_min
                    * (args.theta_max / args.theta_min).powf(k as f64 / (args.points - 1) as f64)
            })
            .collect()
    };
    let mut out = String::from("# schema: biphoton.zeta_sweep.v1\n");
    out.push_str(
        "theta,zeta_unmodulated,zeta_triangular,zeta_cosinusoidal,zeta_sinc2,fidelity\n",
    );
    for theta in thetas {
        let sinc = zeta_sinc2(theta, args.sinc_terms).map_err(CliError::usage)?;
        let unmod = zeta_unmodulated(theta);
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            theta,
            unmod,
            zeta_triangular(theta),
            zeta_cosinusoidal(theta),
            sinc,
            2.0 * unmod,
        ));
    }
    write_output(&args.out, &out)
}

fn cmd_concurrence_vs_frequency(args: ConcurrenceArgs) -> Result<(), CliError> {
    if !(args.tau0_ns > 0.0) {
        return Err(CliError::Usage(format!("bad tau0 {}", args.tau0_ns)));
    }
    let model = load_imperfections(args.imperfections.as_deref())?;
    let concurrence_of = |zeta: f64, imp: Option<&ImperfectionModel>| -> Result<f64, CliError> {
        Ok(build_state(Complex64::new(zeta, 0.0), imp)
            .map_err(CliError::numerical)?
            .concurrence())
    };
    let mut out = String::from("# schema: biphoton.concurrence_vs_frequency.v1\n");
    out.push_str(
        "freq_mhz,theta,c_ideal_unmodulated,c_ideal_triangular,c_ideal_cosinusoidal,\
         c_calibrated_unmodulated,c_calibrated_triangular,c_calibrated_cosinusoidal\n",
    );
    for &mhz in &args.freq_mhz {
        if mhz < 0.0 {
            return Err(CliError::Usage(format!("negative frequency {mhz} MHz")));
        }
        let theta = rad_per_ns_from_mhz(mhz) * args.tau0_ns;
        let zetas = [
            zeta_unmodulated(theta),
            zeta_triangular(theta),
            zeta_cosinusoidal(theta),
        ];
        out.push_str(&format!("{mhz},{theta}"));
        for z in zetas {
            out.push_str(&format!(",{}", concurrence_of(z, None)?));
        }
        for z in zetas {
            out.push_str(&format!(",{}", concurrence_of(z, Some(&model))?));
        }
        out.push('\n');
    }
    write_output(&args.out, &out)
}

fn cmd_chsh_window(args: ChshWindowArgs) -> Result<(), CliError> {
    if !(args.tau0_ns > 0.0) || args.freq_mhz < 0.0 {
        return Err(CliError::Usage("bad wavepacket parameters".into()));
    }
    if !(args.window_max > 0.0) || !(args.window_min > 0.0) || args.window_max < args.window_min
    {
        return Err(CliError::Usage(format!(
            "invalid window range [{}, {}]",
            args.window_min, args.window_max
        )));
    }
    let dw = rad_per_ns_from_mhz(args.freq_mhz);
    let wp = BiphotonWavepacket::symmetric(args.tau0_ns, dw).map_err(CliError::usage)?;
    let modulation = build_modulation(args.modulation, dw, args.sinc_terms)?;
    let model = load_imperfections(args.imperfections.as_deref())?;
    let angles = ChshAngles::default();

    let windows: Vec<f64> = if args.snap_periods {
        let w = beat_period_windows(dw, args.window_max);
        if w.is_empty() {
            return Err(CliError::Usage(
                "--snap-periods needs a nonzero frequency difference and a window \
                 range containing at least one beat period"
                    .into(),
            ));
        }
        w
    } else {
        if args.points < 1 {
            return Err(CliError::Usage("need at least one window point".into()));
        }
        (0..args.points)
            .map(|k| {
                args.window_min
                    + (args.window_max - args.window_min) * k as f64
                        / (args.points.max(2) - 1) as f64
            })
            .collect()
    };

    let mut out = String::from("# schema: biphoton.chsh_window.v1\n");
    out.push_str("window_ns,s_unmodulated,s_modulated,s_ideal\n");
    for &w in &windows {
        let s_unmod = chsh_at_window(&wp, &ModulationSpec::none(), Some(&model), w, &angles)
            .map_err(CliError::numerical)?;
        let s_mod = chsh_at_window(&wp, &modulation, Some(&model), w, &angles)
            .map_err(CliError::numerical)?;
        let s_ideal =
            chsh_at_window(&wp, &modulation, None, w, &angles).map_err(CliError::numerical)?;
        out.push_str(&format!("{w},{s_unmod},{s_mod},{s_ideal}\n"));
    }
    write_output(&args.out, &out)
}

struct Scenario {
    wp: BiphotonWavepacket,
    modulation: ModulationSpec,
    pairs: u64,
    seed: u64,
    window: f64,
    pair_rate: f64,
    accidental_rate: f64,
}

fn scenario_from_args(args: &MontecarloArgs) -> Result<Scenario, CliError> {
    match &args.config {
        None => {
            let dw = rad_per_ns_from_mhz(args.freq_mhz);
            Ok(Scenario {
                wp: BiphotonWavepacket::symmetric(args.tau0_ns, dw).map_err(CliError::usage)?,
                modulation: build_modulation(args.modulation, dw, args.sinc_terms)?,
                pairs: args.pairs,
                seed: args.seed,
                window: args.window_ns,
                pair_rate: args.pair_rate,
                accidental_rate: args.accidental_rate,
            })
        }
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let mut doc = config::Document::parse(&text).map_err(CliError::usage)?;
            let section = "scenario";
            let freq_mhz = doc
                .get_f64(section, "freq_mhz")
                .map_err(CliError::usage)?
                .unwrap_or(args.freq_mhz);
            let tau0 = doc
                .get_f64(section, "tau0_ns")
                .map_err(CliError::usage)?
                .unwrap_or(args.tau0_ns);
            let sinc_terms = doc
                .get_u64(section, "sinc_terms")
                .map_err(CliError::usage)?
                .unwrap_or(args.sinc_terms as u64) as u32;
            let modulation_name = doc
                .get(section, "modulation")
                .unwrap_or_else(|| "none".to_string());
            let dw = rad_per_ns_from_mhz(freq_mhz);
            let kind = match modulation_name.as_str() {
                "none" => ModulationArg::None,
                "triangular" => ModulationArg::Triangular,
                "cosinusoidal" => ModulationArg::Cosinusoidal,
                "sinc2" => ModulationArg::Sinc2,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown modulation {other:?} in {}",
                        path.display()
                    )))
                }
            };
            let scenario = Scenario {
                wp: BiphotonWavepacket::symmetric(tau0, dw).map_err(CliError::usage)?,
                modulation: build_modulation(kind, dw, sinc_terms)?,
                pairs: doc
                    .get_u64(section, "pairs")
                    .map_err(CliError::usage)?
                    .unwrap_or(args.pairs),
                seed: doc
                    .get_u64(section, "seed")
                    .map_err(CliError::usage)?
                    .unwrap_or(args.seed),
                window: doc
                    .get_f64(section, "window_ns")
                    .map_err(CliError::usage)?
                    .unwrap_or(args.window_ns),
                pair_rate: doc
                    .get_f64(section, "pair_rate")
                    .map_err(CliError::usage)?
                    .unwrap_or(args.pair_rate),
                accidental_rate: doc
                    .get_f64(section, "accidental_rate")
                    .map_err(CliError::usage)?
                    .unwrap_or(args.accidental_rate),
            };
            doc.reject_unknown().map_err(CliError::usage)?;
            Ok(scenario)
        }
    }
}

fn cmd_montecarlo(args: MontecarloArgs) -> Result<(), CliError> {
    let scenario = scenario_from_args(&args)?;
    if scenario.pairs == 0 {
        return Err(CliError::Usage("need at least one pair".into()));
    }
    if !(scenario.window > 0.0) || !(scenario.pair_rate > 0.0) {
        return Err(CliError::Usage(
            "window and pair_rate must be positive".into(),
        ));
    }
    fs::create_dir_all(&args.out_dir).map_err(|e| {
        CliError::Usage(format!("cannot create {}: {e}", args.out_dir.display()))
    })?;

    let duration = scenario.pairs as f64 / scenario.pair_rate;
    let angles = ChshAngles::default();
    let run_cfg = |a: Projector, b: Projector, seed: u64| RunConfig {
        pair_rate: scenario.pair_rate,
        duration,
        wavepacket: scenario.wp,
        modulation: scenario.modulation,
        analyzer_a: a,
        analyzer_b: b,
        accidental_rate: scenario.accidental_rate,
        seed,
    };

    // Four CHSH setting streams, serialized to CSV and binary.
    let setting_names = ["ab", "ab_prime", "a_prime_b", "a_prime_b_prime"];
    let mut streams = Vec::new();
    for (k, (a, b)) in angles.setting_pairs().iter().enumerate() {
        let cfg = run_cfg(
            Projector::new(*a, 0.0),
            Projector::new(*b, 0.0),
            scenario.seed.wrapping_add(k as u64),
        );
        let stream = run_scenario(&cfg).map_err(CliError::numerical)?;
        let base = args.out_dir.join(format!("events_{}", setting_names[k]));
        let mut csv = Vec::new();
        write_events_csv(&stream, &mut csv).map_err(CliError::numerical)?;
        fs::write(base.with_extension("csv"), csv).map_err(CliError::numerical)?;
        let mut bin = Vec::new();
        write_events_binary(&stream, &mut bin).map_err(CliError::numerical)?;
        fs::write(base.with_extension("bin"), bin).map_err(CliError::numerical)?;
        streams.push(stream);
    }
    let streams: [EventStream; 4] = streams.try_into().expect("four settings");
    let chsh = estimate_chsh(&streams, scenario.window).map_err(CliError::numerical)?;

    // Coherence estimate from a (D, D) stream.
    let dd_cfg = run_cfg(
        Projector::diagonal(),
        Projector::diagonal(),
        scenario.seed.wrapping_add(17),
    );
    let dd_stream = run_scenario(&dd_cfg).map_err(CliError::numerical)?;
    let zeta_est = estimate_zeta(&dd_stream, scenario.window, scenario.wp.delta_omega());

    // Tomography counts at the 16 standard settings and the reconstructed
    // concurrence.
    let tomo_pairs = (scenario.pairs / 4).max(1);
    let mut records = Vec::new();
    for (k, s) in standard_settings().iter().enumerate() {
        let cfg = RunConfig {
            duration: tomo_pairs as f64 / scenario.pair_rate,
            ..run_cfg(
                s.projector_a,
                s.projector_b,
                scenario.seed.wrapping_add(100 + k as u64),
            )
        };
        let stream = run_scenario(&cfg).map_err(CliError::numerical)?;
        let counts = coincidence_analysis(&stream, scenario.window);
        records.push(CountRecord {
            setting_id: s.id.clone(),
            projector_angles: [
                s.projector_a.theta,
                s.projector_a.phi,
                s.projector_b.theta,
                s.projector_b.phi,
            ],
            counts: counts.pass_pass,
            integration: counts.total(),
        });
    }
    let mut counts_csv = Vec::new();
    write_records_csv(&records, &mut counts_csv).map_err(CliError::numerical)?;
    fs::write(args.out_dir.join("tomography_counts.csv"), counts_csv)
        .map_err(CliError::numerical)?;
    let mle = mle_reconstruct(&records).map_err(CliError::numerical)?;

    // Analytic references at the same window.
    let zeta_w = zeta_numeric(&scenario.wp, &scenario.modulation, scenario.window)
        .map_err(CliError::numerical)?;
    let reference = build_state(zeta_w, None).map_err(CliError::numerical)?;
    let s_analytic = chsh_fixed(&reference, &angles).abs();

    let mut analysis =
        String::from("# schema: biphoton.mc_analysis.v1\nmetric,value,std_error\n");
    analysis.push_str(&format!("s_estimate,{},{}\n", chsh.s.abs(), chsh.std_error));
    analysis.push_str(&format!("s_analytic,{s_analytic},\n"));
    if let Some((z, se)) = zeta_est {
        analysis.push_str(&format!("zeta_estimate,{z},{se}\n"));
    }
    analysis.push_str(&format!("zeta_analytic,{},\n", zeta_w.re));
    analysis.push_str(&format!(
        "concurrence_tomography,{},\n",
        mle.state.concurrence()
    ));
    analysis.push_str(&format!(
        "concurrence_analytic,{},\n",
        reference.concurrence()
    ));
    for (k, counts) in chsh.counts.iter().enumerate() {
        analysis.push_str(&format!(
            "coincidences_{},{},\n",
            setting_names[k],
            counts.total()
        ));
    }
    fs::write(args.out_dir.join("analysis.csv"), analysis).map_err(CliError::numerical)?;
    println!(
        "wrote {} (|S| = {:.4} +- {:.4}, tomography C = {:.4})",
        args.out_dir.display(),
        chsh.s.abs(),
        chsh.std_error,
        mle.state.concurrence()
    );
    Ok(())
}

fn cmd_fit_imperfections(args: FitArgs) -> Result<(), CliError> {
    if !(args.tau0_ns > 0.0) {
        return Err(CliError::Usage(format!("bad tau0 {}", args.tau0_ns)));
    }
    let targets = CalibrationTargets {
        concurrence: args.target_c,
        purity: args.target_purity,
    };
    let model = match (args.nondegenerate_purity_lo, args.nondegenerate_purity_hi) {
        (Some(lo), Some(hi)) => {
            if !(hi > lo) {
                return Err(CliError::Usage(format!(
                    "empty nondegenerate purity window ({lo}, {hi})"
                )));
            }
            let thetas: Vec<f64> = args
                .nondegenerate_freqs_mhz
                .iter()
                .map(|&mhz| rad_per_ns_from_mhz(mhz) * args.tau0_ns)
                .collect();
            fit_imperfections_constrained(&targets, args.concurrence_tolerance, (lo, hi), &thetas)
                .map_err(CliError::numerical)?
        }
        _ => fit_imperfections(&targets).map_err(CliError::numerical)?,
    };
    let achieved =
        build_state(Complex64::new(0.5, 0.0), Some(&model)).map_err(CliError::numerical)?;
    let mut out = config::imperfections_to_string(&model);
    out.push_str(&format!(
        "# achieved degenerate concurrence = {:.6}, purity = {:.6}\n",
        achieved.concurrence(),
        achieved.purity()
    ));
    write_output(&args.out, &out)
}
