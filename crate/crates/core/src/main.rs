use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use resonance::continuation::SolverConfig;
use resonance::exterior::{raag_classification, raag_path_pair, AnyPair, Membership, PairFile};
use resonance::numeric::Rational;
use resonance::p1::{cone_dimension_table, cross_check, strata_report, SplitBundle};
use resonance::report::Report;
use resonance::rng::stream;
use resonance::section::{
    degenerate_pair, duality_experiment, random_rational_pair, solve_finite_section, SectionConfig,
    SectionReport,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_DEGENERATE: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;

/// Resonance loci of linear sections of Grassmannians.
///
/// Exit codes: 0 success, 1 usage or input error, 2 degeneracy detected (or
/// a failed consistency check), 3 negative membership query.
#[derive(Parser, Debug)]
#[command(name = "resonance", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Step tolerance while tracking paths.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_path: f64,
    /// Newton tolerance at path endpoints.
    #[arg(long, global = true, default_value_t = 1e-11)]
    tol_final: f64,
    /// Relative distance under which two solutions are merged.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_dedup: f64,
    /// Relative singular-value cutoff for floating rank decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_rank: f64,
    /// Scaled residual accepted on the full quadric system.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_residual: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Leave timing out of the report so reruns are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Suppress the summary on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve Gr₂(V∨) ∩ ℙK⊥ for a pair whose section is expected finite.
    Solve(SolveArgs),
    /// Test whether a point [a] ∈ ℙV∨ lies in the resonance.
    Membership(MembershipArgs),
    /// Compare transversality on both sides of the duality.
    Duality(DualityArgs),
    /// Split bundles O(a) ⊕ O(b) on the projective line.
    P1(P1Args),
    /// Path-graph pair: rank test against the coordinate-hyperplane description.
    Raag(RaagArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Pair JSON file: {"n": .., "field": "rational"|"complex", "K": [[..], ..]}.
    #[arg(long, conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Draw a random rational pair instead of reading one.
    #[arg(long, requires_all = ["n", "dim_k"])]
    random: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dim_k: Option<usize>,
    /// With --random: build K around a tangent plane at a decomposable point.
    #[arg(long, requires = "random")]
    degenerate: bool,
    /// Square-down attempts pooled while points are missing.
    #[arg(long, default_value_t = 3)]
    attempts: usize,
}

#[derive(Args, Debug)]
struct MembershipArgs {
    #[arg(long, conflicts_with = "raag", required_unless_present = "raag")]
    input: Option<PathBuf>,
    /// Use the path-graph pair on this many vertices.
    #[arg(long)]
    raag: Option<usize>,
    /// Point as a JSON array, e.g. '[1, 0, "1/2", 1]'.
    #[arg(long)]
    point: String,
}

#[derive(Args, Debug)]
struct DualityArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    dim_k: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long)]
    degenerate: bool,
}

#[derive(Args, Debug)]
struct P1Args {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[command(subcommand)]
    command: P1Command,
}

#[derive(Subcommand, Debug)]
enum P1Command {
    /// Histogram of computed strata for sections drawn from each stratum.
    Strata {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Rank test on the determinantal pair against the gcd test.
    Crosscheck {
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Jacobian ranks of the stratum parametrizations.
    Dims {
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct RaagArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    points: usize,
}

#[derive(Serialize)]
struct SolveResult {
    pair: PairFile,
    section: SectionReport,
}

#[derive(Serialize)]
struct MembershipResult {
    point: Value,
    #[serde(flatten)]
    membership: Membership<Value>,
}

struct Run {
    common: Common,
    config: SectionConfig,
    started: Instant,
}

impl Run {
    fn emit<T: Serialize>(&self, command: &str, result: T) -> Result<(), String> {
        let elapsed = (!self.common.no_timing).then(|| self.started.elapsed().as_secs_f64());
        let json = Report::new(command, self.common.seed, &self.config, elapsed, result).to_json();
        match &self.common.output {
            Some(path) => std::fs::write(path, json + "\n").map_err(|e| format!("{}: {e}", path.display())),
            None => {
                use std::io::Write;
                match writeln!(std::io::stdout().lock(), "{json}") {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                    _ => Ok(()),
                }
            }
        }
    }

    fn say(&self, msg: &str) {
        if !self.common.quiet {
            eprintln!("{msg}");
        }
    }
}

fn read_pair(path: &PathBuf) -> Result<AnyPair, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    AnyPair::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_solve(run: &Run, args: &SolveArgs) -> Result<u8, String> {
    let config = SectionConfig { attempts: args.attempts, ..run.config.clone() };
    let pair = match (&args.input, args.random) {
        (Some(path), _) => read_pair(path)?,
        (None, true) => {
            let (n, dim_k) = (args.n.unwrap(), args.dim_k.unwrap());
            let mut rng = stream(run.common.seed, 0);
            let p = if args.degenerate {
                degenerate_pair(n, dim_k, &mut rng).map(|d| d.pair)
            } else {
                random_rational_pair(n, dim_k, &mut rng)
            };
            AnyPair::Exact(p.map_err(|e| e.to_string())?)
        }
        (None, false) => return Err("solve needs --input or --random".into()),
    };
    let section = match &pair {
        AnyPair::Exact(p) => solve_finite_section(p, &config),
        AnyPair::Float(p) => solve_finite_section(p, &config),
    }
    .map_err(|e| e.to_string())?;
    let ok = section.is_transversal();
    run.say(&format!(
        "n={} dim K={}: {} of {} points, transversal: {}, lines disjoint: {}, paths run: {}",
        section.n,
        section.dim_k,
        section.solutions.len(),
        section.expected_count,
        ok,
        section.lines_pairwise_disjoint,
        section.paths_run
    ));
    run.emit("solve", SolveResult { pair: pair.to_file(), section })?;
    Ok(if ok { EXIT_OK } else { EXIT_DEGENERATE })
}

fn cmd_membership(run: &Run, args: &MembershipArgs) -> Result<u8, String> {
    let pair = match (&args.input, args.raag) {
        (Some(path), _) => read_pair(path)?,
        (None, Some(n)) => AnyPair::Exact(raag_path_pair::<Rational>(n).map_err(|e| e.to_string())?),
        (None, None) => return Err("membership needs --input or --raag".into()),
    };
    let point: Value = serde_json::from_str(&args.point).map_err(|e| format!("--point: {e}"))?;
    let membership = pair.is_resonant_json(&point, run.config.rank_tol).map_err(|e| e.to_string())?;
    let resonant = membership.resonant;
    run.say(&match &membership.witness {
        Some(w) => format!("resonant (rank {}), witness {w}", membership.rank),
        None => format!("not resonant (rank {})", membership.rank),
    });
    run.emit("membership", MembershipResult { point, membership })?;
    Ok(if resonant { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_duality(run: &Run, args: &DualityArgs) -> Result<u8, String> {
    let report = duality_experiment(args.n, args.dim_k, args.trials, args.degenerate, run.common.seed, &run.config)
        .map_err(|e| e.to_string())?;
    let both = report.trials.iter().filter(|t| t.finite_transversal && t.dual_transversal).count();
    let code = if args.degenerate {
        run.say(&format!(
            "degenerate mode: {}/{} finite sides flagged degenerate",
            report.flagged_degenerate, args.trials
        ));
        if report.flagged_degenerate > 0 { EXIT_DEGENERATE } else { EXIT_OK }
    } else {
        run.say(&format!(
            "{}/{} trials agree, {}/{} transversal on both sides",
            report.agreements, args.trials, both, args.trials
        ));
        if both == args.trials { EXIT_OK } else { EXIT_DEGENERATE }
    };
    run.emit("duality", report)?;
    Ok(code)
}

fn cmd_p1(run: &Run, args: &P1Args) -> Result<u8, String> {
    let bundle = SplitBundle::new(args.a, args.b).map_err(|e| e.to_string())?;
    let seed = run.common.seed;
    match args.command {
        P1Command::Strata { count } => {
            let report = strata_report(&bundle, count, seed).map_err(|e| e.to_string())?;
            let exact = report
                .samples
                .iter()
                .all(|(d, hist)| hist.len() == 1 && hist.contains_key(d));
            run.say(&format!("strata {:?}; every sample landed in its stratum: {exact}", report.strata));
            run.emit("p1 strata", report)?;
            Ok(if exact { EXIT_OK } else { EXIT_DEGENERATE })
        }
        P1Command::Crosscheck { count } => {
            let report = cross_check(&bundle, count, seed).map_err(|e| e.to_string())?;
            let ok = report.passed();
            run.say(&format!("{}/{} agree, witness failures: {}", report.agreements, count, report.witness_failures));
            run.emit("p1 crosscheck", report)?;
            Ok(if ok { EXIT_OK } else { EXIT_DEGENERATE })
        }
        P1Command::Dims { samples } => {
            let table = cone_dimension_table(&bundle, samples, seed).map_err(|e| e.to_string())?;
            let ok = table.iter().all(|r| r.matches());
            for row in &table {
                run.say(&format!("d={} expected {} ranks {:?}", row.d, row.expected, row.ranks));
            }
            run.emit("p1 dims", table)?;
            Ok(if ok { EXIT_OK } else { EXIT_DEGENERATE })
        }
    }
}

fn cmd_raag(run: &Run, args: &RaagArgs) -> Result<u8, String> {
    let report = raag_classification(args.n, args.points, run.common.seed).map_err(|e| e.to_string())?;
    let ok = report.passed();
    run.say(&format!(
        "{} hyperplanes; {} resonant, {} not, {} mismatches",
        report.hyperplane_coordinates.len(),
        report.resonant,
        report.non_resonant,
        report.mismatches.len()
    ));
    run.emit("raag", report)?;
    Ok(if ok { EXIT_OK } else { EXIT_DEGENERATE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let c = &cli.common;
    let config = SectionConfig {
        solver: SolverConfig {
            path_tol: c.tol_path,
            final_tol: c.tol_final,
            dedup_tol: c.tol_dedup,
            seed: c.seed,
            ..SolverConfig::default()
        },
        residual_tol: c.tol_residual,
        rank_tol: c.tol_rank,
        ..SectionConfig::default()
    };
    let run = Run { common: cli.common, config, started: Instant::now() };
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(&run, a),
        Command::Membership(a) => cmd_membership(&run, a),
        Command::Duality(a) => cmd_duality(&run, a),
        Command::P1(a) => cmd_p1(&run, a),
        Command::Raag(a) => cmd_raag(&run, a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

