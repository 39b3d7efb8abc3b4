//! Thin command-line front end: parses flags (optionally over a JSON
//! config file; flags win), hands a `RunConfig` to the library and
//! prints or writes the report. Exit codes: 0 on pass, 1 when a
//! verification fails, 2 on usage errors (clap's default).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use braidq::config::RunConfig;
use braidq::report;

#[derive(Parser)]
#[command(
    name = "braidq",
    about = "Braid matrices from rank-one projectors: identities, triangularity roots, \
             L-operators, link invariants, coordinate towers",
    version
)]
struct Cli {
    /// JSON config file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Algebra family: ohat | phat.
    #[arg(long, global = true)]
    family: Option<String>,

    /// Matrix dimension N.
    #[arg(long, global = true)]
    dim: Option<usize>,

    /// q: "symbolic", a real number, "re,im", or "rootofunity:k".
    #[arg(long, global = true)]
    q: Option<String>,

    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Numeric tolerance (also via BRAIDQ_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Cap on representation dimensions N^m.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Permit complex eta (|T| <= 2 or complex T).
    #[arg(long, global = true)]
    complex_eta: bool,

    /// Emit the machine-readable JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,

    /// Write the JSON report to this path (in addition to stdout).
    #[arg(long, global = true)]
    output: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a constructed matrix (P0', R, R^{-1}, R(theta), P).
    Gen {
        /// p0prime | rhat | rhatinv | baxterized | permutation [default: p0prime]
        #[arg(long)]
        matrix: Option<String>,
        /// Spectral parameter for the Baxterized matrix.
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Verify the defining identities (exact for symbolic q).
    Verify,
    /// Solve the triangularity condition T(q) = 2 and classify roots.
    Triangular,
    /// L-operator checks.
    Lalg {
        /// rll | central | coproduct | conjugate [default: rll]
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        theta2: Option<f64>,
    },
    /// Evaluate a link invariant from a braid word.
    Invariant(InvariantArgs),
    /// Iterate a noncommutative coordinate tower.
    Tower(TowerArgs),
    /// Numeric eigenvalues of R^{+-1}.
    Spectrum,
}

#[derive(Args)]
struct InvariantArgs {
    /// Braid word: whitespace-separated signed generator indices.
    #[arg(long)]
    braid: Option<String>,
    /// Strand count [default: 2].
    #[arg(long)]
    strands: Option<usize>,
    /// Also certify the skein relation on seeded random triples.
    #[arg(long)]
    skein: bool,
    /// Also check Markov moves on seeded random words.
    #[arg(long)]
    markov: bool,
    /// Number of randomized trials.
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct TowerArgs {
    /// Cone parameter a >= 0 [default: 1].
    #[arg(long)]
    a: Option<f64>,
    /// Cone parameter b >= 0 [default: 1].
    #[arg(long)]
    b: Option<f64>,
    /// Sign of the middle coordinate [default: +1].
    #[arg(long)]
    sign: Option<i32>,
    /// Use the mirrored cone branch.
    #[arg(long)]
    mirrored: bool,
    /// Tower depth [default: 3].
    #[arg(long)]
    levels: Option<usize>,
    /// Lambda branch: plus | minus [default: plus].
    #[arg(long)]
    lambda: Option<String>,
    /// Run the SO_q(3) comparison tower instead.
    #[arg(long)]
    soq3: bool,
}

fn flags_to_config(cli: &Cli) -> RunConfig {
    let mut cfg = RunConfig {
        family: cli.family.clone(),
        dim: cli.dim,
        q: cli.q.clone(),
        seed: cli.seed,
        tolerance: cli.tol,
        dim_cap: cli.cap,
        allow_complex_eta: if cli.complex_eta { Some(true) } else { None },
        mode: if cli.json { Some("json".into()) } else { None },
        output: cli.output.clone(),
        ..Default::default()
    };
    match &cli.command {
        Command::Gen { matrix, theta } => {
            cfg.command = Some("gen".into());
            cfg.matrix = matrix.clone();
            cfg.theta = *theta;
        }
        Command::Verify => cfg.command = Some("verify".into()),
        Command::Triangular => cfg.command = Some("triangular".into()),
        Command::Lalg {
            check,
            theta,
            theta2,
        } => {
            cfg.command = Some("lalg".into());
            cfg.check = check.clone();
            cfg.theta = *theta;
            cfg.theta2 = *theta2;
        }
        Command::Invariant(a) => {
            cfg.command = Some("invariant".into());
            cfg.braid = a.braid.clone();
            cfg.strands = a.strands;
            cfg.skein = if a.skein { Some(true) } else { None };
            cfg.markov = if a.markov { Some(true) } else { None };
            cfg.trials = a.trials;
        }
        Command::Tower(t) => {
            cfg.command = Some("tower".into());
            cfg.cone_a = t.a;
            cfg.cone_b = t.b;
            cfg.cone_sign = t.sign;
            cfg.mirrored = if t.mirrored { Some(true) } else { None };
            cfg.levels = t.levels;
            cfg.lambda_branch = t.lambda.clone();
            cfg.soq3 = if t.soq3 { Some(true) } else { None };
        }
        Command::Spectrum => cfg.command = Some("spectrum".into()),
    }
    cfg
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = flags_to_config(&cli);
    let cfg = match &cli.config {
        Some(path) => match RunConfig::from_file(path) {
            Ok(file_cfg) => file_cfg.overlay(&flags),
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
        },
        None => flags,
    };
    match report::run(&cfg) {
        Ok(outcome) => {
            let json_text = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
            let text = if cfg.machine_mode() {
                &json_text
            } else {
                &outcome.human
            };
            if let Err(e) = writeln!(std::io::stdout(), "{}", text) {
                // a closed pipe (e.g. `braidq ... | head`) is not an error
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            if let Some(path) = &cfg.output {
                if let Err(e) = std::fs::write(path, json_text + "\n") {
                    eprintln!("error writing {}: {}", path, e);
                    return ExitCode::from(2);
                }
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
