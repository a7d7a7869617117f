use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use landslide_cli::{Config, Experiment, ExperimentReport};

#[derive(Parser, Debug)]
#[command(name = "landslide", version, about = "Run landslide flow experiments and write their reports")]
struct Args {
    #[arg(value_enum)]
    experiment: Experiment,
    /// TOML configuration; every key is optional.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Global seed, overriding the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for report.json, timing.json and the CSV tables.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Sample count for the sampled experiments.
    #[arg(long)]
    samples: Option<usize>,
    /// Make non-gating checks gating.
    #[arg(long)]
    strict: bool,
}

fn threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LANDSLIDE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("LANDSLIDE_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("LANDSLIDE_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut cfg = match &args.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: cannot read config {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Config::default(),
    };
    if let Some(n) = args.samples {
        if n == 0 {
            eprintln!("error: --samples must be positive");
            return ExitCode::from(2);
        }
        cfg = cfg.with_samples(n);
    }
    let seed = args.seed.unwrap_or(cfg.seed);
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        eprintln!("error: cannot create {}: {e}", args.out.display());
        return ExitCode::from(2);
    }

    let start = Instant::now();
    let outcome = match args.experiment.run(&cfg, seed) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {} failed: {e}", args.experiment.name());
            return ExitCode::from(1);
        }
    };
    let wall = start.elapsed().as_secs_f64();

    let report = ExperimentReport::new(args.experiment.name(), seed, args.strict, args.experiment.config_snapshot(&cfg), outcome.checks);
    let written = report.write(&args.out).and_then(|_| {
        for t in &outcome.tables {
            t.write_csv(&args.out)?;
        }
        let timing = serde_json::json!({ "experiment": args.experiment.name(), "wall_seconds": wall });
        std::fs::write(args.out.join("timing.json"), format!("{timing}\n"))?;
        Ok(())
    });
    if let Err(e) = written {
        eprintln!("error: cannot write reports: {e}");
        return ExitCode::from(2);
    }

    for c in &report.checks {
        let mark = if c.pass { "ok" } else if c.gating || report.strict { "FAIL" } else { "fail (non-gating)" };
        let rel = match c.relation {
            landslide_cli::report::Relation::AtMost => "<=",
            landslide_cli::report::Relation::AtLeast => ">=",
        };
        println!("{:<32} {:>12.4e} {rel} {:<10.3e} {mark}", c.name, c.value, c.tolerance);
    }
    println!("{}: {} ({wall:.2} s)", report.experiment, if report.pass { "pass" } else { "FAIL" });
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
