use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use uwb_detect::acr::ZMatrix;
use uwb_detect::detectors::{msdd_sd, DetectorOptions, InitialRadius};
use uwb_detect::harness::{run_sweep, selftest, write_csv, ExperimentConfig};
use uwb_detect::rng::rng_from_seed;
use uwb_detect::Error;

#[derive(Parser)]
#[command(
    name = "uwb-detect",
    version,
    about = "Differential detectors for UWB autocorrelation receivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a BER/complexity sweep and write CSV.
    Sweep(SweepArgs),
    /// Dump the sphere-decoder trace of one block.
    Trace(TraceArgs),
    /// Run the oracle-equivalence and closed-form complexity checks.
    Selftest {
        #[arg(long, default_value_t = 2000)]
        instances: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Config file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for per-point complexity histograms.
    #[arg(long)]
    histograms: Option<PathBuf>,
    /// Override any config key, e.g. `--set n_symbols=15`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    snr_db_list: Option<String>,
    #[arg(long)]
    n_symbols: Option<String>,
    #[arg(long)]
    l_branches: Option<String>,
    #[arg(long)]
    detectors: Option<String>,
    #[arg(long)]
    channel: Option<String>,
    #[arg(long)]
    ti_seconds: Option<String>,
    #[arg(long)]
    t_seconds: Option<String>,
    #[arg(long)]
    min_errors: Option<String>,
    #[arg(long)]
    max_bursts: Option<String>,
}

#[derive(Args)]
struct TraceArgs {
    /// Matrix file as written by `ZMatrix::to_text`.
    #[arg(long, conflicts_with = "order")]
    matrix: Option<PathBuf>,
    /// Order of a random standard-normal block.
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_sort: bool,
    #[arg(long)]
    no_stop: bool,
    #[arg(long)]
    dd_init: bool,
}

fn sweep(args: SweepArgs) -> Result<(), Error> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let flags = [
        ("snr_db_list", &args.snr_db_list),
        ("n_symbols", &args.n_symbols),
        ("l_branches", &args.l_branches),
        ("detectors", &args.detectors),
        ("channel", &args.channel),
        ("ti_seconds", &args.ti_seconds),
        ("t_seconds", &args.t_seconds),
        ("min_errors", &args.min_errors),
        ("max_bursts", &args.max_bursts),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    for kv in &args.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected KEY=VALUE, got {kv}")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    cfg.seed = args.seed;
    let out = run_sweep(&cfg)?;
    match &args.out {
        Some(path) => uwb_detect::harness::emit_csv(&out.records, path)?,
        None => write_csv(&out.records, std::io::stdout().lock())?,
    }
    if let Some(dir) = &args.histograms {
        fs::create_dir_all(dir)?;
        for p in &out.complexity {
            let name = format!("{}_L{}_snr{}.csv", p.report.detector, p.l, p.snr_db);
            let mut f = std::io::BufWriter::new(fs::File::create(dir.join(name))?);
            p.report.write_histogram_csv(&mut f)?;
            f.flush()?;
        }
    }
    Ok(())
}

fn trace(args: TraceArgs) -> Result<(), Error> {
    let z = match &args.matrix {
        Some(path) => ZMatrix::parse(&fs::read_to_string(path)?)?,
        None => {
            if args.order < 2 {
                return Err(Error::InvalidParameter("order must be at least 2".into()));
            }
            ZMatrix::random(args.order, &mut rng_from_seed(args.seed))
        }
    };
    let opts = DetectorOptions {
        use_stopping_radius: !args.no_stop,
        initial_radius: if args.dd_init {
            InitialRadius::DdMetric
        } else {
            InitialRadius::Infinite
        },
        sort_input: !args.no_sort,
    };
    let t = msdd_sd(&z, &opts);
    println!("order          {}", z.order());
    println!("decision_order {:?}", t.order.as_slice());
    println!("initial_radius {}", t.initial_radius);
    println!("stop_radius    {}", t.stopping_radius);
    println!(
        "first_leaf     {}",
        t.first_leaf
            .as_ref()
            .map_or("-".to_string(), |s| s.to_string())
    );
    println!("best_sequence  {}", t.best_sequence);
    println!("best_metric    {}", t.best_metric);
    println!("nodes          {}", t.nodes_visited);
    println!("leaves         {}", t.leaves);
    println!("terminated_by  {:?}", t.terminated_by);
    println!(
        "adds           {} (sort {}, init {}, search {})",
        t.adds, t.sort_adds, t.init_adds, t.search_adds
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Trace(args) => trace(args),
        Command::Selftest { instances, seed } => match selftest(instances, seed) {
            Ok(results) => {
                let mut ok = true;
                for r in &results {
                    let tag = if r.passed() { "PASS" } else { "FAIL" };
                    println!(
                        "{tag} {} ({}/{} cases)",
                        r.name,
                        r.cases - r.failures,
                        r.cases
                    );
                    ok &= r.passed();
                }
                if !ok {
                    return ExitCode::FAILURE;
                }
                Ok(())
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::UnknownDetector { .. }
                | Error::InvalidParameter(_)
                | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
