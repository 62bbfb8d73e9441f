//! Command-line front end: `estimate`, `bound`, `curve`, `verify`.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hsgas::bounds::{bound_report, Mode};
use hsgas::config::RunConfig;
use hsgas::error::{Error, Result};
use hsgas::gtable::{build_gtable, GTildeTable, Source};
use hsgas::io::{self, Metadata, ReportFile, TableFile};
use hsgas::verify::{self, VerifyOptions};

const DEFAULT_TABLE: &str = "gtable.json";
const DEFAULT_REPORT: &str = "bound.json";
const DEFAULT_CURVE_ROWS: usize = 200;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "hsgas", version, about = "Analyticity bounds for the hard-sphere gas")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON file with RunConfig fields; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Dimension d.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Monte Carlo samples per k.
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    chunk_size: Option<u64>,
    #[arg(long, global = true)]
    confidence: Option<f64>,
    /// mean or conservative.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    #[arg(long, global = true)]
    search_cap: Option<f64>,
    /// Number of (a, a/C(a)) rows to emit as CSV.
    #[arg(long, global = true)]
    curve: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the g̃ table and write it as JSON.
    Estimate {
        /// Store the elapsed time in the output metadata.
        #[arg(long)]
        record_timing: bool,
    },
    /// Optimize a/C(a) for a table and write the report.
    Bound {
        /// Table produced by `estimate`.
        table: Option<PathBuf>,
        /// Path of the curve CSV (default: report path with .csv).
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// `bound` with a curve of 200 rows unless --curve says otherwise.
    Curve {
        table: Option<PathBuf>,
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Run the built-in oracle checks.
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::InvalidArgument("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    let config = resolve_config(&cli)?;
    match cli.command {
        Command::Estimate { record_timing } => cmd_estimate(config, record_timing),
        Command::Bound { table, curve_out } => cmd_bound(config, table, curve_out),
        Command::Curve { table, curve_out } => {
            let mut config = config;
            if cli.curve.is_none() {
                config.curve_samples = DEFAULT_CURVE_ROWS;
            }
            cmd_bound(config, table, curve_out)
        }
        Command::Verify => cmd_verify(&config),
    }
}

/// Defaults, then the config file, then flags.
fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut c = match &cli.config {
        Some(path) => io::parse_document(&io::read_text(path)?, path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = cli.dim {
        c.d = v;
    }
    if let Some(v) = cli.samples {
        c.samples_per_k = v;
    }
    if let Some(v) = cli.seed {
        c.master_seed = v;
    }
    if let Some(v) = cli.chunk_size {
        c.chunk_size = v;
    }
    if let Some(v) = cli.confidence {
        c.confidence_level = v;
    }
    if let Some(v) = cli.mode {
        c.mode = v;
    }
    if let Some(v) = cli.search_cap {
        c.search_cap = v;
    }
    if let Some(v) = cli.curve {
        c.curve_samples = v;
    }
    if let Some(v) = &cli.out {
        c.output_path = Some(v.clone());
    }
    c.validate()?;
    Ok(c)
}

fn cmd_estimate(config: RunConfig, record_timing: bool) -> Result<ExitCode> {
    let start = Instant::now();
    let table = build_gtable(&config)?;
    let elapsed = start.elapsed().as_secs_f64();
    print_table(&table);
    println!("{}", table.truncation_note);

    let path = config
        .output_path
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_TABLE));
    let mut metadata = Metadata::new(Some(config));
    if record_timing {
        metadata.wall_clock_seconds = Some(elapsed);
    }
    io::write_text(&path, &io::to_document(&TableFile { table, metadata }))?;
    eprintln!("wrote {} ({elapsed:.2} s)", path.display());
    Ok(ExitCode::SUCCESS)
}

fn print_table(table: &GTildeTable) {
    println!("g~_{}(k), k = 0..{}", table.d, table.k_max);
    println!(
        "{:>3}  {:>14}  {:>11}  {:>11}  {:>27}",
        "k", "value", "source", "std_error", "confidence interval"
    );
    for e in table.entries.iter().chain(&table.zero_hit_entry) {
        let source = match e.source {
            Source::Exact => "exact",
            Source::MonteCarlo => "monte_carlo",
        };
        let (se, ci) = match &e.estimate {
            Some(est) => (
                format!("{:.3e}", est.std_error),
                format!("[{:.4e}, {:.4e}]", est.ci_low, est.ci_high),
            ),
            None => ("-".into(), "-".into()),
        };
        println!("{:>3}  {:>14.8}  {source:>11}  {se:>11}  {ci:>27}", e.k, e.value);
    }
}

fn cmd_bound(
    config: RunConfig,
    table_path: Option<PathBuf>,
    curve_out: Option<PathBuf>,
) -> Result<ExitCode> {
    let table_path = table_path.unwrap_or_else(|| PathBuf::from(DEFAULT_TABLE));
    let TableFile { table, .. } = io::read_table(&table_path)?;
    let report = bound_report(&table, config.mode, config.curve_samples, config.search_cap)?;

    println!("dimension            {}", report.d);
    println!("mode                 {}", report.mode);
    println!("a*                   {}", sig6(report.a_star));
    println!("C_d(a*)              {}", sig6(report.c_at_a_star));
    println!("bound                {}", sig6(report.bound));
    println!("classical 1/e        {}", sig6(report.classical));
    println!("improvement ratio    {}", sig6(report.improvement_ratio));
    println!(
        "pressure analytic for |z| V_d(R) strictly below {}",
        sig6(report.bound)
    );

    let out = config
        .output_path
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT));
    if let Some(curve) = &report.curve {
        let csv_path = curve_out.unwrap_or_else(|| out.with_extension("csv"));
        io::write_text(&csv_path, &io::curve_csv(curve))?;
        eprintln!("wrote {} ({} rows)", csv_path.display(), curve.len());
    }
    let file = ReportFile {
        report,
        metadata: Metadata::new(None),
    };
    io::write_text(&out, &io::to_document(&file))?;
    eprintln!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(config: &RunConfig) -> Result<ExitCode> {
    let opts = VerifyOptions {
        seed: config.master_seed,
        chunk_size: config.chunk_size,
        ..VerifyOptions::default()
    };
    let checks = verify::run(&opts);
    for c in &checks {
        println!("{c}");
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        println!("all {} checks passed", checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error[E_VERIFY]: failed checks: {}", failed.join(", "));
        Ok(ExitCode::from(EXIT_VERIFY))
    }
}

/// Six significant digits.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

