use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use regpow::cohomsheaf::Route;

mod cache;
mod commands;
mod corpus;
mod error;
mod job;

use commands::{Artifacts, Command, StrandAxis};
use error::{CliError, CliResult};
use job::JobSpec;

#[derive(Parser)]
#[command(name = "regpow", version, about = "Regularity and a*-invariants of powers of equigenerated ideals")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for JSON/CSV artifacts; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Disable the Groebner basis cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Pi,
    Phi,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    T,
}

#[derive(clap::Args)]
struct JobArgs {
    /// Job file.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Override the job's qmax.
    #[arg(long)]
    qmax: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Power table a^i, a*, reg of I^q.
    Powers(JobArgs),
    /// Rees algebra presentation and fiber ideal.
    Rees(JobArgs),
    /// Invariants of strand modules over an index range.
    Strand {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = AxisArg::X)]
        axis: AxisArg,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        to: i64,
    },
    /// Sheaf cohomology of O(p,q) on the blowup over a grid.
    Cohomology {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
        /// p range as `lo..hi` (default: a*_phi+1 ..= a*_phi+3).
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        /// q range as `lo..hi`.
        #[arg(long, default_value = "1..4", allow_hyphen_values = true)]
        q: String,
    },
    /// Certificates and stability thresholds.
    Bounds(JobArgs),
    /// Thresholds plus the verification checks.
    Verify(JobArgs),
    /// Run the built-in corpus and compare with its goldens.
    Corpus,
}

fn parse_range(s: &str) -> CliResult<(i64, i64)> {
    let bad = || CliError::Usage(format!("range `{s}` should look like `lo..hi`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.into(), source })
}

fn emit(cli: &Cli, stem: &str, art: &Artifacts) -> CliResult<()> {
    let json = matches!(cli.format, Format::Json | Format::Both);
    let csv = matches!(cli.format, Format::Csv | Format::Both);
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.clone(), source })?;
            if json {
                write_file(&dir.join(format!("{stem}.json")), &art.json)?;
            }
            if csv {
                write_file(&dir.join(format!("{stem}.csv")), &art.csv)?;
            }
        }
        None => {
            if json {
                print!("{}", art.json);
            }
            if csv {
                if json {
                    println!();
                }
                print!("{}", art.csv);
            }
        }
    }
    Ok(())
}

fn load(args: &JobArgs) -> CliResult<JobSpec> {
    let mut job = JobSpec::load(&args.input)?;
    if let Some(q) = args.qmax {
        if q == 0 {
            return Err(CliError::Usage("--qmax must be at least 1".into()));
        }
        job.qmax = q;
    }
    Ok(job)
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    if cli.no_cache {
        regpow::groebner::set_cache_enabled(false);
    } else {
        regpow::groebner::set_cache_backend(Some(Box::new(cache::DiskCache::from_env())));
    }
    let (args, cmd) = match &cli.command {
        Cmd::Corpus => return run_corpus(cli),
        Cmd::Powers(a) => (a, Command::Powers),
        Cmd::Rees(a) => (a, Command::Rees),
        Cmd::Strand { job, axis, from, to } => {
            let axis = match axis {
                AxisArg::X => StrandAxis::X,
                AxisArg::T => StrandAxis::T,
            };
            (job, Command::Strand { axis, from: *from, to: *to })
        }
        Cmd::Cohomology { job, route, p, q } => {
            let route = match route {
                RouteArg::Pi => Route::Pi,
                RouteArg::Phi => Route::Phi,
                RouteArg::Both => Route::Both,
            };
            let p = p.as_deref().map(parse_range).transpose()?;
            (job, Command::Cohomology { route, p, q: parse_range(q)? })
        }
        Cmd::Bounds(a) => (a, Command::Bounds),
        Cmd::Verify(a) => (a, Command::Verify),
    };
    let job = load(args)?;
    let art = commands::execute(&job, &cmd)?;
    emit(cli, cmd.name(), &art)?;
    log::info!("cache hits: {}", regpow::groebner::cache_hits());
    match art.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn run_corpus(cli: &Cli) -> CliResult<()> {
    let (report, full) = corpus::run_corpus()?;
    let json = serde_json::to_string_pretty(&report).expect("corpus report serializes") + "\n";
    let rows: Vec<String> = report
        .jobs
        .iter()
        .map(|j| format!("{},{},{}", j.name, if j.matches { "pass" } else { "fail" }, j.diffs.len()))
        .collect();
    let csv = format!("name,golden,diffs\n{}\n", rows.join("\n"));
    emit(cli, "corpus", &Artifacts { json, csv, failure: None })?;
    if let Some(dir) = &cli.out {
        for (j, r) in report.jobs.iter().zip(&full) {
            let text = serde_json::to_string_pretty(r).expect("report serializes") + "\n";
            write_file(&dir.join(format!("{}.report.json", j.name)), &text)?;
        }
    }
    for j in report.jobs.iter().filter(|j| !j.matches) {
        for d in &j.diffs {
            eprintln!("{}: {d}", j.name);
        }
    }
    log::info!("cache hits: {}", regpow::groebner::cache_hits());
    if report.mismatches > 0 {
        return Err(CliError::GoldenMismatch(report.mismatches));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
