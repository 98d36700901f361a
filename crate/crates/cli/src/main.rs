use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use neartsp::bench::{run_bench, write_csv, Suite};
use neartsp::generate::{generate, GeneratorKind, GeneratorSpec};
use neartsp::report::solve;
use neartsp::{bad_vertices_p, min_violating_set, Algorithm, Caps, Error, Graph};

#[derive(Parser)]
#[command(name = "neartsp", version, about = "TSP approximation on near-metric complete graphs")]
struct Cli {
    /// Worker threads (overrides NEARTSP_THREADS).
    #[arg(long, global = true, env = "NEARTSP_THREADS")]
    threads: Option<usize>,
    /// Cap overrides, e.g. `held_karp=16,q=3`.
    #[arg(long, global = true, default_value = "")]
    caps: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print n, p, q, the violating-triangle count and a minimum violating set.
    Analyze { file: PathBuf },
    /// Solve an instance and print the report as JSON.
    Solve {
        file: PathBuf,
        #[arg(long, value_parser = parse_alg)]
        alg: Algorithm,
        /// Skip the exact oracle.
        #[arg(long)]
        no_opt: bool,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        target: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        lo: u64,
        #[arg(long, default_value_t = 100)]
        hi: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a seeded suite and write the CSV report.
    Bench {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Algorithms to run, comma separated; defaults depend on the suite.
        #[arg(long, value_delimiter = ',', value_parser = parse_alg)]
        alg: Vec<Algorithm>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_alg(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. } | Error::BudgetExceeded { .. }) => 3,
        Some(Error::Internal(_) | Error::ShortcutIncrease { .. }) => 4,
        Some(_) => 2,
        None if e.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 4,
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::parse_instance(&text)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let caps = Caps::parse(&cli.caps)?;
    match cli.cmd {
        Cmd::Analyze { file } => {
            let g = read_graph(&file)?;
            let p = bad_vertices_p(&g);
            let mut out = std::io::stdout().lock();
            writeln!(out, "n {}", g.n())?;
            writeln!(out, "p {}", p.size())?;
            match min_violating_set(&g, Some(caps.q)) {
                Ok(q) => {
                    writeln!(out, "q {}", q.size())?;
                    writeln!(out, "violating_triangles {}", g.violating_triangles().len())?;
                    let set: Vec<String> = q.bad.iter().map(ToString::to_string).collect();
                    writeln!(out, "min_violating_set {}", set.join(" "))?;
                }
                Err(Error::BudgetExceeded { .. }) => {
                    writeln!(out, "q >{}", caps.q)?;
                    writeln!(out, "violating_triangles {}", g.violating_triangles().len())?;
                }
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::Solve { file, alg, no_opt } => {
            let g = read_graph(&file)?;
            let report = solve(&g, alg, &caps, !no_opt)?;
            println!("{}", report.to_json());
        }
        Cmd::Gen { kind, n, target, seed, lo, hi, output } => {
            let spec = GeneratorSpec { weight_range: (lo, hi), ..GeneratorSpec::new(kind, n, target, seed) };
            let g = generate(&spec)?;
            fs::write(&output, g.to_instance_string()).with_context(|| format!("writing {}", output.display()))?;
        }
        Cmd::Bench { suite, count, seed, alg, output } => {
            let algs = if alg.is_empty() { suite.default_algorithms() } else { alg };
            let rows = run_bench(suite, count, seed, &algs, &caps)?;
            let file = fs::File::create(&output).with_context(|| format!("creating {}", output.display()))?;
            write_csv(&rows, file)?;
            let worst = rows.iter().filter_map(|r| r.ratio).fold(0.0f64, f64::max);
            eprintln!("{} rows, worst ratio {worst:.6}", rows.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // 0 lets rayon pick the core count
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: building thread pool: {e}");
            return ExitCode::from(4);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

