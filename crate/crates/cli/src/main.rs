//! `mwrp`: generate maps, solve, verify, benchmark and render.
//!
//! Exit codes: 0 success, 1 an invalid solution in `verify`, 2 timeout with
//! an incumbent, 3 timeout without any solution, 4 invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use mwrp_core::bench::{self, BenchSpec};
use mwrp_core::grid::{generate_map, parse_map, sample_border_starts, MapStyle};
use mwrp_core::io::SolutionFile;
use mwrp_core::search::SolveStatus;
use mwrp_core::{
    postprocess, render, solve_with_index, verify, Algorithm, Cell, GridMap, ProblemInstance, SolveError,
    SolverConfig, VisibilityIndex, Weight,
};

const EXIT_INVALID_SOLUTION: u8 = 1;
const EXIT_TIMEOUT_INCUMBENT: u8 = 2;
const EXIT_TIMEOUT_NONE: u8 = 3;
const EXIT_INVALID_INPUT: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "mwrp", version, about = "Multi-agent watchman route planning on grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated MovingAI map.
    Gen(GenArgs),
    /// Solve one instance and write the solution JSON.
    Solve(SolveArgs),
    /// Check a solution file against its map.
    Verify { map: PathBuf, solution: PathBuf },
    /// Run every map in a directory and write a CSV.
    Bench(BenchArgs),
    /// Draw a solution as SVG.
    Render {
        map: PathBuf,
        solution: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value = "random")]
    style: MapStyle,
    #[arg(long, default_value_t = 32)]
    width: usize,
    #[arg(long, default_value_t = 32)]
    height: usize,
    /// Obstacle density, random maps only.
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    map: PathBuf,
    #[arg(long, default_value = "cp3")]
    algo: Algorithm,
    /// Suboptimality weight, e.g. 2 or 3/2.
    #[arg(long, default_value = "1")]
    w: Weight,
    #[arg(long)]
    anytime: bool,
    /// Nodes evaluated per mTSP batch.
    #[arg(long)]
    batch: Option<usize>,
    #[arg(long)]
    pivot_cap: Option<usize>,
    #[arg(long)]
    no_cd: bool,
    #[arg(long)]
    no_pd: bool,
    #[arg(long)]
    no_pivot_prune: bool,
    /// Re-plan the longest route alone afterwards.
    #[arg(long)]
    postprocess: bool,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Explicit starts as "r,c;r,c".
    #[arg(long, conflicts_with = "agents")]
    starts: Option<String>,
    /// Number of border starts to sample with --seed.
    #[arg(long)]
    agents: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    dir: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "cp3")]
    algos: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    weights: Vec<Weight>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    agents: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long)]
    anytime: bool,
    /// Seconds per run.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => {
            let map = generate_map(args.style, args.width, args.height, args.density, args.seed)?;
            emit(args.out.as_deref(), &map.to_movingai())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve(args) => solve_cmd(args),
        Command::Verify { map, solution } => {
            let (map, _) = read_map(&map)?;
            let sol = read_solution(&solution)?;
            let report = verify::verify(&map, &sol.starts, &sol.paths);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::from(EXIT_INVALID_SOLUTION) })
        }
        Command::Bench(args) => {
            let maps = bench::load_suite(&args.dir)?;
            if maps.is_empty() {
                bail!("no .map files in {}", args.dir.display());
            }
            let spec = BenchSpec {
                algorithms: args.algos,
                weights: args.weights,
                agents: args.agents,
                seeds: args.seeds,
                anytime: args.anytime,
                time_limit: seconds(args.time_limit)?,
            };
            let rows = bench::run_bench(&maps, &spec)?;
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf)?;
            emit(args.out.as_deref(), &String::from_utf8(buf)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { map, solution, out } => {
            let (map, _) = read_map(&map)?;
            let sol = read_solution(&solution)?;
            emit(out.as_deref(), &render::render_svg(&map, &sol.starts, &sol.paths))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn solve_cmd(args: SolveArgs) -> Result<ExitCode> {
    let (map, text) = read_map(&args.map)?;
    let map = Arc::new(map);
    let starts = match &args.starts {
        Some(s) => parse_starts(s)?,
        None => sample_border_starts(&map, args.agents.unwrap_or(1), args.seed)?,
    };
    let problem = ProblemInstance::new(Arc::clone(&map), starts)?;

    let mut config = SolverConfig::new(args.algo)
        .with_weight(args.w)
        .with_anytime(args.anytime)
        .with_time_limit(seconds(args.time_limit)?);
    config.seed = args.seed;
    if let Some(n) = args.batch {
        config = config.with_batch_size(n);
    }
    if let Some(p) = args.pivot_cap {
        config.pivot_cap = p;
    }
    config.enable_cd &= !args.no_cd;
    config.enable_pd &= !args.no_pd;
    config.enable_pivot_prune &= !args.no_pivot_prune;

    let index = VisibilityIndex::build(&map);
    let solution = match solve_with_index(&problem, &index, &config) {
        Ok(s) => s,
        Err(SolveError::Timeout) => {
            eprintln!("error: time limit reached without a solution");
            return Ok(ExitCode::from(EXIT_TIMEOUT_NONE));
        }
        Err(e @ SolveError::Unsolvable) => return Err(e.into()),
    };

    let map_path = args.map.to_string_lossy();
    let mut file = SolutionFile::new(&solution, problem.starts(), &map_path, text.as_bytes());
    if args.postprocess {
        let inner = SolverConfig::cp3().with_time_limit(config.time_limit);
        let better = postprocess::improve(&solution.paths, &problem, &index, &inner);
        file = file.with_paths(better.paths);
    }
    emit(args.out.as_deref(), &file.to_json())?;
    Ok(match solution.status {
        SolveStatus::Complete => ExitCode::SUCCESS,
        SolveStatus::TimedOut => ExitCode::from(EXIT_TIMEOUT_INCUMBENT),
    })
}

fn read_map(path: &Path) -> Result<(GridMap, String)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let map = parse_map(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((map, text))
}

fn read_solution(path: &Path) -> Result<SolutionFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SolutionFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Parses "r,c;r,c".
fn parse_starts(s: &str) -> Result<Vec<Cell>> {
    s.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (r, c) = part.split_once(',').with_context(|| format!("start {part:?} is not r,c"))?;
            Ok(Cell::new(r.trim().parse()?, c.trim().parse()?))
        })
        .collect()
}

fn seconds(limit: Option<f64>) -> Result<Option<Duration>> {
    limit
        .map(|s| Duration::try_from_secs_f64(s).with_context(|| format!("bad time limit {s}")))
        .transpose()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
