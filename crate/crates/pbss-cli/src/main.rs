//! Command-line front end for PBSS load-retrieval routing.

mod bench;
mod sweep;
mod tracefile;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pbss_core::generator::{generate, GenerateError, GeneratorSpec};
use pbss_core::grid::Position;
use pbss_core::map::{parse_map, render_map};
use pbss_core::solver::{solve, SolveError, SolverConfig};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_PARSE: u8 = 10;
const EXIT_INFEASIBLE: u8 = 11;
const EXIT_CAP: u8 = 12;
const EXIT_REPLAY: u8 = 13;

#[derive(Parser)]
#[command(
    name = "pbss",
    about = "Route programming for puzzle-based storage retrievals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: aligned text or JSON.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the primary output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a map file and emit the decision trace.
    Solve {
        /// Map file in the grid text format.
        map: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step budget; defaults to 20 moves per cell.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Re-apply the emitted trace and confirm it reaches the recorded
        /// outcome.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a random instance.
    Generate {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        escorts: usize,
        #[arg(long)]
        targets: usize,
        /// IO cell as `x,y`; repeat for several.
        #[arg(long = "io", required = true)]
        ios: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the map to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the 9x5 corner-line benchmark sweep against the golden grids.
    #[command(name = "sweep-fig17")]
    SweepFig17 {
        /// Escort counts to sweep, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3, 4, 5, 6])]
        escorts: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        seeds_per_case: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Node budget per exact search; exhausted cells are flagged.
        #[arg(long, default_value_t = 2_000_000)]
        oracle_limit: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the standard 9x9 multi-item benchmark suite.
    BenchMulti {
        #[arg(long, default_value_t = 1000)]
        seed: u64,
        #[arg(long)]
        max_steps: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Replay a trace against its map as ASCII frames.
    Replay { trace: PathBuf, map: PathBuf },
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_io_arg(s: &str) -> Result<Position> {
    let (x, y) = s
        .split_once(',')
        .with_context(|| format!("IO `{s}` is not of the form x,y"))?;
    Ok(Position::new(
        x.trim().parse().context("IO x coordinate")?,
        y.trim().parse().context("IO y coordinate")?,
    ))
}

fn load_map(path: &PathBuf) -> Result<pbss_core::grid::GridState, ExitCode> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(ExitCode::from(EXIT_PARSE));
        }
    };
    parse_map(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn cmd_solve(
    map: PathBuf,
    seed: u64,
    max_steps: Option<usize>,
    verify: bool,
    output: OutputArgs,
) -> ExitCode {
    let grid = match load_map(&map) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut config = SolverConfig::for_grid(&grid, seed);
    if let Some(cap) = max_steps {
        config.max_steps = cap;
    }
    let started = Instant::now();
    let trace = match solve(&grid, &config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                SolveError::Infeasible { .. } | SolveError::NoLegalAction => EXIT_INFEASIBLE,
                _ => EXIT_INFEASIBLE,
            });
        }
    };
    let elapsed = started.elapsed();

    let rendered = match output.format {
        Format::Text => tracefile::render_text(&trace),
        Format::Structured => match tracefile::render_json(&trace) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        },
    };
    if let Err(e) = write_output(&output.out, &rendered) {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }

    if verify {
        match trace.replay() {
            Ok(final_state) if final_state.is_solved() == trace.solved => {
                eprintln!("verify=ok");
            }
            _ => {
                eprintln!("error: trace does not replay to the recorded outcome");
                return ExitCode::from(EXIT_REPLAY);
            }
        }
    }

    println!(
        "steps={} solved={} time={:.3}s",
        trace.total_steps,
        trace.solved,
        elapsed.as_secs_f64()
    );
    if trace.solved {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CAP)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    width: usize,
    height: usize,
    escorts: usize,
    targets: usize,
    ios: Vec<String>,
    seed: u64,
    out: Option<PathBuf>,
) -> ExitCode {
    let io_positions = match ios.iter().map(|s| parse_io_arg(s)).collect::<Result<Vec<_>>>() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let spec = GeneratorSpec {
        width,
        height,
        n_escorts: escorts,
        n_targets: targets,
        io_positions,
        rng_seed: seed,
    };
    match generate(&spec) {
        Ok(grid) => {
            if let Err(e) = write_output(&out, &render_map(&grid)) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e @ GenerateError::BadIos(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INFEASIBLE)
        }
    }
}

fn cmd_sweep(
    escorts: Vec<usize>,
    seeds_per_case: usize,
    seed: u64,
    oracle_limit: usize,
    output: OutputArgs,
) -> ExitCode {
    match sweep::run_sweep(&escorts, seeds_per_case, seed, oracle_limit) {
        Ok(report) => {
            let rendered = match output.format {
                Format::Text => sweep::render_text(&report),
                Format::Structured => match serde_json::to_string_pretty(&report) {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::FAILURE;
                    }
                },
            };
            if let Err(e) = write_output(&output.out, &rendered) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_bench(seed: u64, max_steps: Option<usize>, output: OutputArgs) -> ExitCode {
    match bench::run_bench(seed, max_steps) {
        Ok(report) => {
            let rendered = match output.format {
                Format::Text => bench::render_text(&report),
                Format::Structured => match serde_json::to_string_pretty(&report) {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::FAILURE;
                    }
                },
            };
            if let Err(e) = write_output(&output.out, &rendered) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
            let capped = report.rows.iter().filter(|r| !r.solved).count();
            if capped > 0 {
                eprintln!("warning: {capped} cases hit the step cap");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_replay(trace_path: PathBuf, map_path: PathBuf) -> ExitCode {
    let grid = match load_map(&map_path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let text = match fs::read_to_string(&trace_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", trace_path.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let records = match tracefile::parse(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e}", trace_path.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };

    let mut state = grid;
    println!("frame 0 (initial)\n{}", render_map(&state));
    for record in &records {
        state = match state.apply(record.action()) {
            Ok(next) => next,
            Err(e) => {
                eprintln!("error: step {} does not apply: {e}", record.step);
                return ExitCode::from(EXIT_REPLAY);
            }
        };
        let show = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        println!(
            "frame {} move {} -> {} reason={} value {} -> {} reward={}\n{}",
            record.step,
            record.escort_from,
            record.escort_to,
            record.reason.token(),
            show(record.value_before),
            show(record.value_after),
            record.reward,
            render_map(&state)
        );
    }
    if state.is_solved() {
        println!("verdict: solved ({} retrievals)", state.retrieved());
    } else {
        println!(
            "verdict: unsolved ({} target items remain)",
            state.target_count()
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve {
            map,
            seed,
            max_steps,
            verify,
            output,
        } => cmd_solve(map, seed, max_steps, verify, output),
        Command::Generate {
            width,
            height,
            escorts,
            targets,
            ios,
            seed,
            out,
        } => cmd_generate(width, height, escorts, targets, ios, seed, out),
        Command::SweepFig17 {
            escorts,
            seeds_per_case,
            seed,
            oracle_limit,
            output,
        } => cmd_sweep(escorts, seeds_per_case, seed, oracle_limit, output),
        Command::BenchMulti {
            seed,
            max_steps,
            output,
        } => cmd_bench(seed, max_steps, output),
        Command::Replay { trace, map } => cmd_replay(trace, map),
    }
}
