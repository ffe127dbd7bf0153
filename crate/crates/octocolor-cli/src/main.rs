//! Command-line front end: color, verify, inspect, generate and benchmark.
//!
//! Exit codes: 0 success, 1 verification failure (improper or incomplete
//! coloring, oracle says not colorable), 2 input error (unreadable or
//! malformed files, oversized oracle input), 3 guarantee violation (the
//! driver cannot keep the 8-color promise, e.g. under `--strict-planar`).

use clap::{Parser, Subcommand};
use octocolor::driver::{color_graph_with, DriverOptions};
use octocolor::gen::{generate, GenStyle};
use octocolor::io::{
    read_coloring, read_edge_list, write_coloring, write_edge_list, write_trace_json, IoError,
};
use octocolor::oracle::{brute_chromatic_index, verify_coloring};
use octocolor::reduce::CoherenceMode;
use octocolor::reducible::reducible_stats;
use octocolor::{Graph, PartialColoring};
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "octocolor", version, about = "8-edge-coloring of planar graphs with maximum degree 8")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Color a graph with colors 1..=8 and write the coloring.
    Color {
        /// Edge-list file, or "-" for stdin.
        input: String,
        /// Coloring output path (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Fail (exit 3) when a level finds fewer reducible edges than the
        /// planar bound promises, instead of warning.
        #[arg(long)]
        strict_planar: bool,
        /// Write the run trace as JSON to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check that a coloring file is a proper, complete 8-coloring.
    Verify {
        /// Edge-list file, or "-" for stdin.
        edges: String,
        /// Coloring file, or "-" for stdin.
        coloring: String,
    },
    /// Print reducible-edge statistics for a graph.
    Stats {
        /// Edge-list file, or "-" for stdin.
        input: String,
    },
    /// Generate a planar test graph.
    Gen {
        /// Number of vertices (requests below 2 yield a single edge).
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "triangulation", value_parser = GenStyle::from_str)]
        style: GenStyle,
        /// Edge-list output path (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the solver across sizes and emit CSV.
    Bench {
        /// Comma-separated sizes; scientific notation like 1e5 is accepted.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<String>,
        /// Seeds per size (run with seeds 0..seeds).
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value = "triangulation", value_parser = GenStyle::from_str)]
        style: GenStyle,
        /// CSV output path (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively decide colorability of a small graph (at most 40 edges)
    /// and print a coloring when one exists.
    Oracle {
        /// Edge-list file, or "-" for stdin.
        input: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=9))]
        max_colors: u8,
    },
}

/// A classified failure; the variant picks the exit code.
enum Failure {
    /// Exit 2: unreadable or malformed input.
    Input(String),
    /// Exit 1: the coloring (or colorability claim) does not hold.
    Verification(String),
    /// Exit 3: the driver cannot keep the 8-color guarantee.
    Guarantee(String),
    /// Exit 0, quietly: the output consumer closed the pipe early
    /// (e.g. `octocolor gen ... | head`), the normal end for a filter.
    ClosedPipe,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Verification(_) => 1,
            Failure::Guarantee(_) => 3,
            Failure::ClosedPipe => 0,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Verification(m) | Failure::Guarantee(m) => m,
            Failure::ClosedPipe => "output pipe closed",
        }
    }
}

fn input_err(path: &str, err: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{path}: {err}"))
}

/// Classifies a failed output write: a broken pipe is a quiet success,
/// anything else an input-class error.
fn output_err(err: impl Into<IoError>) -> Failure {
    let err = err.into();
    let pipe = match &err {
        IoError::Io(e) => e.kind() == io::ErrorKind::BrokenPipe,
        IoError::Json(e) => e.io_error_kind() == Some(io::ErrorKind::BrokenPipe),
        _ => false,
    };
    if pipe {
        Failure::ClosedPipe
    } else {
        Failure::Input(err.to_string())
    }
}

/// Prints to stdout with broken-pipe classification instead of the panic
/// `println!` would give.
fn emit_stdout(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout();
    out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(output_err)
}

fn open_reader(path: &str) -> Result<Box<dyn BufRead>, Failure> {
    if path == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let f = File::open(path).map_err(|e| input_err(path, e))?;
        Ok(Box::new(BufReader::new(f)))
    }
}

fn open_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(io::stdout())),
        Some(p) => {
            let f = File::create(p).map_err(|e| input_err(&p.display().to_string(), e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn read_graph(path: &str) -> Result<Graph, Failure> {
    read_edge_list(open_reader(path)?).map_err(|e| input_err(path, e))
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Color { input, output, strict_planar, trace } => {
            let g = read_graph(&input)?;
            let opts = DriverOptions { strict_planar, ..DriverOptions::default() };
            let (pc, run_trace) =
                color_graph_with(&g, &opts).map_err(|e| Failure::Guarantee(e.to_string()))?;
            for w in &run_trace.warnings {
                eprintln!("warning: {w}");
            }
            let mut out = open_writer(&output)?;
            write_coloring(&mut out, &g, &pc).map_err(output_err)?;
            out.flush().map_err(output_err)?;
            if let Some(path) = trace {
                let mut tw = open_writer(&Some(path))?;
                write_trace_json(&mut tw, &run_trace)
                    .and_then(|()| Ok(tw.flush()?))
                    .map_err(output_err)?;
            }
            Ok(())
        }
        Cmd::Verify { edges, coloring } => {
            if edges == "-" && coloring == "-" {
                return Err(Failure::Input("only one input may be stdin".into()));
            }
            let g = read_graph(&edges)?;
            let pc = match read_coloring(open_reader(&coloring)?, &g) {
                Ok(pc) => pc,
                Err(err @ (IoError::Improper { .. } | IoError::Incomplete { .. })) => {
                    return Err(Failure::Verification(format!("{coloring}: {err}")));
                }
                Err(err) => return Err(input_err(&coloring, err)),
            };
            verify_coloring(&g, &pc)
                .map_err(|e| Failure::Verification(format!("{coloring}: {e}")))?;
            emit_stdout(&format!("ok: proper 8-coloring of {} edges\n", g.num_edges()))
        }
        Cmd::Stats { input } => {
            let g = read_graph(&input)?;
            let s = reducible_stats(&g).map_err(|e| input_err(&input, e))?;
            let ratio = if s.n == 0 {
                f64::INFINITY
            } else {
                s.reducible as f64 * 1460.0 / s.n as f64
            };
            emit_stdout(&format!(
                "n {}\nm {}\nweak {}\nbutterfly {}\nreducible {}\nratio {ratio:.3}\n\
                 meets_bound {}\n",
                s.n, s.m, s.weak, s.butterfly, s.reducible, s.meets_bound
            ))
        }
        Cmd::Gen { n, seed, style, output } => {
            let g = generate(style, n, seed);
            let comment = format!("generator: style={style} seed={seed} rng=chacha8");
            let mut out = open_writer(&output)?;
            write_edge_list(&mut out, &g, &[&comment])
                .and_then(|()| Ok(out.flush()?))
                .map_err(output_err)
        }
        Cmd::Bench { sizes, seeds, style, output } => {
            let sizes = parse_sizes(&sizes)?;
            if seeds == 0 {
                return Err(Failure::Input("--seeds must be at least 1".into()));
            }
            // Benchmarks measure the solver, not the self-audit; trust mode.
            let opts =
                DriverOptions { coherence: CoherenceMode::Trust, ..DriverOptions::default() };
            let mut out = open_writer(&output)?;
            let mut emit = || -> Result<(), io::Error> {
                writeln!(out, "n,mean_seconds,per_n_log_n")?;
                for &n in &sizes {
                    let mut total = 0.0f64;
                    for seed in 0..seeds {
                        let g = generate(style, n, seed);
                        let start = Instant::now();
                        let (pc, _) = match color_graph_with(&g, &opts) {
                            Ok(done) => done,
                            Err(e) => {
                                return Err(io::Error::other(format!("n={n} seed={seed}: {e}")))
                            }
                        };
                        total += start.elapsed().as_secs_f64();
                        // Correctness check, outside the timed region.
                        verify_coloring(&g, &pc)
                            .map_err(|e| io::Error::other(format!("n={n} seed={seed}: {e}")))?;
                    }
                    let mean = total / seeds as f64;
                    let n_log_n = (n as f64 * (n as f64).log2()).max(1.0);
                    writeln!(out, "{n},{mean:.6},{:.6e}", mean / n_log_n)?;
                    eprintln!("bench: n={n} mean={mean:.3}s over {seeds} seeds");
                }
                out.flush()
            };
            emit().map_err(output_err)
        }
        Cmd::Oracle { input, max_colors } => {
            let g = read_graph(&input)?;
            match brute_chromatic_index(&g, max_colors) {
                Err(e) => Err(input_err(&input, e)),
                Ok(None) => Err(Failure::Verification(format!(
                    "not colorable with {max_colors} colors"
                ))),
                Ok(Some(colors)) => {
                    let mut pc = PartialColoring::new(&g);
                    for (e, &c) in colors.iter().enumerate() {
                        pc.assign(&g, e as u32, c).expect("oracle colorings are proper");
                    }
                    let mut out = open_writer(&None)?;
                    write_coloring(&mut out, &g, &pc)
                        .and_then(|()| Ok(out.flush()?))
                        .map_err(output_err)
                }
            }
        }
    }
}

fn parse_sizes(sizes: &[String]) -> Result<Vec<u32>, Failure> {
    sizes
        .iter()
        .map(|s| {
            let value: f64 = s
                .parse()
                .map_err(|_| Failure::Input(format!("size {s:?} is not a number")))?;
            if !(1.0..=u32::MAX as f64).contains(&value) || value.fract() != 0.0 {
                return Err(Failure::Input(format!("size {s:?} out of range")));
            }
            Ok(value as u32)
        })
        .collect()
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
