use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use nearbip::coloring::{self, Certificate};
use nearbip::oracle::{self, SearchOptions, SolveRequest};
use nearbip::reducer::{self, Outcome, ReduceError};
use nearbip::{corpus, discharging, CycleRef, IfColoring, Mode, PlaneGraph};

const OK: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const ANOMALY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "nearbip",
    version,
    about = "Independent set + forest partitions of plane graphs without 4-, 6- and 8-cycles"
)]
struct Cli {
    /// Worker threads for exhaustive search; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Lenient,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Lenient => Mode::Lenient,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that the graph is simple, connected, plane and has no 4-, 6- or 8-cycle.
    Validate { file: PathBuf },
    /// Partition the vertices into an independent set and a forest.
    Color {
        file: PathBuf,
        /// Solve out-of-class graphs by exhaustive search.
        #[arg(long)]
        fallback_oracle: bool,
    },
    /// Verify a coloring string, optionally as a superextension of a cycle.
    Check {
        file: PathBuf,
        coloring: String,
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "lenient")]
        mode: ModeArg,
    },
    /// Run the discharging rules and report every charge.
    Audit { file: PathBuf },
    /// Count IF-colorings, or superextensions of a cycle.
    Count {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "lenient")]
        mode: ModeArg,
    },
    /// Extend a precoloring of a cycle by reductions.
    Superextend {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<usize>,
        /// Colors of the cycle vertices in cycle order, or a full coloring
        /// string with `.` for uncolored vertices.
        #[arg(long)]
        precolor: String,
        #[arg(long, value_enum, default_value = "lenient")]
        mode: ModeArg,
    },
    /// Write a generated graph in the `pg 1` format.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the reduction trace of a superextension from a cycle.
    Trace {
        file: PathBuf,
        /// Defaults to the outer cycle.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        /// Defaults to the first valid precoloring.
        #[arg(long)]
        precolor: Option<String>,
        #[arg(long, value_enum, default_value = "lenient")]
        mode: ModeArg,
    },
}

/// Failures reported with exit code 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

fn usage(e: impl Into<anyhow::Error>) -> Usage {
    Usage(e.into())
}

fn read_graph(path: &Path) -> Result<PlaneGraph, Usage> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
    PlaneGraph::from_text(&text).with_context(|| format!("parsing {}", path.display())).map_err(usage)
}

fn cycle_arg(g: &PlaneGraph, verts: &[usize]) -> Result<CycleRef, Usage> {
    CycleRef::new(g, verts).context("--cycle").map_err(usage)
}

fn outer_or(g: &PlaneGraph, verts: Option<&[usize]>) -> Result<CycleRef, Usage> {
    match verts {
        Some(v) => cycle_arg(g, v),
        None => g.outer_cycle().ok_or_else(|| usage(anyhow!("the outer boundary is not a cycle; pass --cycle"))),
    }
}

fn precolor_arg(g: &PlaneGraph, c: &CycleRef, s: &str) -> Result<IfColoring, Usage> {
    if s.len() == g.n() {
        return IfColoring::parse(s, g.n()).context("--precolor").map_err(usage);
    }
    let short = IfColoring::parse(s, c.len()).context("--precolor").map_err(usage)?;
    let mut phi = IfColoring::unset(g.n());
    for (i, &v) in c.verts().iter().enumerate() {
        match short.get(i) {
            Some(col) => phi.set(v, col),
            None => return Err(usage(anyhow!("--precolor must color every cycle vertex"))),
        }
    }
    Ok(phi)
}

fn verdict(cert: &Certificate) -> String {
    match cert {
        Certificate::Valid => "verdict=valid".into(),
        Certificate::Invalid(w) => format!("verdict=invalid {w}"),
    }
}

fn print_outcome(out: &Outcome, g: &PlaneGraph, c: &CycleRef, mode: Mode) -> u8 {
    println!("{}", out.coloring);
    let cert = match coloring::is_if_coloring(g, &out.coloring) {
        Certificate::Valid => coloring::is_superextension(g, c, &out.coloring, mode).expect("checked IF-coloring"),
        bad => bad,
    };
    println!("{}", verdict(&cert));
    for a in &out.anomalies {
        eprintln!("{a}");
    }
    if !out.anomalies.is_empty() {
        ANOMALY
    } else if cert.is_valid() {
        OK
    } else {
        FALSE
    }
}

fn domain(e: ReduceError) -> Result<u8, Usage> {
    eprintln!("error: {e}");
    Ok(FALSE)
}

fn run(cli: Cli) -> Result<u8, Usage> {
    let opts = SearchOptions { jobs: cli.jobs.max(1), ..SearchOptions::default() };
    match cli.command {
        Command::Validate { file } => {
            let g = read_graph(&file)?;
            let r = corpus::verify_class(&g);
            println!("{r}");
            Ok(if r.in_class() { OK } else { FALSE })
        }
        Command::Color { file, fallback_oracle } => {
            let g = read_graph(&file)?;
            match reducer::near_bipartite_partition(&g) {
                Ok(p) => {
                    println!("{}", p.coloring);
                    let cert = coloring::is_if_coloring(&g, &p.coloring);
                    println!("{}", verdict(&cert));
                    for a in &p.anomalies {
                        eprintln!("{a}");
                    }
                    Ok(if !p.anomalies.is_empty() {
                        ANOMALY
                    } else if cert.is_valid() {
                        OK
                    } else {
                        FALSE
                    })
                }
                Err(ReduceError::OutOfClass(why)) if fallback_oracle => {
                    eprintln!("out of class ({why}); searching exhaustively");
                    match oracle::solve_with(&SolveRequest::new(&g), opts) {
                        Some(phi) => {
                            println!("{phi}");
                            println!("{}", verdict(&coloring::is_if_coloring(&g, &phi)));
                            Ok(OK)
                        }
                        None => {
                            println!("verdict=none");
                            Ok(FALSE)
                        }
                    }
                }
                Err(e) => domain(e),
            }
        }
        Command::Check { file, coloring: s, cycle, mode } => {
            let g = read_graph(&file)?;
            let phi = IfColoring::parse(&s, g.n()).context("coloring").map_err(usage)?;
            let mut cert = coloring::is_if_coloring(&g, &phi);
            if let (Certificate::Valid, Some(verts)) = (&cert, &cycle) {
                let c = cycle_arg(&g, verts)?;
                cert = coloring::is_superextension(&g, &c, &phi, mode.into()).expect("checked IF-coloring");
            }
            if cert.is_valid() && !phi.is_total() {
                println!("verdict=partial");
                return Ok(FALSE);
            }
            println!("{}", verdict(&cert));
            Ok(if cert.is_valid() { OK } else { FALSE })
        }
        Command::Audit { file } => {
            let g = read_graph(&file)?;
            match discharging::audit(&g) {
                Ok(r) => {
                    println!("{r}");
                    Ok(if r.bounds_hold() && r.conserved() { OK } else { FALSE })
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(FALSE)
                }
            }
        }
        Command::Count { file, cycle, mode } => {
            let g = read_graph(&file)?;
            let mut req = SolveRequest::new(&g);
            if let Some(verts) = &cycle {
                req = req.superextend(cycle_arg(&g, verts)?, mode.into());
            }
            println!("{}", oracle::count_with(&req, opts));
            Ok(OK)
        }
        Command::Superextend { file, cycle, precolor, mode } => {
            let g = read_graph(&file)?;
            let c = cycle_arg(&g, &cycle)?;
            let pre = precolor_arg(&g, &c, &precolor)?;
            match reducer::superextend(&g, &c, &pre, mode.into()) {
                Ok(out) => Ok(print_outcome(&out, &g, &c, mode.into())),
                Err(e @ ReduceError::InvalidPrecoloring(_)) => Err(usage(e)),
                Err(e) => domain(e),
            }
        }
        Command::Gen { family, seed, out } => {
            let e = corpus::generate(&family, seed).map_err(usage)?;
            let text = e.graph.to_text();
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display())).map_err(usage)?
                }
                None => print!("{text}"),
            }
            Ok(OK)
        }
        Command::Trace { file, cycle, precolor, mode } => {
            let g = read_graph(&file)?;
            let c = outer_or(&g, cycle.as_deref())?;
            let pre = match precolor {
                Some(s) => precolor_arg(&g, &c, &s)?,
                None => {
                    coloring::valid_precolorings(&g, &c).into_iter().next().expect("a cycle has a valid precoloring")
                }
            };
            match reducer::superextend(&g, &c, &pre, mode.into()) {
                Ok(out) => {
                    print!("{}", out.trace);
                    for a in &out.anomalies {
                        println!("{a}");
                    }
                    println!("coloring={}", out.coloring);
                    Ok(if out.anomalies.is_empty() { OK } else { ANOMALY })
                }
                Err(e @ ReduceError::InvalidPrecoloring(_)) => Err(usage(e)),
                Err(e) => domain(e),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
