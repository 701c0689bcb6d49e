//! `locfilter`: factor graph filters into neighbor-local schedules.
//!
//! Exit codes: 0 success, 1 internal error, 2 unreadable or malformed input,
//! 3 disconnected graph, 4 dimension mismatch, 5 schedule built for another
//! graph, 6 non-local factor, 7 verification failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locfilter::scalar::{format_scalar, to_f64};
use locfilter::{
    decompose, factor_count_bound, float_deviation, optimize, parse_vector, simulate, simulate_f64,
    verify, Error, Graph, Matrix, Schedule,
};

const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "locfilter",
    version,
    about = "Factor graph filters into neighbor-local schedules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a matrix into a schedule of local factors and write it as JSON.
    Decompose {
        graph: PathBuf,
        matrix: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        opt: OptimizeFlag,
    },
    /// Run a schedule on an input signal and print the output signal.
    Simulate {
        schedule: PathBuf,
        graph: PathBuf,
        vector: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Include per-round node values in the trace file.
        #[arg(long)]
        trace: bool,
        /// Write the round trace as JSON to this path.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check that a schedule reproduces a matrix, exactly and by simulation.
    Verify {
        graph: PathBuf,
        matrix: PathBuf,
        schedule: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Print graph statistics, or its Graphviz rendering with --dot.
    Info {
        graph: PathBuf,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args)]
struct OptimizeFlag {
    /// Cancel inverse pairs and merge local runs (default).
    #[arg(long, overrides_with = "no_optimize")]
    optimize: bool,
    #[arg(long, overrides_with = "optimize")]
    no_optimize: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::NonSquare { .. }
            | Error::IndexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::InvalidFactor(_) => 2,
            Error::Disconnected { .. } => 3,
            Error::DimensionMismatch { .. } => 4,
            Error::NonLocalFactor { .. } => 6,
            Error::SingularFactor | Error::UnsupportedFactorKind(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: locfilter::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        if f.code == 2 {
            f.message = format!("{}: {}", path.display(), f.message);
        }
        f
    })
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    with_path(path, Graph::parse(&read(path)?))
}

fn load_matrix(path: &Path) -> Result<Matrix, Failure> {
    with_path(path, Matrix::parse(&read(path)?))
}

fn load_schedule(path: &Path, graph: &Graph) -> Result<Schedule, Failure> {
    let s = with_path(path, Schedule::from_json(&read(path)?))?;
    if s.graph_id() != graph.checksum() {
        return Err(fail(
            5,
            format!(
                "schedule targets graph {} but the graph file is {}",
                s.graph_id(),
                graph.checksum()
            ),
        ));
    }
    Ok(s)
}

fn cmd_decompose(
    graph: &Path,
    matrix: &Path,
    out: &Path,
    optimize_on: bool,
) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let m = load_matrix(matrix)?;
    let mut schedule = decompose(&m, &g)?;
    if optimize_on {
        schedule = optimize(&schedule, &g)?.0;
    }
    fs::write(out, schedule.to_json()).map_err(|e| fail(1, format!("{}: {e}", out.display())))?;
    let st = schedule.stats;
    println!(
        "factors_raw={} factors_lifted={} factors_optimized={} bound={}",
        st.raw,
        st.lifted,
        st.optimized,
        factor_count_bound(&g)?
    );
    Ok(())
}

fn cmd_simulate(
    schedule: &Path,
    graph: &Path,
    vector: &Path,
    mode: Mode,
    trace: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let s = load_schedule(schedule, &g)?;
    let x = with_path(vector, parse_vector(&read(vector)?))?;
    let (lines, rounds, messages, trace_json) = match mode {
        Mode::Exact => {
            let (y, t) = simulate(&s, &g, &x)?;
            let lines: Vec<String> = y.iter().map(format_scalar).collect();
            (lines, t.round_count(), t.total_messages, t.to_json(trace))
        }
        Mode::Float => {
            let xf: Vec<f64> = x.iter().map(to_f64).collect();
            let (y, t) = simulate_f64(&s, &g, &xf)?;
            let lines: Vec<String> = y.iter().map(|v| v.to_string()).collect();
            (lines, t.round_count(), t.total_messages, t.to_json(trace))
        }
    };
    if let Some(out) = out {
        fs::write(out, trace_json).map_err(|e| fail(1, format!("{}: {e}", out.display())))?;
    }
    for line in lines {
        println!("{line}");
    }
    println!("rounds={rounds} messages={messages}");
    Ok(())
}

fn cmd_verify(
    graph: &Path,
    matrix: &Path,
    schedule: &Path,
    trials: usize,
    seed: u64,
    mode: Mode,
) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let m = load_matrix(matrix)?;
    let s = load_schedule(schedule, &g)?;
    if let Some(mismatch) = verify(&s, &g, &m, trials, seed)? {
        return Err(fail(7, mismatch.to_string()));
    }
    if mode == Mode::Float {
        let dev = float_deviation(&s, &g, &m, trials, seed)?;
        if dev > FLOAT_TOLERANCE {
            return Err(fail(7, format!("float simulation deviates by {dev:e}")));
        }
    }
    println!("verified factors={} trials={trials}", s.len());
    Ok(())
}

fn cmd_info(graph: &Path, dot: bool) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    if dot {
        print!("{}", g.to_dot());
        return Ok(());
    }
    let mut line = format!(
        "n={} edges={} connected={}",
        g.n(),
        g.edge_count(),
        g.is_connected()
    );
    if g.is_connected() {
        line += &format!(
            " diameter={} bound={}",
            g.diameter()?,
            factor_count_bound(&g)?
        );
    }
    println!("{line}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decompose {
            graph,
            matrix,
            out,
            opt,
        } => cmd_decompose(graph, matrix, out, !opt.no_optimize),
        Command::Simulate {
            schedule,
            graph,
            vector,
            mode,
            trace,
            out,
        } => cmd_simulate(schedule, graph, vector, *mode, *trace, out.as_deref()),
        Command::Verify {
            graph,
            matrix,
            schedule,
            trials,
            seed,
            mode,
        } => cmd_verify(graph, matrix, schedule, *trials, *seed, *mode),
        Command::Info { graph, dot } => cmd_info(graph, *dot),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
