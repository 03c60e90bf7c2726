//! `stabilkit`: stability checks, stabilizers, certificate verification and
//! instance generation for matching games.
//!
//! Exit codes: 0 success or stable, 1 negative verdict, 2 input error,
//! 3 precondition violation, 4 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use stabilkit_core::{
    decompose, gen_factor_critical, gen_mkec, gen_random, gen_setcover, is_stable, parse_graph, parse_solution,
    serialize_solution, solve_approx, solve_exact, solve_factor_critical, solve_oracle, solve_tutte_all,
    verify_certificate, CertificateError, GenError, Graph, GraphError, SolveError, StabilizerSolution,
};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "stabilkit", version, about = "Stability and fractional additive stabilizers of matching games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gallai-Edmonds decomposition.
    Ged { file: PathBuf },
    /// Print "stable" (exit 0) or "unstable" (exit 1).
    Stable { file: PathBuf },
    /// Compute a stabilizer and its certificate.
    Stabilize {
        file: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Certificate destination; printed on stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify { file: PathBuf, cert: PathBuf },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    ExactFpt,
    FactorCritical,
    Approx,
    TutteAll,
    Oracle,
}

#[derive(Subcommand)]
enum GenKind {
    /// Max-k-edge-coloring reduction instance.
    Mkec {
        /// Instance file, or one of path:N, cycle:N, complete:N, star:N.
        #[arg(long)]
        base: String,
        #[arg(long)]
        k: usize,
        /// Parameter q; 0 picks the smallest admissible value.
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Set-cover reduction instance.
    Setcover {
        /// One set as comma-separated element indices; repeat per set.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        #[arg(long)]
        elems: usize,
        /// Clique parameter N (cliques have 2N+1 vertices).
        #[arg(long = "clique-param", short = 'N', default_value_t = 1)]
        clique_param: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor-critical graph from an odd ear sequence.
    Fc {
        #[arg(required = true)]
        ears: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random graph with edge probability NUM/DEN.
    Random {
        n: usize,
        p: String,
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("{path}: {source}")]
    Certificate { path: PathBuf, source: CertificateError },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid generator parameters: {0}")]
    Gen(#[from] GenError),
    #[error("precondition violated: {0}")]
    Precondition(SolveError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. }
            | CliError::Graph { .. }
            | CliError::Certificate { .. }
            | CliError::Argument(_)
            | CliError::Gen(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Internal(msg) => CliError::Internal(format!("internal error: {msg}")),
            other => CliError::Precondition(other),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|source| CliError::Graph { path: path.to_owned(), source })
}

fn list(vs: &[usize]) -> String {
    let items: Vec<String> = vs.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

fn cmd_ged(file: &Path) -> Result<u8, CliError> {
    let g = load_graph(file)?;
    let d = decompose(&g);
    println!("X={}", list(d.x()));
    println!("Y={}", list(d.y()));
    println!("Z={}", list(d.z()));
    let comps: Vec<String> = d.components().iter().map(|k| list(k)).collect();
    println!("components=[{}]", comps.join(","));
    Ok(0)
}

fn cmd_stable(file: &Path) -> Result<u8, CliError> {
    let g = load_graph(file)?;
    if is_stable(&g) {
        println!("stable");
        Ok(0)
    } else {
        println!("unstable");
        Ok(1)
    }
}

fn cmd_stabilize(file: &Path, algo: Algo, out: Option<&Path>) -> Result<u8, CliError> {
    let g = load_graph(file)?;
    let s: StabilizerSolution = match algo {
        Algo::ExactFpt => solve_exact(&g)?,
        Algo::FactorCritical => solve_factor_critical(&g)?,
        Algo::Approx => solve_approx(&g)?,
        Algo::TutteAll => solve_tutte_all(&g)?.solution,
        Algo::Oracle => solve_oracle(&g)?,
    };
    let verdict = verify_certificate(&g, &s);
    if !verdict.is_valid() {
        return Err(CliError::Internal(format!("internal error: solver emitted an invalid certificate: {verdict}")));
    }
    let text = serialize_solution(&s);
    println!("cost2={}", s.cost().doubled());
    match out {
        Some(path) => write(path, &format!("{text}\n"))?,
        None => println!("certificate={text}"),
    }
    Ok(0)
}

fn cmd_verify(file: &Path, cert: &Path) -> Result<u8, CliError> {
    let g = load_graph(file)?;
    let s = parse_solution(&read(cert)?).map_err(|source| CliError::Certificate { path: cert.to_owned(), source })?;
    let verdict = verify_certificate(&g, &s);
    if verdict.is_valid() {
        println!("valid");
        println!("cost2={}", s.cost().doubled());
        Ok(0)
    } else {
        println!("invalid");
        for v in &verdict.violations {
            println!("violation={v}");
        }
        Ok(1)
    }
}

fn named_base(spec: &str) -> Option<Result<Graph, CliError>> {
    let (shape, size) = spec.split_once(':')?;
    let size = match size.parse::<usize>() {
        Ok(s) => s,
        Err(_) => return Some(Err(CliError::Argument(format!("bad size in base {spec:?}")))),
    };
    let g = match shape {
        "path" => Graph::path(size),
        "cycle" if size >= 3 => Graph::cycle(size),
        "complete" => Graph::complete(size),
        "star" => Graph::star(size),
        _ => return Some(Err(CliError::Argument(format!("unknown base shape {spec:?}")))),
    };
    Some(Ok(g))
}

fn parse_fraction(p: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Argument(format!("probability {p:?} is not of the form NUM/DEN"));
    let (num, den) = p.split_once('/').ok_or_else(bad)?;
    Ok((num.trim().parse().map_err(|_| bad())?, den.trim().parse().map_err(|_| bad())?))
}

fn parse_set(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| CliError::Argument(format!("bad set element {t:?}"))))
        .collect()
}

/// Writes the instance and its metadata, or prints the instance.
fn emit(g: &Graph, metadata: String, out: Option<&Path>) -> Result<u8, CliError> {
    match out {
        Some(path) => {
            write(path, &g.to_edge_list())?;
            let mut meta = path.as_os_str().to_owned();
            meta.push(".meta.json");
            write(Path::new(&meta), &format!("{metadata}\n"))?;
            println!("n={}", g.n());
            println!("m={}", g.edge_count());
        }
        None => print!("{}", g.to_edge_list()),
    }
    Ok(0)
}

fn cmd_gen(kind: &GenKind) -> Result<u8, CliError> {
    match kind {
        GenKind::Mkec { base, k, q, out } => {
            let base = match named_base(base) {
                Some(g) => g?,
                None => load_graph(Path::new(base))?,
            };
            let inst = gen_mkec(&base, *k, *q)?;
            emit(&inst.graph, inst.metadata_json(), out.as_deref())
        }
        GenKind::Setcover { sets, elems, clique_param, out } => {
            let sets = sets.iter().map(|s| parse_set(s)).collect::<Result<Vec<_>, _>>()?;
            let inst = gen_setcover(&sets, *elems, *clique_param)?;
            emit(&inst.graph, inst.metadata_json(), out.as_deref())
        }
        GenKind::Fc { ears, seed, out } => {
            let g = gen_factor_critical(ears, *seed)?;
            emit(&g, json!({ "ears": ears, "seed": seed }).to_string(), out.as_deref())
        }
        GenKind::Random { n, p, seed, out } => {
            let (num, den) = parse_fraction(p)?;
            let g = gen_random(*n, num, den, *seed)?;
            let meta = json!({ "n": n, "p_num": num, "p_den": den, "seed": seed });
            emit(&g, meta.to_string(), out.as_deref())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Ged { file } => cmd_ged(&file),
        Command::Stable { file } => cmd_stable(&file),
        Command::Stabilize { file, algo, out } => cmd_stabilize(&file, algo, out.as_deref()),
        Command::Verify { file, cert } => cmd_verify(&file, &cert),
        Command::Gen { kind } => cmd_gen(&kind),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
