use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facetlab::collapse::collapse_small_set;
use facetlab::generators::{named_instance, GenParams, INSTANCE_NAMES};
use facetlab::io;
use facetlab::linalg::{betti_reduced, rank};
use facetlab::structures::{dual, enumerate_circuits};
use facetlab::verify::{report_render, run_check, CheckSpec, ReportFormat};
use facetlab::{Complex, FacetGraph, Field, Hypertree, Simplex};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "facetlab",
    version,
    about = "Facet graphs, hypertrees, hypercuts and collapses over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named instance as JSON.
    Gen(GenArgs),
    /// Reduced Betti numbers of the closure of a complex or chain file.
    Betti {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dim: Option<isize>,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Rank of the boundary map out of dimension `--dim`.
    Rank {
        file: PathBuf,
        #[arg(long)]
        dim: isize,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Facet graph statistics of the faces in a file.
    Graph {
        file: PathBuf,
        /// Also compute the vertex connectivity.
        #[arg(long)]
        connectivity: bool,
        /// Faces to delete, e.g. `1-2-3,2-3-4`.
        #[arg(long, value_delimiter = ',', value_parser = parse_simplex)]
        remove: Vec<Simplex>,
        /// Ridges whose edges are deleted, e.g. `1-2,2-3`.
        #[arg(long, value_delimiter = ',', value_parser = parse_simplex)]
        remove_labels: Vec<Simplex>,
    },
    /// Collapse certificate for a set of at most `d` simplices.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Signed complement of a chain.
    Dual { file: PathBuf },
    /// All circuits supported on the faces of a file, one chain per line.
    Circuits {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Build a hypertree.
    Hypertree {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TreeKind::Greedy)]
        kind: TreeKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a registered property check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    name: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    id: String,
    /// A value, an inclusive range `a..b` or a list `a,b,c`.
    #[arg(long, value_parser = parse_list::<u32>)]
    n: Option<List<u32>>,
    #[arg(long, value_parser = parse_list::<usize>)]
    d: Option<List<usize>>,
    #[arg(long, value_parser = parse_list::<u64>)]
    p: Option<List<u64>>,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeKind {
    Star,
    Greedy,
    Perturbed,
    Random,
}

fn parse_simplex(s: &str) -> Result<Simplex, String> {
    let verts = s
        .split('-')
        .map(|v| v.trim().parse::<u32>().map_err(|e| format!("`{s}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Simplex::new(verts).map_err(|e| e.to_string())
}

#[derive(Clone)]
struct List<T>(Vec<T>);

fn parse_list<T: TryFrom<u64>>(s: &str) -> Result<List<T>, String> {
    let one = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}"));
    let values: Vec<u64> = match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (one(a)?, one(b)?);
            if a > b {
                return Err(format!("empty range `{s}`"));
            }
            (a..=b).collect()
        }
        None => s.split(',').map(one).collect::<Result<_, _>>()?,
    };
    values
        .into_iter()
        .map(|v| T::try_from(v).map_err(|_| format!("`{v}` out of range")))
        .collect::<Result<_, _>>()
        .map(List)
}

enum Failure {
    Domain(String),
    Checks,
}

impl From<facetlab::Error> for Failure {
    fn from(e: facetlab::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn field(p: u64) -> Result<Field, Failure> {
    Ok(Field::new(p)?)
}

fn closure_of(path: &Path) -> Result<Complex, Failure> {
    let doc = io::faces_from_json(&read(path)?)?;
    Ok(Complex::closure(doc.faces, doc.n)?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Gen(a) => {
            let params = GenParams {
                n: a.n,
                d: a.d,
                k: a.k,
                seed: a.seed,
            };
            let inst = named_instance(&a.name, &params, field(a.p)?).map_err(|e| {
                Failure::Domain(format!("{e} (instances: {})", INSTANCE_NAMES.join(", ")))
            })?;
            let text = inst.to_json();
            match a.output {
                Some(path) => {
                    std::fs::write(&path, text)
                        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Betti { file, dim, p } => {
            let k = closure_of(&file)?;
            let f = field(p)?;
            match dim {
                Some(d) => Ok(format!("{}\n", betti_reduced(&k, d, f))),
                None => Ok((-1..=k.dim())
                    .map(|d| format!("dim {d}: {}\n", betti_reduced(&k, d, f)))
                    .collect()),
            }
        }
        Command::Rank { file, dim, p } => {
            let k = closure_of(&file)?;
            Ok(format!("{}\n", rank(&k.boundary_matrix(dim, field(p)?))))
        }
        Command::Graph {
            file,
            connectivity,
            remove,
            remove_labels,
        } => {
            let doc = io::faces_from_json(&read(&file)?)?;
            let g = FacetGraph::build(&doc.faces)?;
            let removed = remove
                .iter()
                .map(|s| {
                    g.index_of(s)
                        .ok_or_else(|| Failure::Domain(format!("{s} is not a face of the input")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let kappa = connectivity.then(|| g.vertex_connectivity());
            let out = json!({
                "kappa": kappa,
                "components": g.components_after_mixed_removal(&removed, &remove_labels),
                "order": g.graph().order(),
                "size": g.graph().size(),
            });
            Ok(format!("{out}\n"))
        }
        Command::Collapse { file, d } => {
            let doc = io::faces_from_json(&read(&file)?)?;
            let cert = collapse_small_set(d, &doc.faces)?;
            Ok(io::certificate_to_json(&cert))
        }
        Command::Dual { file } => {
            let doc = io::chain_from_json(&read(&file)?)?;
            Ok(io::chain_to_json(&dual(&doc.chain, doc.n)?, doc.n))
        }
        Command::Circuits { file, p } => {
            let doc = io::faces_from_json(&read(&file)?)?;
            let circuits = enumerate_circuits(&doc.faces, field(p)?)?;
            Ok(circuits
                .iter()
                .map(|c| io::chain_to_json(c, doc.n))
                .collect())
        }
        Command::Hypertree {
            n,
            d,
            p,
            kind,
            seed,
        } => {
            let f = field(p)?;
            let t = match kind {
                TreeKind::Star => Hypertree::star(n, d, f)?,
                TreeKind::Greedy => Hypertree::greedy(n, d, f)?,
                TreeKind::Perturbed => Hypertree::perturbed(n, d, f)?,
                TreeKind::Random => Hypertree::random(n, d, f, seed)?,
            };
            let k = Complex::closure(t.simplices().iter().cloned(), n)?;
            Ok(io::complex_to_json(&k, f))
        }
        Command::Verify(a) => {
            let spec = CheckSpec {
                id: a.id,
                n: a.n.map(|l| l.0),
                d: a.d.map(|l| l.0),
                p: a.p.map(|l| l.0),
                seeds: a.seeds,
                exhaustive: a.exhaustive,
            };
            let report = run_check(&spec)?;
            let format = if a.json {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            };
            print!("{}", report_render(&report, format));
            if report.passed {
                Ok(String::new())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("FACETLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("FACETLAB_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("facetlab: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("facetlab: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => ExitCode::from(3),
    }
}
