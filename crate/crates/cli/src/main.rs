//! `nhdual`: Alexander duals, homology, NH-manifold recognition, collapses,
//! generators and verification suites from the command line.
//!
//! Exit status: 0 success or pass, 1 verification failure (including a
//! definite "no" from `collapse`), 2 usage or input error, 3 undecided
//! within budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use nhdual_core::alexander::dual_over;
use nhdual_core::collapse::{collapse_to_dimension, collapses_to, is_collapsible, SearchBudget};
use nhdual_core::document::{parse_document, serialize_document, Labels, Parsed};
use nhdual_core::generators::{
    nh_double_dual, reference, shelled_ball, shelled_sphere, standard, stellar_sphere, SourceKind, StandardKind,
};
use nhdual_core::homology::betti;
use nhdual_core::recognition::{classify_nh, Kind};
use nhdual_core::{GroundSet, Simplex, SimplicialComplex, TriState};
use nhdual_harness::run_suite;

mod report;

#[derive(Parser)]
#[command(name = "nhdual", version, about = "Alexander duals of NH-balls and NH-spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Complex document to read.
    #[arg(long)]
    input: PathBuf,
    /// Where to write the result; standard output by default.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander dual over the document's ground set (or its vertices),
    /// enlarged by the new vertices in --tau.
    Dual {
        #[command(flatten)]
        io: Io,
        /// Comma-separated labels of new vertices.
        #[arg(long, value_delimiter = ',')]
        tau: Vec<String>,
    },
    /// The dual of the dual, `(K^τ)^σ`.
    DoubleDual {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_delimiter = ',')]
        tau: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<String>,
    },
    /// Reduced integral and mod-2 homology.
    Homology {
        #[command(flatten)]
        io: Io,
    },
    /// NH-ball / NH-sphere recognition with a witness.
    Classify {
        #[command(flatten)]
        io: Io,
        /// Node budget for each collapse search.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Collapse to a point, onto --target, or down to --dim.
    Collapse {
        #[command(flatten)]
        io: Io,
        /// Subcomplex document using the same labels as the input.
        #[arg(long, conflicts_with = "dim")]
        target: Option<PathBuf>,
        /// Collapse away every simplex above this dimension.
        #[arg(long)]
        dim: Option<i32>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Write a generated complex.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        dim: i32,
        /// Required for every randomized kind.
        #[arg(long)]
        seed: Option<u64>,
        /// Facets of the shelled ball (or of the ball bounding the sphere).
        #[arg(long, default_value_t = 4)]
        facets: usize,
        /// Stellar subdivision steps.
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Dimensions of the fresh simplices τ and σ of a double dual; −1 is ∅.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        tau_dim: i32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        sigma_dim: i32,
        /// Reference triangulation name, e.g. rp2_6 or boundary_sphere_3.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite and write its report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        /// Number of cases; 0 runs an exhaustive suite completely.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Simplex,
    BoundarySphere,
    ShelledBall,
    ShelledSphere,
    StellarSphere,
    NhBall,
    NhSphere,
    Reference,
}

/// A command's result: text to write and the exit status to return.
struct Done {
    text: String,
    status: u8,
}

fn ok(text: String) -> Done {
    Done { text, status: 0 }
}

fn json(value: &Value, status: u8) -> Done {
    Done {
        text: serde_json::to_string_pretty(value).expect("reports serialize"),
        status,
    }
}

type Failure = String;

fn read(path: &Path) -> Result<Parsed, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Interns new labels; they must not name vertices the complex already has.
fn fresh(labels: &mut Labels, names: &[String], taken: Simplex) -> Result<Simplex, Failure> {
    let mut s = Simplex::EMPTY;
    for name in names {
        let v = labels.intern(name).map_err(|e| e.to_string())?;
        if taken.contains(v) || s.contains(v) {
            return Err(format!("vertex `{name}` is already in use"));
        }
        s = s.with(v);
    }
    Ok(s)
}

fn ground_of(p: &Parsed) -> Simplex {
    p.ground.map_or(p.complex.vertex_set(), |g| g.simplex())
}

fn dual_with(k: &SimplicialComplex, ground: Simplex) -> Result<SimplicialComplex, Failure> {
    dual_over(k, GroundSet::new(ground)).map_err(|e| e.to_string())
}

fn run_dual(io: &Io, tau: &[String]) -> Result<Done, Failure> {
    let mut p = read(&io.input)?;
    let base = ground_of(&p);
    let tau = fresh(&mut p.labels, tau, base)?;
    let ground = base.union(tau);
    let d = dual_with(&p.complex, ground)?;
    Ok(ok(serialize_document(&d, Some(GroundSet::new(ground)), &p.labels)))
}

fn run_double_dual(io: &Io, tau: &[String], sigma: &[String]) -> Result<Done, Failure> {
    let mut p = read(&io.input)?;
    let base = ground_of(&p);
    let tau = fresh(&mut p.labels, tau, base)?;
    let first = dual_with(&p.complex, base.union(tau))?;
    let sigma = fresh(&mut p.labels, sigma, base.union(tau))?;
    let ground = first.vertex_set().union(sigma);
    let second = dual_with(&first, ground)?;
    Ok(ok(serialize_document(&second, Some(GroundSet::new(ground)), &p.labels)))
}

fn run_homology(io: &Io) -> Result<Done, Failure> {
    let p = read(&io.input)?;
    let profile = betti(&p.complex).map_err(|e| e.to_string())?;
    Ok(json(&report::homology(&p.complex, &profile), 0))
}

fn run_classify(io: &Io, budget: usize) -> Result<Done, Failure> {
    let p = read(&io.input)?;
    let c = classify_nh(&p.complex, SearchBudget::with_nodes(budget)).map_err(|e| e.to_string())?;
    let status = if c.kind == Kind::Unknown { 3 } else { 0 };
    Ok(json(&report::classification(&c, &p.labels), status))
}

/// Reads a subcomplex document and maps its labels onto `labels`.
fn read_target(path: &Path, labels: &Labels) -> Result<SimplicialComplex, Failure> {
    let t = read(path)?;
    for v in t.complex.vertices() {
        let name = t.labels.label(v);
        if labels.get(&name).is_none() {
            return Err(format!("{}: vertex `{name}` is not in the input", path.display()));
        }
    }
    Ok(t.complex.relabel(|v| labels.get(&t.labels.label(v)).expect("checked above")))
}

fn run_collapse(io: &Io, target: Option<&Path>, dim: Option<i32>, budget: usize) -> Result<Done, Failure> {
    let p = read(&io.input)?;
    let budget = SearchBudget::with_nodes(budget);
    let verdict = match (target, dim) {
        (Some(path), _) => collapses_to(&p.complex, &read_target(path, &p.labels)?, budget),
        (None, Some(d)) => collapse_to_dimension(&p.complex, d, budget),
        (None, None) => is_collapsible(&p.complex, budget),
    }
    .map_err(|e| e.to_string())?;
    let status = match verdict {
        TriState::Yes(_) => 0,
        TriState::No(_) => 1,
        TriState::Unknown(_) => 3,
    };
    Ok(json(&report::collapse(&verdict, &p.labels), status))
}

struct GenArgs {
    kind: GenKind,
    dim: i32,
    seed: Option<u64>,
    facets: usize,
    steps: usize,
    tau_dim: i32,
    sigma_dim: i32,
    name: Option<String>,
}

fn run_generate(a: &GenArgs) -> Result<Done, Failure> {
    let seed = || a.seed.ok_or_else(|| "this kind is randomized and needs --seed".to_string());
    let dim = || usize::try_from(a.dim).map_err(|_| format!("--dim {} must be nonnegative here", a.dim));
    let k = match a.kind {
        GenKind::Simplex => standard(StandardKind::Simplex, a.dim),
        GenKind::BoundarySphere => standard(StandardKind::BoundarySphere, a.dim),
        GenKind::ShelledBall => shelled_ball(dim()?, a.facets, seed()?),
        GenKind::ShelledSphere => shelled_sphere(dim()?, a.facets, seed()?),
        GenKind::StellarSphere => stellar_sphere(dim()?, a.steps, seed()?),
        GenKind::NhBall => nh_double_dual(SourceKind::Ball, dim()?, a.tau_dim, a.sigma_dim, seed()?).map(|s| s.complex),
        GenKind::NhSphere => {
            nh_double_dual(SourceKind::Sphere, dim()?, a.tau_dim, a.sigma_dim, seed()?).map(|s| s.complex)
        }
        GenKind::Reference => reference(a.name.as_deref().ok_or("reference needs --name")?),
    }
    .map_err(|e| e.to_string())?;
    Ok(ok(serialize_document(&k, None, &Labels::standard())))
}

fn run_verify(suite: &str, seed: u64, count: usize) -> Result<Done, Failure> {
    let r = run_suite(suite, seed, count).map_err(|e| e.to_string())?;
    let status = if !r.failures.is_empty() {
        1
    } else if r.unknowns > 0 {
        3
    } else {
        0
    };
    Ok(json(&serde_json::to_value(&r).expect("reports serialize"), status))
}

fn dispatch(cmd: Command) -> (Result<Done, Failure>, Option<PathBuf>) {
    match cmd {
        Command::Dual { io, tau } => (run_dual(&io, &tau), io.output),
        Command::DoubleDual { io, tau, sigma } => (run_double_dual(&io, &tau, &sigma), io.output),
        Command::Homology { io } => (run_homology(&io), io.output),
        Command::Classify { io, budget } => (run_classify(&io, budget), io.output),
        Command::Collapse {
            io,
            target,
            dim,
            budget,
        } => (run_collapse(&io, target.as_deref(), dim, budget), io.output),
        Command::Generate {
            kind,
            dim,
            seed,
            facets,
            steps,
            tau_dim,
            sigma_dim,
            name,
            output,
        } => {
            let args = GenArgs {
                kind,
                dim,
                seed,
                facets,
                steps,
                tau_dim,
                sigma_dim,
                name,
            };
            (run_generate(&args), output)
        }
        Command::Verify {
            suite,
            seed,
            count,
            output,
        } => (run_verify(&suite, seed, count), output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = dispatch(cli.command);
    match result {
        Ok(done) => {
            let text = done.text + "\n";
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(done.status)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
