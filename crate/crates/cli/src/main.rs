//! `anzahl`: command-line front end for the `anzahl` library.

mod render;

use std::path::Path;
use std::process::ExitCode;

use anzahl::counting::{count_subspaces, CountQuery};
use anzahl::geometry::{self, Kind, PointSet};
use anzahl::oracle::{self, CheckReport};
use anzahl::singular::SingularSpace;
use anzahl::subspace::{dimension_formula_status, duality_laws};
use anzahl::wire::{self, count_to_json};
use anzahl::{Error, LinearSubset, Matrix, RingSpec, Subspace};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "anzahl",
    version,
    about = "Linear algebra, subspace counts and arcs over finite rings"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    output: Format,
    /// Node budget for searches and enumerations.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Ring structure.
    Ring {
        #[command(subcommand)]
        op: RingOp,
    },
    /// Rank, completion and inverses of a matrix.
    Matrix {
        #[command(subcommand)]
        op: MatrixOp,
    },
    /// Canonical forms, meets, joins and duals of subspaces.
    Subspace {
        #[command(subcommand)]
        op: SubspaceOp,
    },
    /// Closed-form counts.
    Count {
        #[command(subcommand)]
        op: CountOp,
    },
    /// Types of subspaces of the singular space R^(n+k).
    Singular {
        #[command(subcommand)]
        op: SingularOp,
    },
    /// Arcs in R^n.
    Arc {
        #[command(subcommand)]
        op: GeometryOp,
    },
    /// Caps in R^n.
    Cap {
        #[command(subcommand)]
        op: GeometryOp,
    },
    /// Check formulas and structural properties against brute force.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Default)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Default,
    Counts,
    Geometry,
    Algebra,
}

#[derive(Args)]
struct RingArg {
    /// Ring spec such as Z12 or Z4xZ2.
    #[arg(long)]
    ring: String,
}

#[derive(Args)]
struct MatrixInput {
    /// Ring spec; optional when the input carries its own.
    #[arg(long)]
    ring: Option<String>,
    /// Matrix as inline JSON or a path to a JSON file.
    #[arg(long)]
    matrix: String,
}

#[derive(Args)]
struct PairInput {
    #[arg(long)]
    ring: Option<String>,
    /// First subspace (inline JSON or file).
    #[arg(long)]
    a: String,
    /// Second subspace (inline JSON or file).
    #[arg(long)]
    b: String,
}

#[derive(Subcommand)]
enum RingOp {
    Info {
        #[command(flatten)]
        ring: RingArg,
        /// Size of the general linear group reported.
        #[arg(short, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum MatrixOp {
    Rank(MatrixInput),
    Complete(MatrixInput),
    Invert(MatrixInput),
    RightInverse(MatrixInput),
}

#[derive(Subcommand)]
enum SubspaceOp {
    Canon(MatrixInput),
    Meet(PairInput),
    Join(PairInput),
    Dual(MatrixInput),
    Dimcheck(PairInput),
}

#[derive(Subcommand)]
enum CountOp {
    /// m-subspaces of R^n.
    Subspaces {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// m1-subspaces inside a fixed m-subspace.
    In {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        m1: usize,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// m-subspaces containing a fixed m1-subspace.
    Over {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        m1: usize,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Full-rank m x n matrices.
    Fullrank {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Order of GL_n(R).
    Gl {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        n: usize,
    },
    /// (m, t)-subspaces of R^(n+k).
    Mt {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        mt: MtArgs,
    },
    /// (m1, t1)-subspaces inside a fixed (m, t)-subspace.
    MtIn {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        nested: NestedMtArgs,
    },
    /// (m, t)-subspaces containing a fixed (m1, t1)-subspace.
    MtOver {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        nested: NestedMtArgs,
    },
}

#[derive(Args)]
struct MtArgs {
    #[arg(short)]
    m: usize,
    #[arg(short)]
    t: usize,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
}

#[derive(Args)]
struct NestedMtArgs {
    #[arg(long)]
    m1: usize,
    #[arg(long)]
    t1: usize,
    #[command(flatten)]
    outer: MtArgs,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
}

#[derive(Subcommand)]
enum SingularOp {
    /// Type of the subspace spanned by the rows of a matrix.
    Type {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// A transform taking a typed subspace to the standard one.
    Canon {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Counts by type; all types when -t is omitted.
    Count {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        t: Option<usize>,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Enumerate (m, t)-subspaces, or the type census when -t is omitted.
    Enumerate {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        t: Option<usize>,
        #[command(flatten)]
        space: SpaceArgs,
    },
}

#[derive(Args)]
struct PointsInput {
    #[arg(long)]
    ring: Option<String>,
    /// Point set as inline JSON or a path to a JSON file.
    #[arg(long)]
    points: String,
}

#[derive(Subcommand)]
enum GeometryOp {
    /// Whether the points form the set.
    Check(PointsInput),
    /// Completeness, decided directly and through residue fields.
    Complete(PointsInput),
    /// Points that can be added.
    Extend(PointsInput),
    /// Lexicographically least set of maximum size.
    Search {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        n: usize,
    },
    /// Maximum size from the known field values.
    Max {
        #[command(flatten)]
        ring: RingArg,
        #[arg(short)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Mismatch(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::RingSpec(..) | Error::Format(_) | Error::InvalidArgument(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Domain(e),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn parse_ring(text: &str) -> Result<RingSpec, Failure> {
    Ok(RingSpec::parse(text)?)
}

fn opt_ring(text: &Option<String>) -> Result<Option<RingSpec>, Failure> {
    text.as_deref().map(parse_ring).transpose()
}

/// Inline JSON, or the contents of a file when `arg` names one.
fn load(arg: &str) -> Result<Value, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid JSON input: {e}")))
}

/// A matrix, or the matrix inside a subspace document.
fn load_matrix(input: &MatrixInput) -> Result<Matrix, Failure> {
    let v = load(&input.matrix)?;
    let ring = opt_ring(&input.ring)?;
    match v.get("matrix") {
        Some(inner) => {
            let outer = v
                .get("ring")
                .and_then(Value::as_str)
                .map(parse_ring)
                .transpose()?;
            if let (Some(a), Some(b)) = (&outer, &ring) {
                if a != b {
                    return Err(Error::RingMismatch.into());
                }
            }
            Ok(wire::matrix_from_json(inner, outer.or(ring).as_ref())?)
        }
        None => Ok(wire::matrix_from_json(&v, ring.as_ref())?),
    }
}

fn load_subspace(arg: &str, ring: Option<&RingSpec>) -> Result<Subspace, Failure> {
    Ok(wire::subspace_from_json(&load(arg)?, ring)?)
}

fn load_pair(input: &PairInput) -> Result<(Subspace, Subspace), Failure> {
    let ring = opt_ring(&input.ring)?;
    Ok((
        load_subspace(&input.a, ring.as_ref())?,
        load_subspace(&input.b, ring.as_ref())?,
    ))
}

fn load_points(input: &PointsInput) -> Result<PointSet, Failure> {
    Ok(wire::point_set_from_json(
        &load(&input.points)?,
        opt_ring(&input.ring)?.as_ref(),
    )?)
}

fn linear_subset_json(s: &LinearSubset) -> Value {
    let free = s.as_subspace().ok();
    json!({
        "dim": s.dim(),
        "is_subspace": free.is_some(),
        "generators": wire::matrix_to_json(s.generators()),
        "subspace": free.as_ref().map(wire::subspace_to_json),
    })
}

fn count(query: CountQuery) -> Value {
    count_to_json(&query.to_string(), &query.formula())
}

fn ring_info(ring: &RingSpec, n: usize) -> Value {
    let components: Vec<Value> = ring
        .components()
        .iter()
        .map(|c| {
            json!({
                "ring": c.to_string(),
                "prime": c.prime(),
                "exponent": c.exponent(),
                "order": c.order(),
                "residue_field_order": c.residue_order(),
            })
        })
        .collect();
    let gl = CountQuery::Gl {
        ring: ring.clone(),
        n,
    }
    .formula();
    json!({
        "ring": ring.to_string(),
        "order": ring.order(),
        "units": ring.unit_count(),
        "is_field": ring.is_field(),
        "coprime_components": ring.is_coprime(),
        "components": components,
        "gl": { "n": n, "order": gl.to_string() },
    })
}

fn matrix_op(op: &MatrixOp) -> Outcome {
    Ok(match op {
        MatrixOp::Rank(input) => {
            let a = load_matrix(input)?;
            let rank = a.mccoy_rank();
            json!({ "rows": a.rows(), "cols": a.cols(), "rank": rank, "full_rank": rank == a.rows() })
        }
        MatrixOp::Complete(input) => {
            json!({ "completion": wire::matrix_to_json(&load_matrix(input)?.completion()?) })
        }
        MatrixOp::Invert(input) => {
            json!({ "inverse": wire::matrix_to_json(&load_matrix(input)?.gl_inverse()?) })
        }
        MatrixOp::RightInverse(input) => {
            json!({ "right_inverse": wire::matrix_to_json(&load_matrix(input)?.right_inverse()?) })
        }
    })
}

fn subspace_op(op: &SubspaceOp) -> Outcome {
    Ok(match op {
        SubspaceOp::Canon(input) => {
            wire::subspace_to_json(&Subspace::from_matrix(&load_matrix(input)?)?)
        }
        SubspaceOp::Dual(input) => {
            wire::subspace_to_json(&Subspace::from_matrix(&load_matrix(input)?)?.dual())
        }
        SubspaceOp::Meet(input) => {
            let (a, b) = load_pair(input)?;
            linear_subset_json(&a.meet(&b)?)
        }
        SubspaceOp::Join(input) => {
            let (a, b) = load_pair(input)?;
            linear_subset_json(&a.join(&b)?)
        }
        SubspaceOp::Dimcheck(input) => {
            let (a, b) = load_pair(input)?;
            let report = dimension_formula_status(&a, &b)?;
            let duality = if report.formula_holds {
                Some(duality_laws(&a, &b)?)
            } else {
                None
            };
            let mut v = serde_json::to_value(&report).expect("plain struct");
            v["inequalities_hold"] = json!(report.inequalities_hold());
            v["duality"] = serde_json::to_value(duality).expect("plain struct");
            v
        }
    })
}

fn count_op(op: &CountOp) -> Outcome {
    let nested = |ring: &RingArg, a: &NestedMtArgs| -> Result<_, Failure> {
        let o = &a.outer;
        Ok((parse_ring(&ring.ring)?, a.m1, a.t1, o.m, o.t, o.n, o.k))
    };
    let query = match op {
        CountOp::Subspaces { ring, m, n } => CountQuery::Subspaces {
            ring: parse_ring(&ring.ring)?,
            m: *m,
            n: *n,
        },
        CountOp::In { ring, m1, m, n } => CountQuery::SubspacesIn {
            ring: parse_ring(&ring.ring)?,
            m1: *m1,
            m: *m,
            n: *n,
        },
        CountOp::Over { ring, m1, m, n } => CountQuery::SubspacesOver {
            ring: parse_ring(&ring.ring)?,
            m1: *m1,
            m: *m,
            n: *n,
        },
        CountOp::Fullrank { ring, m, n } => CountQuery::FullRank {
            ring: parse_ring(&ring.ring)?,
            m: *m,
            n: *n,
        },
        CountOp::Gl { ring, n } => CountQuery::Gl {
            ring: parse_ring(&ring.ring)?,
            n: *n,
        },
        CountOp::Mt { ring, mt } => CountQuery::Mt {
            ring: parse_ring(&ring.ring)?,
            m: mt.m,
            t: mt.t,
            n: mt.n,
            k: mt.k,
        },
        CountOp::MtIn { ring, nested: a } => {
            let (ring, m1, t1, m, t, n, k) = nested(ring, a)?;
            CountQuery::MtIn {
                ring,
                m1,
                t1,
                m,
                t,
                n,
                k,
            }
        }
        CountOp::MtOver { ring, nested: a } => {
            let (ring, m1, t1, m, t, n, k) = nested(ring, a)?;
            CountQuery::MtOver {
                ring,
                m1,
                t1,
                m,
                t,
                n,
                k,
            }
        }
    };
    Ok(count(query))
}

fn singular_op(op: &SingularOp, budget: u64) -> Outcome {
    Ok(match op {
        SingularOp::Type { input, space } => {
            let a = load_matrix(input)?;
            let s = SingularSpace::new(a.ring(), space.n, space.k);
            wire::typed_to_json(&s.type_of(&Subspace::from_matrix(&a)?)?)
        }
        SingularOp::Canon { input, space } => {
            let a = load_matrix(input)?;
            let s = SingularSpace::new(a.ring(), space.n, space.k);
            let typed = s.type_of(&Subspace::from_matrix(&a)?)?;
            let (t, standard) = s.canonical_mt_transform(&typed)?;
            json!({
                "m": typed.m,
                "t": typed.t,
                "transform": wire::matrix_to_json(&t),
                "standard": wire::subspace_to_json(&standard),
            })
        }
        SingularOp::Count {
            ring,
            m,
            t: Some(t),
            space,
        } => count(CountQuery::Mt {
            ring: parse_ring(&ring.ring)?,
            m: *m,
            t: *t,
            n: space.n,
            k: space.k,
        }),
        SingularOp::Count {
            ring,
            m,
            t: None,
            space,
        } => {
            let ring = parse_ring(&ring.ring)?;
            let (n, k) = (space.n, space.k);
            let by_type: Vec<_> = (0..=(*m).min(k))
                .map(|t| {
                    CountQuery::Mt {
                        ring: ring.clone(),
                        m: *m,
                        t,
                        n,
                        k,
                    }
                    .formula()
                })
                .collect();
            let total = count_subspaces(*m, n + k, &ring);
            let untyped = by_type.iter().fold(total.clone(), |rest, c| rest - c);
            json!({
                "ring": ring.to_string(),
                "m": m,
                "n": n,
                "k": k,
                "typed": by_type.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "untyped": untyped.to_string(),
                "total": total.to_string(),
            })
        }
        SingularOp::Enumerate {
            ring,
            m,
            t: Some(t),
            space,
        } => {
            let ring = parse_ring(&ring.ring)?;
            let found = oracle::enumerate_mt_subspaces(*m, *t, space.n, space.k, &ring, budget)?;
            Value::Array(found.iter().map(wire::typed_to_json).collect())
        }
        SingularOp::Enumerate {
            ring,
            m,
            t: None,
            space,
        } => {
            let ring = parse_ring(&ring.ring)?;
            let census = oracle::type_census(*m, space.n, space.k, &ring, budget)?;
            serde_json::to_value(census).expect("plain struct")
        }
    })
}

fn vectors_json(points: &[Subspace]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| wire::vector_to_json(p.ring(), &p.display().row(0)))
            .collect(),
    )
}

fn geometry_op(kind: Kind, op: &GeometryOp, budget: u64) -> Outcome {
    Ok(match op {
        GeometryOp::Check(input) => {
            let ps = load_points(input)?;
            let valid = match kind {
                Kind::Arc => geometry::is_arc(&ps)?,
                Kind::Cap => geometry::is_cap(&ps)?,
            };
            json!({ "kind": kind, "size": ps.len(), "valid": valid })
        }
        GeometryOp::Complete(input) => {
            let c = geometry::completeness(kind, &load_points(input)?)?;
            json!({ "kind": kind, "complete": c.direct, "direct": c.direct, "via_projection": c.via_projection })
        }
        GeometryOp::Extend(input) => {
            let ps = load_points(input)?;
            let extra = match kind {
                Kind::Arc => geometry::extend_arc(&ps)?,
                Kind::Cap => geometry::extend_cap(&ps)?,
            };
            json!({ "kind": kind, "count": extra.len(), "points": vectors_json(&extra) })
        }
        GeometryOp::Search { ring, n } => {
            let ring = parse_ring(&ring.ring)?;
            let found = match kind {
                Kind::Arc => geometry::search_max_arc(*n, &ring, budget)?,
                Kind::Cap => geometry::search_max_cap(*n, &ring, budget)?,
            };
            json!({
                "kind": kind,
                "size": found.set.len(),
                "nodes": found.nodes,
                "set": wire::point_set_to_json(&found.set),
            })
        }
        GeometryOp::Max { ring, n } => {
            let ring = parse_ring(&ring.ring)?;
            let value = match kind {
                Kind::Arc => geometry::max_arc_size_formula(*n, &ring)?,
                Kind::Cap => geometry::max_cap_size_formula(*n, &ring)?,
            };
            json!({
                "kind": kind,
                "ring": ring.to_string(),
                "n": n,
                "max_size": value.map(|v| v.to_string()),
            })
        }
    })
}

fn verify(suite: Suite, budget: Option<u64>) -> Outcome {
    let budget = budget.unwrap_or(oracle::DEFAULT_BUDGET);
    let mut reports = Vec::new();
    let mut passed = true;
    if matches!(suite, Suite::Default | Suite::Counts) {
        for r in oracle::verify_counts(&oracle::count_suite(), budget) {
            passed &= r.matched;
            reports.push(serde_json::to_value(r).expect("plain struct"));
        }
    }
    let mut checks: Vec<CheckReport> = Vec::new();
    if matches!(suite, Suite::Default | Suite::Algebra) {
        checks.extend(oracle::algebra_checks(budget)?);
    }
    if matches!(suite, Suite::Default | Suite::Geometry) {
        checks.extend(oracle::geometry_checks(budget)?);
    }
    for c in checks {
        passed &= c.passed;
        reports.push(serde_json::to_value(c).expect("plain struct"));
    }
    let out = Value::Array(reports);
    if passed {
        Ok(out)
    } else {
        Err(Failure::Mismatch(out))
    }
}

fn run(cli: &Cli) -> Outcome {
    let search_budget = cli.budget.unwrap_or(geometry::DEFAULT_BUDGET);
    let oracle_budget = cli.budget.unwrap_or(oracle::DEFAULT_BUDGET);
    match &cli.command {
        Command::Ring {
            op: RingOp::Info { ring, n },
        } => Ok(ring_info(&parse_ring(&ring.ring)?, *n)),
        Command::Matrix { op } => matrix_op(op),
        Command::Subspace { op } => subspace_op(op),
        Command::Count { op } => count_op(op),
        Command::Singular { op } => singular_op(op, oracle_budget),
        Command::Arc { op } => geometry_op(Kind::Arc, op, search_budget),
        Command::Cap { op } => geometry_op(Kind::Cap, op, search_budget),
        Command::Verify { suite } => verify(*suite, cli.budget),
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Table => print!("{}", render::table(v)),
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
    match run(&cli) {
        Ok(v) => {
            emit(cli.output, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(v)) => {
            emit(cli.output, &v);
            eprintln!("error: verification mismatch");
            ExitCode::from(3)
        }
    }
}
