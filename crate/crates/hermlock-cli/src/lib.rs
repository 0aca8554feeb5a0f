//! Command-line front end. Subcommands map one-to-one onto the library:
//! `order`, `degrees`, `classify`, `witness`, `lift`, `fibers`, `verify`,
//! `tables`. Data goes to stdout, diagnostics to stderr; exit code 0 on
//! success, 1 on a domain error, 2 on a usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermlock_core::checks::{self, Grid};
use hermlock_core::counting::{self, LengthClass};
use hermlock_core::error::Error;
use hermlock_core::group::{self, UnitaryElement};
use hermlock_core::hermitian::{HermitianSpace, Kind};
use hermlock_core::oracle::{self, OracleBudget};
use hermlock_core::ring::{Ring, RingSpec};
use hermlock_core::serial;
use serde_json::{json, Value};

pub const BUDGET_ENV: &str = "HERMLOCK_BUDGET";

#[derive(Parser)]
#[command(name = "hermlock", version, about = "Hermitian spaces and unitary groups over finite local rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
pub enum Command {
    /// Order of the unitary group of a standard form over a ring
    Order(OrderArgs),
    /// Weil character degree for one (q, l, m, kind, t-class) query
    Degrees(DegreesArgs),
    /// Kind of a user-supplied Gram matrix
    Classify(SpaceArgs),
    /// Unitary g with g v = w for primitive vectors of equal length
    Witness(WitnessArgs),
    /// Lift a unitary matrix over A/r^k back to A
    Lift(LiftArgs),
    /// Primitive-vector counts per exact length value
    Fibers(FibersArgs),
    /// Cross-validate formulas against brute-force enumeration
    Verify(VerifyArgs),
    /// Weil degree table over m for fixed (q, l)
    Tables(TablesArgs),
}

#[derive(Args)]
pub struct OrderArgs {
    /// Ring spec: orth:p=..,f=..,e=.. | ram:... | unram:... | skew:p=..,f=..,n=..
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub m: u32,
    /// Form kind (ignored when the norm map is surjective)
    #[arg(long, default_value = "I")]
    pub kind: String,
}

#[derive(Args)]
pub struct DegreesArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub l: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value = "I")]
    pub kind: String,
    /// Length class of the stabilized vector: square|nonsquare|nonunit
    #[arg(long, default_value = "square")]
    pub t: String,
}

#[derive(Args)]
pub struct SpaceArgs {
    #[arg(long)]
    pub ring: String,
    /// Gram matrix as JSON rows, or the shorthand kind=I / kind=II
    #[arg(long)]
    pub gram: String,
    /// Rank, required with the kind= shorthand
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Source vector as a JSON array of entries
    #[arg(long)]
    pub v: String,
    /// Target vector as a JSON array of entries
    #[arg(long)]
    pub w: String,
}

#[derive(Args)]
pub struct LiftArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Ideal power: the reduced matrix lives over A/r^k
    #[arg(long)]
    pub k: u32,
    /// Reduced unitary matrix as JSON rows over A/r^k
    #[arg(long)]
    pub gbar: String,
}

#[derive(Args)]
pub struct FibersArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// small: seconds; full: adds the skew rank-2 group and rank 3 over Z/9
    #[arg(long, default_value = "small")]
    pub grid: String,
}

#[derive(Args)]
pub struct TablesArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub l: u32,
    #[arg(long, default_value_t = 6)]
    pub m_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
}

/// Oracle budget with the HERMLOCK_BUDGET override applied.
pub fn budget_from_env() -> OracleBudget {
    let mut budget = OracleBudget::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        if let Ok(n) = v.trim().parse::<u64>() {
            budget.max_nodes = n;
        }
    }
    budget
}

fn make_space(args: &SpaceArgs) -> Result<HermitianSpace, Error> {
    let spec: RingSpec = args.ring.parse()?;
    let ring = Ring::make(spec)?;
    if let Some(kind_str) = args.gram.strip_prefix("kind=") {
        let kind: Kind = kind_str.parse()?;
        let m = args.m.ok_or_else(|| Error::BadInput("--m is required with the kind= shorthand".into()))?;
        return HermitianSpace::standard(&ring, m as usize, kind);
    }
    let value: Value = serde_json::from_str(&args.gram).map_err(|e| Error::BadInput(format!("gram is not valid JSON: {}", e)))?;
    let gram = serial::mat_from_json(&ring, &value)?;
    HermitianSpace::new(gram)
}

fn parse_vector(space: &HermitianSpace, text: &str) -> Result<hermlock_core::Mat, Error> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::BadInput(format!("vector is not valid JSON: {}", e)))?;
    let v = serial::vector_from_json(space.ring(), &value)?;
    if v.rows() != space.rank() {
        return Err(Error::DimensionMismatch(format!("vector has {} entries, space has rank {}", v.rows(), space.rank())));
    }
    Ok(v)
}

/// Run one parsed command; returns the stdout payload.
pub fn execute(command: &Command) -> Result<String, Error> {
    match command {
        Command::Order(args) => {
            let spec: RingSpec = args.ring.parse()?;
            let kind: Kind = args.kind.parse()?;
            let order = counting::unitary_order(&spec, args.m, kind)?;
            Ok(serde_json::to_string(&json!({ "order": serial::biguint_to_json(&order) })).unwrap())
        }
        Command::Degrees(args) => {
            let kind: Kind = args.kind.parse()?;
            let class: LengthClass = args.t.parse()?;
            let d = counting::weil_degree(args.q, args.l, args.m, kind, class)?;
            Ok(serde_json::to_string(&degree_record(&d)).unwrap())
        }
        Command::Classify(args) => {
            let space = make_space(args)?;
            let kind = space.classify_kind();
            Ok(serde_json::to_string(&json!({
                "ring": space.ring().spec().to_string(),
                "m": space.rank(),
                "kind": kind.to_string(),
                "isotropic": space.is_isotropic(),
            }))
            .unwrap())
        }
        Command::Witness(args) => {
            let space = make_space(&args.space)?;
            let v = parse_vector(&space, &args.v)?;
            let w = parse_vector(&space, &args.w)?;
            let g = group::transitivity_witness(&space, &v, &w)?;
            Ok(serde_json::to_string(&serial::unitary_to_json(&g)).unwrap())
        }
        Command::Lift(args) => {
            let space = make_space(&args.space)?;
            let reduced = space.reduce(args.k)?;
            let value: Value =
                serde_json::from_str(&args.gbar).map_err(|e| Error::BadInput(format!("gbar is not valid JSON: {}", e)))?;
            let gbar_mat = serial::mat_from_json(reduced.ring(), &value)?;
            let gbar = UnitaryElement::new(reduced, gbar_mat)?;
            let g = group::lift(&space, &gbar)?;
            Ok(serde_json::to_string(&serial::unitary_to_json(&g)).unwrap())
        }
        Command::Fibers(args) => {
            let space = make_space(&args.space)?;
            let budget = budget_from_env();
            let fibers = oracle::length_fibers(&space, &budget)?;
            let ring = space.ring().clone();
            let mut rows = Vec::new();
            for (len, count) in &fibers {
                let el = ring.from_coeffs(len.clone())?;
                let class = LengthClass::of(&ring, &hermlock_core::FixedElement::try_new(&ring, el)?)?;
                rows.push(json!({ "length": len, "class": class.to_string(), "count": count }));
            }
            Ok(serde_json::to_string(&json!({ "ring": ring.spec().to_string(), "fibers": rows })).unwrap())
        }
        Command::Verify(args) => {
            let grid = match args.grid.as_str() {
                "small" => Grid::Small,
                "full" => Grid::Full,
                other => return Err(Error::BadInput(format!("unknown grid '{}', expected small|full", other))),
            };
            let budget = budget_from_env();
            let reports = checks::run_suite(grid, &budget)?;
            let mut lines = Vec::new();
            for r in &reports {
                lines.push(
                    serde_json::to_string(&json!({
                        "check": r.check,
                        "instance": r.instance,
                        "expected": r.expected,
                        "actual": r.actual,
                        "pass": r.pass,
                    }))
                    .unwrap(),
                );
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            lines.push(
                serde_json::to_string(&json!({ "summary": { "checks": reports.len(), "failed": failed } })).unwrap(),
            );
            if failed > 0 {
                return Err(Error::InvalidQuery(format!("{} verification checks failed\n{}", failed, lines.join("\n"))));
            }
            Ok(lines.join("\n"))
        }
        Command::Tables(args) => tables(args),
    }
}

fn degree_record(d: &counting::WeilDegree) -> Value {
    json!({
        "query": { "q": d.q, "l": d.l, "m": d.m, "kind": d.kind.to_string(), "t": d.class.to_string() },
        "index": serial::biguint_to_json(&d.index),
        "c": serial::biguint_to_json(&d.c),
        "degree": serial::biguint_to_json(&d.degree),
        "case": d.case,
    })
}

const TABLE_COLUMNS: [(Kind, LengthClass); 6] = [
    (Kind::I, LengthClass::UnitSquare),
    (Kind::I, LengthClass::UnitNonSquare),
    (Kind::I, LengthClass::NonUnit),
    (Kind::II, LengthClass::UnitSquare),
    (Kind::II, LengthClass::UnitNonSquare),
    (Kind::II, LengthClass::NonUnit),
];

/// Degrees pivoted m (rows) × kind/t-class (columns); unreachable cases
/// render as "-". The JSON format carries the same numbers as records.
fn tables(args: &TablesArgs) -> Result<String, Error> {
    if args.m_max < 2 {
        return Err(Error::InvalidQuery("m-max must be >= 2".into()));
    }
    let mut cells: Vec<Vec<Option<counting::WeilDegree>>> = Vec::new();
    for m in 2..=args.m_max {
        let mut row = Vec::new();
        for (kind, class) in TABLE_COLUMNS {
            match counting::weil_degree(args.q, args.l, m, kind, class) {
                Ok(d) => row.push(Some(d)),
                Err(Error::InvalidCase(_)) => row.push(None),
                Err(e) => return Err(e),
            }
        }
        cells.push(row);
    }
    let header: Vec<String> = TABLE_COLUMNS.iter().map(|(k, c)| format!("{}:{}", k, c)).collect();
    match args.format {
        Format::Json => {
            let mut records = Vec::new();
            for row in &cells {
                for d in row.iter().flatten() {
                    records.push(degree_record(d));
                }
            }
            Ok(serde_json::to_string(&json!({ "q": args.q, "l": args.l, "degrees": records })).unwrap())
        }
        Format::Csv => {
            let mut out = String::from("m,kind,t,index,c,degree\n");
            for row in &cells {
                for d in row.iter().flatten() {
                    out.push_str(&format!("{},{},{},{},{},{}\n", d.m, d.kind, d.class, d.index, d.c, d.degree));
                }
            }
            Ok(out.trim_end().to_string())
        }
        Format::Md => {
            let mut out = format!("Weil degrees for q={}, l={} (index/c = degree)\n\n", args.q, args.l);
            out.push_str(&format!("| m | {} |\n", header.join(" | ")));
            out.push_str(&format!("|---|{}\n", "---|".repeat(6)));
            for (i, row) in cells.iter().enumerate() {
                let m = i as u32 + 2;
                let rendered: Vec<String> = row
                    .iter()
                    .map(|c| c.as_ref().map(|d| d.degree.to_string()).unwrap_or_else(|| "-".into()))
                    .collect();
                out.push_str(&format!("| {} | {} |\n", m, rendered.join(" | ")));
            }
            Ok(out.trim_end().to_string())
        }
    }
}

/// Exit code policy: Ok → 0, domain error → 1 (message on stderr).
pub fn run(cli: &Cli) -> (i32, String, String) {
    match execute(&cli.command) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (1, String::new(), format!("error: {}", e)),
    }
}
