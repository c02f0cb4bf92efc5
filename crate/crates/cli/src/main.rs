mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use nlcx_core::bounds::{self, summarize, Construction};
use nlcx_core::complexity::{Analyzer, ComplexityError, Measure, DEFAULT_GUARD};
use nlcx_core::generators::{default_c, inversive_finite, inversive_periodic, random_sequence};
use nlcx_core::hermitian::{CurvePoint, Hermitian, HermitianError, DEFAULT_MAX_ELL};
use nlcx_core::stats::{self, empirical_constant, exhaustive_count, monte_carlo_profile, StatsError};
use nlcx_core::{Field, Sequence};

use report::{comment_lines, emit, json_report, pretty, stanza, Format};

/// Nonlinear complexity of sequences over finite fields.
#[derive(Debug, Parser)]
#[command(name = "nlcx", version, about)]
struct Cli {
    /// Worker threads (0 = one per core). Results do not depend on this.
    #[arg(long, global = true, env = "NLCX_THREADS", default_value_t = 0)]
    threads: usize,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a sequence file.
    Gen(GenArgs),
    /// Compute a complexity measure of a sequence file.
    Analyze(AnalyzeArgs),
    /// Compare a construction's complexity profile with its lower bounds.
    Verify(VerifyArgs),
    /// Monte Carlo complexity profile of random sequences.
    Profile(ProfileArgs),
    /// Exhaustively count sequences of bounded complexity.
    Count(CountArgs),
    /// Dump Hermitian curve data.
    Hermitian(HermitianArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GenKind {
    Inversive,
    Periodic,
    Random,
    Hermitian,
}

#[derive(Debug, Args, Serialize)]
struct FieldArgs {
    /// Field order.
    #[arg(long)]
    q: Option<u64>,
    /// Non-canonical primitive element (integer encoding).
    #[arg(long)]
    primitive: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field> {
        let q = self.q.context("--q is required")?;
        let field = Field::of_order(q)?;
        Ok(match self.primitive {
            Some(g) => field.with_primitive(g)?,
            None => field,
        })
    }
}

#[derive(Debug, Args, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long, default_value_t = 1)]
    b: u32,
    /// Defaults to the smallest admissible value.
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Length (random: required; periodic: defaults to d).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_ELL)]
    max_ell: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Nk,
    Lk,
    Lin,
    Moc,
}

impl From<Kind> for Measure {
    fn from(k: Kind) -> Measure {
        match k {
            Kind::Nk => Measure::Nk,
            Kind::Lk => Measure::Lk,
            Kind::Lin => Measure::Linear,
            Kind::Moc => Measure::MaxOrder,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "nk")]
    kind: Kind,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Report every initial segment instead of the whole sequence.
    #[arg(long)]
    profile: bool,
    /// Include a feedback polynomial that regenerates the sequence.
    #[arg(long)]
    witness: bool,
    /// Monomial columns processed before giving up on one linear system.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ConstructionKind {
    Inversive,
    Periodic,
    Hermitian,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    construction: ConstructionKind,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long, default_value_t = 1)]
    b: u32,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Periodic sequence length; defaults to 3d.
    #[arg(long)]
    len: Option<usize>,
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_ELL)]
    max_ell: u32,
    /// Check k = 1..=kmax.
    #[arg(long, default_value_t = 2)]
    kmax: u32,
    /// Measures to check.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["nk", "lk", "lin"])]
    kinds: Vec<Kind>,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
}

#[derive(Debug, Args, Serialize)]
struct ProfileArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    nmax: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lengths to report; defaults to powers of two up to nmax, plus nmax.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
}

#[derive(Debug, Args, Serialize)]
struct CountArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Dump {
    Points,
    Orbits,
    H,
}

#[derive(Debug, Args, Serialize)]
struct HermitianArgs {
    #[arg(long)]
    ell: u32,
    #[arg(long, value_enum, default_value = "orbits")]
    dump: Dump,
    #[arg(long)]
    primitive: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_ELL)]
    max_ell: u32,
}

/// A finished run: success, or a report with failed bound checks.
enum Status {
    Ok,
    BoundFailed,
}

struct Ctx {
    format: Option<Format>,
    output: Option<PathBuf>,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, body: &str) -> Result<()> {
        emit(self.output.as_deref(), body).with_context(|| match &self.output {
            Some(p) => format!("writing {}", p.display()),
            None => "writing stdout".into(),
        })
    }
}

fn gen(ctx: &Ctx, args: &GenArgs) -> Result<Status> {
    let s = match args.kind {
        GenKind::Inversive => inversive_finite(&args.field.field()?, args.a)?,
        GenKind::Periodic => {
            let field = args.field.field()?;
            let d = args.d.context("--d is required for periodic sequences")?;
            let c = match args.c {
                Some(c) => c,
                None => default_c(&field, d, args.b)?,
            };
            inversive_periodic(&field, d, args.b, c, args.n.unwrap_or(d as usize))?
        }
        GenKind::Random => {
            let n = args.n.context("--n is required for random sequences")?;
            random_sequence(&args.field.field()?, n, args.seed)
        }
        GenKind::Hermitian => {
            let ell = args.ell.context("--ell is required for hermitian sequences")?;
            Hermitian::build(ell, args.field.primitive, args.max_ell)?.sequence()?
        }
    };
    match ctx.format(Format::Text) {
        Format::Text | Format::Csv => ctx.emit(&s.to_text())?,
        Format::Json => {
            let payload = json!({ "header": s.header(), "n": s.len(), "values": s.values() });
            ctx.emit(&pretty(&json_report(payload, stanza("gen", args, Some(s.field())))))?
        }
    }
    Ok(Status::Ok)
}

fn analyze(ctx: &Ctx, args: &AnalyzeArgs) -> Result<Status> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let s = Sequence::from_text(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let analyzer = Analyzer { guard: args.guard, witness: args.witness };
    let measure = Measure::from(args.kind);
    let info = stanza("analyze", args, Some(s.field()));
    if args.profile {
        let values = analyzer.profile(&s, args.k, measure)?;
        match ctx.format(Format::Csv) {
            Format::Csv => {
                let mut out = comment_lines(&info);
                out.push_str("n,value\n");
                for (i, v) in values.iter().enumerate() {
                    out.push_str(&format!("{},{v}\n", i + 1));
                }
                ctx.emit(&out)?
            }
            Format::Json => {
                let rows: Vec<Value> = values.iter().enumerate().map(|(i, v)| json!({"n": i + 1, "value": v})).collect();
                ctx.emit(&pretty(&json_report(json!({"kind": measure, "k": args.k, "profile": rows}), info)))?
            }
            Format::Text => {
                let list: Vec<String> = values.iter().map(ToString::to_string).collect();
                ctx.emit(&format!("{}\n", list.join(" ")))?
            }
        }
        return Ok(Status::Ok);
    }
    let r = analyzer.analyze(&s, measure, args.k)?;
    match ctx.format(Format::Json) {
        Format::Json => ctx.emit(&pretty(&json_report(serde_json::to_value(&r)?, info)))?,
        Format::Csv => {
            let mut out = comment_lines(&info);
            out.push_str(&format!("n,value\n{},{}\n", r.n, r.value));
            ctx.emit(&out)?
        }
        Format::Text => {
            let k = r.k.map(|k| format!(" k={k}")).unwrap_or_default();
            ctx.emit(&format!("{}{k} n={} value={}\n", args.kind.to_possible_value().unwrap().get_name(), r.n, r.value))?
        }
    }
    Ok(Status::Ok)
}

fn verify(ctx: &Ctx, args: &VerifyArgs) -> Result<Status> {
    let (construction, field) = match args.construction {
        ConstructionKind::Inversive => {
            let field = args.field.field()?;
            (Construction::Inversive { field: field.clone(), a: args.a }, field)
        }
        ConstructionKind::Periodic => {
            let field = args.field.field()?;
            let d = args.d.context("--d is required for periodic sequences")?;
            let c = match args.c {
                Some(c) => c,
                None => default_c(&field, d, args.b)?,
            };
            let len = args.len.unwrap_or(3 * d as usize);
            (Construction::Periodic { field: field.clone(), d, b: args.b, c, len }, field)
        }
        ConstructionKind::Hermitian => {
            let ell = args.ell.context("--ell is required for the hermitian construction")?;
            let h = Hermitian::build(ell, args.field.primitive, args.max_ell)?;
            let field = h.field().clone();
            (Construction::Hermitian { ell, primitive: args.field.primitive, max_ell: args.max_ell }, field)
        }
    };
    if args.kmax == 0 {
        bail!("--kmax must be at least 1");
    }
    let ks: Vec<u32> = (1..=args.kmax).collect();
    let measures: Vec<Measure> = args.kinds.iter().map(|&k| k.into()).collect();
    let analyzer = Analyzer { guard: args.guard, witness: false };
    let checks = bounds::verify(&construction, &ks, &measures, &analyzer)?;
    let summary = summarize(&checks);
    let info = stanza("verify", args, Some(&field));
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut out = comment_lines(&info);
            out.push_str(bounds::CSV_HEADER);
            out.push('\n');
            for c in &checks {
                out.push_str(&c.csv_row());
                out.push('\n');
            }
            out.push_str(&format!("# summary {}\n", serde_json::to_string(&summary)?));
            ctx.emit(&out)?
        }
        Format::Json => ctx.emit(&pretty(&json_report(json!({ "summary": summary, "checks": checks }), info)))?,
        Format::Text => {
            let mut out = String::new();
            for c in checks.iter().filter(|c| !c.pass) {
                out.push_str(&format!("FAIL {}\n", c.csv_row()));
            }
            out.push_str(&format!(
                "{} checks, {} failed, {} trivial: {}\n",
                summary.checks,
                summary.failed,
                summary.trivial,
                if summary.pass { "pass" } else { "FAIL" }
            ));
            ctx.emit(&out)?
        }
    }
    Ok(if summary.pass { Status::Ok } else { Status::BoundFailed })
}

fn default_grid(nmax: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (2..usize::BITS).map(|e| 1usize << e).take_while(|&n| n <= nmax).collect();
    if grid.last() != Some(&nmax) {
        grid.push(nmax);
    }
    grid
}

fn profile(ctx: &Ctx, args: &ProfileArgs) -> Result<Status> {
    let field = Field::of_order(args.q)?;
    let grid = args.grid.clone().unwrap_or_else(|| default_grid(args.nmax));
    if let Some(&n) = grid.iter().find(|&&n| n > args.nmax) {
        bail!("grid point {n} exceeds --nmax {}", args.nmax);
    }
    let analyzer = Analyzer { guard: args.guard, witness: false };
    let result = monte_carlo_profile(&field, args.k, &grid, args.samples, args.seed, &analyzer)?;
    let slope = empirical_constant(&result).ok();
    let info = stanza("profile", args, Some(&field));
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut out = comment_lines(&info);
            out.push_str(stats::PROFILE_CSV_HEADER);
            out.push('\n');
            for r in &result.rows {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
            if let Some(c) = slope {
                out.push_str(&format!("# slope_estimate {c:.6} (least-squares slope of mean against ln n; exploratory)\n"));
            }
            ctx.emit(&out)?
        }
        Format::Json => {
            let payload = json!({ "rows": result.rows, "slope_estimate": slope });
            ctx.emit(&pretty(&json_report(payload, info)))?
        }
        Format::Text => {
            let mut out = String::new();
            for r in &result.rows {
                out.push_str(&format!(
                    "n={:<6} mean={:>8.3} min={:<4} p50={:<4} max={:<4} ref={:.3} below={:.3}\n",
                    r.n, r.mean, r.min, r.p50, r.max, r.reference, r.below
                ));
            }
            if let Some(c) = slope {
                out.push_str(&format!("slope estimate {c:.4}\n"));
            }
            ctx.emit(&out)?
        }
    }
    Ok(Status::Ok)
}

fn count(ctx: &Ctx, args: &CountArgs) -> Result<Status> {
    let r = exhaustive_count(args.q, args.k, args.n, args.m, &Analyzer::default())?;
    let field = Field::of_order(args.q as u64)?;
    let info = stanza("count", args, Some(&field));
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut out = comment_lines(&info);
            out.push_str(&format!("{}\n{}\n", stats::COUNT_CSV_HEADER, r.csv_row()));
            ctx.emit(&out)?
        }
        Format::Json => {
            let payload = json!({
                "q": r.q, "k": r.k, "n": r.n, "m": r.m, "count": r.count,
                "bound": r.bound.to_string(), "pass": r.pass,
            });
            ctx.emit(&pretty(&json_report(payload, info)))?
        }
        Format::Text => ctx.emit(&format!("T_{}^({})({}) = {} <= {}: {}\n", r.n, r.k, r.m, r.count, r.bound, r.pass))?,
    }
    Ok(if r.pass { Status::Ok } else { Status::BoundFailed })
}

fn point_json(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Affine { x, y } => json!([x, y]),
        CurvePoint::Infinity => json!("inf"),
    }
}

fn hermitian(ctx: &Ctx, args: &HermitianArgs) -> Result<Status> {
    let h = Hermitian::build(args.ell, args.primitive, args.max_ell)?;
    let info = stanza("hermitian", args, Some(h.field()));
    let json_mode = ctx.format(Format::Text) == Format::Json;
    let mut text = String::new();
    let payload = match args.dump {
        Dump::Points => {
            let pts = h.curve_points();
            for p in &pts {
                text.push_str(&format!("{p}\n"));
            }
            json!({ "count": pts.len(), "points": pts.iter().map(point_json).collect::<Vec<_>>() })
        }
        Dump::Orbits => {
            let t = h.orbit_decomposition()?;
            for (i, o) in t.orbits.iter().enumerate() {
                let mark = if i == t.q_orbit { " (contains Q)" } else { "" };
                let pts: Vec<String> = o.iter().map(ToString::to_string).collect();
                text.push_str(&format!("orbit {i}{mark}: {}\n", pts.join(" ")));
            }
            let rest: Vec<String> = t.fixed_and_short.iter().map(ToString::to_string).collect();
            text.push_str(&format!("x = 0 and infinity: {}\nQ = {}\n", rest.join(" "), t.q_point()));
            json!({
                "orbits": t.orbits.iter().map(|o| o.iter().map(point_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "q_orbit": t.q_orbit,
                "fixed_and_short": t.fixed_and_short.iter().map(point_json).collect::<Vec<_>>(),
                "q_point": point_json(&t.q_point()),
            })
        }
        Dump::H => {
            let t = h.orbit_decomposition()?;
            let pf = h.construct_h(t.q_point())?;
            let nu = h.h_valuation_at_infinity(&pf)?;
            text.push_str(&format!("{}\nvaluation at infinity: {nu}\n", h.describe_h(&pf)));
            json!({ "h": pf, "closed_form": h.describe_h(&pf), "valuation_at_infinity": nu })
        }
    };
    if json_mode {
        ctx.emit(&pretty(&json_report(payload, info)))?;
    } else {
        ctx.emit(&format!("{}{text}", comment_lines(&info)))?;
    }
    Ok(Status::Ok)
}

fn run(cli: &Cli) -> Result<Status> {
    let ctx = Ctx { format: cli.format, output: cli.output.clone() };
    match &cli.command {
        Command::Gen(a) => gen(&ctx, a),
        Command::Analyze(a) => analyze(&ctx, a),
        Command::Verify(a) => verify(&ctx, a),
        Command::Profile(a) => profile(&ctx, a),
        Command::Count(a) => count(&ctx, a),
        Command::Hermitian(a) => hermitian(&ctx, a),
    }
}

/// Machine-readable form of an error; guard errors carry the offending size.
fn error_json(err: &anyhow::Error) -> Value {
    let mut details = json!(null);
    let mut kind = "error";
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<StatsError>() {
            if let StatsError::CountGuard { q, n, limit } = e {
                kind = "guard";
                details = json!({ "q": q, "n": n, "limit": limit });
            }
        } else if let Some(ComplexityError::CostGuard { m, monomials, limit }) = cause.downcast_ref::<ComplexityError>() {
            kind = "guard";
            details = json!({ "m": m, "monomials": monomials, "limit": limit });
        } else if let Some(HermitianError::TooLarge { ell, limit }) = cause.downcast_ref::<HermitianError>() {
            kind = "guard";
            details = json!({ "ell": ell, "limit": limit });
        }
    }
    json!({ "schema": report::SCHEMA, "error": { "kind": kind, "message": format!("{err:#}"), "details": details } })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::BoundFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            eprintln!("{}", serde_json::to_string(&error_json(&e)).expect("json"));
            ExitCode::from(2)
        }
    }
}
