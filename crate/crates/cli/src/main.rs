use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use quiver_moduli::catalog::{self, Family};
use quiver_moduli::deform::{generic_deformation, is_generic_deformation};
use quiver_moduli::invariants::{
    betti_coprime, dt_invariants, ic_poincare_dt, ic_poincare_resolution, p_poly,
};
use quiver_moduli::strata::{
    codim_lower_bound, certify_smallness, fiber_dim_bound, local_quiver, luna_types, smallness_margin,
    SmallnessReport,
};
use quiver_moduli::{DimVector, Error, ErrorKind, HalfLaurent, Limits, Quiver, RatFunc, Stability};

const FAMILIES_HELP: &str = "Catalog families for --example FAMILY:P1,P2,...:
  determinantal:m,r          m arrows each way, d=(1,r), Theta=0, Theta'=(r,-1)
  points:m,d                 star quiver, m sources, d=(1,...,1,d)
  levi_adjoint:l[,dims...]   complete quiver with loops, Theta=0
  bipartite:k,l,v...,w...    complete bipartite quiver
  abelianized:m,n,a,b        abelianization of kronecker_general(m,n) at (a,b)
  kronecker_general:m,n      m arrows i->j, n arrows j->i, d=(1,1)
  kronecker:m                m arrows i->j, d=(1,1), Theta=(1,-1)";

#[derive(Parser)]
#[command(name = "qmod", version, about = "Exact invariants of quiver moduli spaces", after_help = FAMILIES_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler form, skew rank, kernel symmetry, coprimality and expected dimension
    Info(Problem),
    /// Construct and verify a generic deformation of the stability
    Deform(Problem),
    /// The rational function p_d(q)
    Pd(Problem),
    /// Betti polynomial of a coprime moduli space
    Betti(Problem),
    /// DT invariants for every slope-zero exponent up to d
    Dt(Problem),
    /// Intersection Poincare polynomial by the DT route and, given Theta', the resolution route
    Ic(Problem),
    /// Luna types, local quivers and dimension bounds
    Strata(Problem),
    /// Smallness certificate for the resolution given by Theta'
    Smallness(Problem),
    /// List catalog families
    Examples {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Problem {
    /// Problem file (JSON), or "-" for stdin
    input: Option<String>,
    /// Catalog example, e.g. determinantal:2,1
    #[arg(long, value_name = "FAMILY:PARAMS")]
    example: Option<String>,
    /// Override the stability, e.g. --stability=1,-1
    #[arg(long, allow_hyphen_values = true, value_name = "W1,W2,...")]
    stability: Option<String>,
    /// Override the deformed stability
    #[arg(long, allow_hyphen_values = true, value_name = "W1,W2,...")]
    deformed_stability: Option<String>,
    /// Assume the stable locus is nonempty
    #[arg(long)]
    assume_nonempty: bool,
    /// Emit JSON
    #[arg(long)]
    json: bool,
    /// Largest enumeration box, in cells
    #[arg(long, default_value_t = quiver_moduli::lattice::DEFAULT_MAX_BOX)]
    max_box: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    vertices: Vec<String>,
    arrows: Vec<Vec<u32>>,
    dimension: Vec<i64>,
    stability: Vec<i64>,
    #[serde(default)]
    deformed_stability: Option<Vec<i64>>,
    #[serde(default)]
    assume_nonempty: bool,
}

struct Loaded {
    quiver: Quiver,
    d: DimVector,
    theta: Stability,
    theta_prime: Option<Stability>,
    assume_nonempty: bool,
    limits: Limits,
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Lib(e) => match e.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::Consistency => 3,
            },
        }
    }

    fn label(&self) -> &'static str {
        match self.exit_code() {
            1 => "input",
            2 => "precondition",
            _ => "consistency",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn parse_weights(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Input(format!("bad stability entry '{x}'")))
        })
        .collect()
}

impl Problem {
    fn load(&self) -> Result<Loaded, Failure> {
        let (quiver, d, mut theta, mut theta_prime, file_assume) = match (&self.example, &self.input) {
            (Some(_), Some(_)) => {
                return Err(Failure::Input("give either an input file or --example, not both".into()))
            }
            (None, None) => return Err(Failure::Input("missing input file or --example".into())),
            (Some(spec), None) => {
                let ex = catalog::parse_example(spec)?;
                (ex.quiver, ex.dimension, ex.stability, ex.deformed_stability, false)
            }
            (None, Some(path)) => {
                let text = if path == "-" {
                    let mut s = String::new();
                    io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
                    s
                } else {
                    fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))?
                };
                let f: ProblemFile =
                    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("parsing problem: {e}")))?;
                let q = Quiver::new(f.vertices, f.arrows)?;
                (
                    q,
                    DimVector::new(f.dimension)?,
                    Stability::new(f.stability),
                    f.deformed_stability.map(Stability::new),
                    f.assume_nonempty,
                )
            }
        };
        if let Some(s) = &self.stability {
            theta = Stability::new(parse_weights(s)?);
        }
        if let Some(s) = &self.deformed_stability {
            theta_prime = Some(Stability::new(parse_weights(s)?));
        }
        let n = quiver.vertex_count();
        let lens = [Some(d.len()), Some(theta.len()), theta_prime.as_ref().map(|t| t.len())];
        for len in lens.into_iter().flatten() {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, found: len }.into());
            }
        }
        if d.is_zero() {
            return Err(Error::ZeroDimensionVector.into());
        }
        Ok(Loaded {
            quiver,
            d,
            theta,
            theta_prime,
            assume_nonempty: self.assume_nonempty || file_assume,
            limits: Limits::with_max_box(self.max_box),
        })
    }
}

fn poly_json(p: &HalfLaurent) -> Value {
    json!({ "v_powers": p.to_power_map(), "pretty": p.pretty_q() })
}

fn rat_json(r: &RatFunc) -> Value {
    json!({
        "num": r.numerator().to_power_map(),
        "den": r.denominator().to_power_map(),
        "pretty": r.pretty_q(),
    })
}

fn info(p: &Loaded) -> Outcome {
    let q = &p.quiver;
    let normalized = p.theta.normalize(&p.d)?;
    let witness = normalized.coprime_witness(&p.d, &p.limits)?;
    Ok(json!({
        "vertices": q.vertices(),
        "arrows": q.arrows(),
        "dimension": p.d,
        "stability": p.theta,
        "normalized_stability": normalized,
        "euler_matrix": q.euler_matrix(),
        "skew_rank": q.skew_rank(),
        "symmetric_quiver": q.is_symmetric(),
        "kernel_symmetric": q.symmetric_on_kernel(&normalized)?,
        "coprime": witness.is_none(),
        "coprime_witness": witness,
        "indivisible": p.d.is_indivisible()?,
        "expected_dimension": q.moduli_dim(&p.d)?,
    }))
}

fn deform(p: &Loaded) -> Outcome {
    let normalized = p.theta.normalize(&p.d)?;
    let constructed = generic_deformation(&normalized, &p.d, &p.limits)?;
    let check = is_generic_deformation(&normalized, &constructed, &p.d, &p.limits)?;
    let supplied = match &p.theta_prime {
        Some(t) => {
            let c = is_generic_deformation(&normalized, &t.normalize(&p.d)?, &p.d, &p.limits)?;
            json!({ "stability": t, "passes": c.passes(), "violations": c.violations })
        }
        None => Value::Null,
    };
    Ok(json!({
        "stability": normalized,
        "deformed_stability": constructed,
        "verified": check.passes(),
        "supplied": supplied,
    }))
}

fn pd(p: &Loaded) -> Outcome {
    let r = p_poly(&p.quiver, &p.d, &p.theta, &p.limits)?;
    Ok(json!({ "dimension": p.d, "stability": p.theta, "p": rat_json(&r) }))
}

fn betti(p: &Loaded) -> Outcome {
    let b = betti_coprime(&p.quiver, &p.d, &p.theta, &p.limits)?;
    Ok(json!({
        "dimension": p.d,
        "stability": p.theta,
        "betti": poly_json(&b),
        "assume_nonempty": p.assume_nonempty,
    }))
}

fn dt(p: &Loaded) -> Outcome {
    let dts = dt_invariants(&p.quiver, &p.theta, &p.d, &p.limits)?;
    let rows: Vec<Value> = dts
        .iter()
        .map(|(e, v)| json!({ "exponent": e, "dt": rat_json(v) }))
        .collect();
    Ok(json!({ "dimension": p.d, "stability": p.theta.normalize(&p.d)?, "invariants": rows }))
}

fn ic(p: &Loaded) -> Outcome {
    let via_dt = ic_poincare_dt(&p.quiver, &p.d, &p.theta, &p.limits)?;
    let via_res = match &p.theta_prime {
        Some(t) => Some(ic_poincare_resolution(&p.quiver, &p.d, &p.theta, t, &p.limits)?),
        None => None,
    };
    if let Some(r) = &via_res {
        if *r != via_dt {
            return Err(Error::Consistency(format!(
                "intersection Poincare routes disagree: DT route {via_dt}, resolution route {r}"
            ))
            .into());
        }
    }
    Ok(json!({
        "dimension": p.d,
        "result": poly_json(&via_dt),
        "routes": {
            "dt": poly_json(&via_dt),
            "resolution": via_res.as_ref().map(poly_json),
        },
        "routes_agree": via_res.as_ref().map(|_| true),
        "assume_nonempty": p.assume_nonempty,
    }))
}

fn deformed_or_constructed(p: &Loaded) -> Result<Stability, Failure> {
    match &p.theta_prime {
        Some(t) => Ok(t.normalize(&p.d)?),
        None => Ok(generic_deformation(&p.theta.normalize(&p.d)?, &p.d, &p.limits)?),
    }
}

fn strata(p: &Loaded) -> Outcome {
    let normalized = p.theta.normalize(&p.d)?;
    let prime = match deformed_or_constructed(p) {
        Ok(t) => t,
        Err(_) => normalized.clone(),
    };
    let q = &p.quiver;
    let mut rows = Vec::new();
    for xi in luna_types(q, &p.d, &normalized, &p.limits)? {
        let local = match local_quiver(q, &xi, &prime) {
            Ok((lq, ld, ls)) => json!({ "arrows": lq.arrows(), "dimension": ld, "stability": ls }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        let opt = |r: Result<Value, Error>| r.unwrap_or(Value::Null);
        rows.push(json!({
            "type": xi,
            "pretty": xi.to_string(),
            "trivial": xi.is_trivial(),
            "local": local,
            "fiber_bound": opt(fiber_dim_bound(q, &xi).map(|x| json!(x))),
            "codim_bound": opt(codim_lower_bound(q, &p.d, &xi).map(|x| json!(x))),
            "margin": opt(smallness_margin(q, &p.d, &xi).map(|x| json!(x))),
        }));
    }
    Ok(json!({
        "dimension": p.d,
        "stability": normalized,
        "deformed_stability": prime,
        "types": rows,
    }))
}

/// Two loopless vertices, d = (1,1) and Theta = 0: the rank-one matrices case.
fn rank_one_params(p: &Loaded) -> Option<(i64, i64)> {
    let q = &p.quiver;
    let loopless = q.vertex_count() == 2 && q.arrow_count(0, 0) == 0 && q.arrow_count(1, 1) == 0;
    let theta_zero = p.theta.normalize(&p.d).ok()?.is_zero();
    (loopless && p.d == DimVector::ones(2) && theta_zero)
        .then(|| (q.arrow_count(0, 1) as i64, q.arrow_count(1, 0) as i64))
}

fn smallness(p: &Loaded) -> Outcome {
    let prime = deformed_or_constructed(p)?;
    let report: SmallnessReport =
        certify_smallness(&p.quiver, &p.d, &p.theta, &prime, p.assume_nonempty, &p.limits)?;
    let mut out = serde_json::to_value(&report).expect("report serializes");
    out["verdict_pretty"] = json!(report.verdict.to_string());
    if let Some((m, n)) = rank_one_params(p) {
        if m >= 1 && n >= 1 {
            let r = catalog::rank_one_smallness_report(m, n)?;
            out["rank_one"] = json!({ "report": r, "note": r.note() });
        }
    }
    Ok(out)
}

fn examples() -> Value {
    let rows: Vec<Value> = Family::ALL
        .iter()
        .map(|f| json!({ "family": f.name(), "params": f.params(), "description": f.description() }))
        .collect();
    json!({ "families": rows })
}

fn weights(v: &Value) -> String {
    v.as_array()
        .map(|a| {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .unwrap_or_else(|| "-".into())
}

fn pretty(v: &Value) -> String {
    v["pretty"].as_str().unwrap_or("-").to_string()
}

fn text(command: &str, v: &Value) -> String {
    let mut s = String::new();
    let mut line = |l: String| {
        s.push_str(&l);
        s.push('\n');
    };
    match command {
        "info" => {
            line(format!("dimension vector      {}", weights(&v["dimension"])));
            line(format!("stability             {}", weights(&v["stability"])));
            line(format!("normalized stability  {}", weights(&v["normalized_stability"])));
            line("Euler form:".into());
            for row in v["euler_matrix"].as_array().into_iter().flatten() {
                line(format!("  {}", weights(row)));
            }
            for key in ["skew_rank", "symmetric_quiver", "kernel_symmetric", "coprime", "indivisible", "expected_dimension"] {
                line(format!("{key:<22}{}", v[key]));
            }
            if !v["coprime_witness"].is_null() {
                line(format!("coprime witness       {}", weights(&v["coprime_witness"])));
            }
        }
        "deform" => {
            line(format!("stability           {}", weights(&v["stability"])));
            line(format!("generic deformation {}", weights(&v["deformed_stability"])));
            line(format!("verified            {}", v["verified"]));
            if !v["supplied"].is_null() {
                line(format!(
                    "supplied {} passes: {}",
                    weights(&v["supplied"]["stability"]),
                    v["supplied"]["passes"]
                ));
            }
        }
        "pd" => line(format!("p_d = {}", pretty(&v["p"]))),
        "betti" => line(format!("Betti polynomial: {}", pretty(&v["betti"]))),
        "dt" => {
            for row in v["invariants"].as_array().into_iter().flatten() {
                line(format!("DT{} = {}", weights(&row["exponent"]), pretty(&row["dt"])));
            }
        }
        "ic" => {
            line(format!("IC Poincare polynomial: {}", pretty(&v["result"])));
            line(format!("  DT route:         {}", pretty(&v["routes"]["dt"])));
            match v["routes"]["resolution"].is_null() {
                true => line("  resolution route: not run (no deformed stability)".into()),
                false => line(format!("  resolution route: {} (routes agree)", pretty(&v["routes"]["resolution"]))),
            }
            line(format!("assume nonempty: {}", v["assume_nonempty"]));
        }
        "strata" => {
            line(format!("deformed stability {}", weights(&v["deformed_stability"])));
            line(format!("{:<28} {:>6} {:>6} {:>7}  local quiver", "type", "fiber", "codim", "margin"));
            for row in v["types"].as_array().into_iter().flatten() {
                let cell = |k: &str| match &row[k] {
                    Value::Null => "-".to_string(),
                    Value::String(x) => x.clone(),
                    x => x.to_string(),
                };
                let local = if row["local"]["error"].is_null() {
                    format!(
                        "arrows {} d {} theta {}",
                        row["local"]["arrows"],
                        weights(&row["local"]["dimension"]),
                        weights(&row["local"]["stability"])
                    )
                } else {
                    row["local"]["error"].as_str().unwrap_or("").to_string()
                };
                line(format!(
                    "{:<28} {:>6} {:>6} {:>7}  {}",
                    row["pretty"].as_str().unwrap_or(""),
                    cell("fiber_bound"),
                    cell("codim_bound"),
                    cell("margin"),
                    local
                ));
            }
        }
        "smallness" => {
            line(format!("verdict: {}", v["verdict_pretty"].as_str().unwrap_or("")));
            line(format!("deformed stability {}", weights(&v["deformed_stability"])));
            line(format!("assume stable nonempty: {}", v["assumptions"]["stable_nonempty"]));
            for row in v["strata"].as_array().into_iter().flatten() {
                let parts: Vec<String> = row["type"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|p| {
                        let m = p["multiplicity"].as_i64().unwrap_or(1);
                        let w = weights(&p["part"]);
                        if m == 1 { w } else { format!("{m}*{w}") }
                    })
                    .collect();
                let name = parts.join(" + ");
                match row["filtered"].as_str() {
                    Some(reason) => line(format!("  {name:<28} filtered: {reason}")),
                    None => line(format!(
                        "  {name:<28} fiber {:>5}  codim {:>3}  margin {:>5}",
                        row["fiber_bound"].as_str().unwrap_or("-"),
                        row["codim_bound"],
                        row["margin"].as_str().unwrap_or("-")
                    )),
                }
            }
            if !v["rank_one"].is_null() {
                line(format!("rank-one closed form: {}", v["rank_one"]["note"].as_str().unwrap_or("")));
            }
        }
        "examples" => {
            for row in v["families"].as_array().into_iter().flatten() {
                line(format!(
                    "{}:{}\n    {}",
                    row["family"].as_str().unwrap_or(""),
                    row["params"].as_str().unwrap_or(""),
                    row["description"].as_str().unwrap_or("")
                ));
            }
        }
        _ => line(v.to_string()),
    }
    s
}

fn emit(command: &str, json_mode: bool, v: &Value) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(v).expect("value serializes"));
    } else {
        print!("{}", text(command, v));
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (name, problem, f): (&str, &Problem, fn(&Loaded) -> Outcome) = match &cli.command {
        Command::Examples { json } => {
            emit("examples", *json, &examples());
            return Ok(());
        }
        Command::Info(p) => ("info", p, info),
        Command::Deform(p) => ("deform", p, deform),
        Command::Pd(p) => ("pd", p, pd),
        Command::Betti(p) => ("betti", p, betti),
        Command::Dt(p) => ("dt", p, dt),
        Command::Ic(p) => ("ic", p, ic),
        Command::Strata(p) => ("strata", p, strata),
        Command::Smallness(p) => ("smallness", p, smallness),
    };
    let loaded = problem.load()?;
    let value = f(&loaded)?;
    emit(name, problem.json, &value);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.label(), f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
