//! Command-line frontend for `qoscillator`.

pub mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qoscillator::blocks::{alpha_root_set, block_t, semisimplicity_check};
use qoscillator::center::{centralizer_basis, CentralizerQuery, DEFAULT_SPAN_LIMIT};
use qoscillator::pbw::{multiply, normalize, system_for, CenterPolynomial, PbwElement};
use qoscillator::repn::{
    build_simple, c0_zero_counterexample, composition_series, finite_dim_test,
    verify_module_relations, Matrix, ModuleMatrices, RelationReport,
};
use qoscillator::rewrite::HAND_CHECKED_OVERLAPS;
use qoscillator::verma::{alpha, maximal_vectors, structure_vector, Weight};
use qoscillator::Scalar;

pub use parse::{
    parse_bounds, parse_center_poly, parse_element, parse_scalar, parse_weight, ParseError,
};

#[derive(Parser, Debug)]
#[command(
    name = "qosc",
    version,
    about = "Exact computations in the quantized oscillator algebra over Q(q)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// PBW normal form of an expression in E, F, K, L (= K^-1), X, Y and C.
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        p: String,
    },
    /// Resolves every overlap ambiguity of the rewriting system.
    ConfluenceCheck {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        p: String,
    },
    /// Product of two elements, in normal form.
    Multiply {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// The constant alpha_{r,m}.
    Alpha {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// All n >= 1 with alpha_{r,n+1} = 0.
    AlphaRoots {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Maximal vectors of weight q^-n r in Z(r).
    MaximalVectors {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        n: u32,
    },
    /// The monic structure vector v_{q^-n r}.
    StructureVector {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        n: u32,
    },
    /// The finite-dimensional simple module V(r).
    Simple {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Print the generator matrices and the relation report.
        #[arg(long)]
        matrices: bool,
    },
    /// Composition factors of Z(r).
    CompositionSeries {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// The sets S(r) and T(r).
    Block {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Bounded complete-reducibility test over r = +-q^n, 0 <= n <= nmax.
    SemisimpleCheck {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        nmax: i64,
    },
    /// Centralizer of the algebra within a bounded PBW span.
    Center {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Bounds on F^a Y^b K^c X^d E^e as a,b,|c|,d,e.
        #[arg(long, allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = DEFAULT_SPAN_LIMIT)]
        span_limit: usize,
    },
    /// The three-dimensional module with C_0 = 0 that is not semisimple.
    CounterexampleC0zero,
}

#[derive(Debug)]
pub enum CliError {
    Parse { arg: &'static str, err: ParseError },
    Domain(qoscillator::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse { arg, err } => write!(f, "--{arg}: {err}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<qoscillator::Error> for CliError {
    fn from(e: qoscillator::Error) -> Self {
        CliError::Domain(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn arg<T>(name: &'static str, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|err| CliError::Parse { arg: name, err })
}

/// Output in both formats; the caller picks one.
struct Output {
    text: Vec<String>,
    json: Value,
}

fn weight_json(w: &Weight) -> Value {
    json!({ "value": w.to_string(), "class": w.classification() })
}

fn weight_text(w: &Weight) -> String {
    format!("{w} [{}]", w.classification())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| json!(x.to_string())).collect()))
            .collect(),
    )
}

const MATRIX_NAMES: [&str; 6] = ["E", "F", "K", "K^-1", "X", "Y"];

fn matrices(m: &ModuleMatrices) -> [&Matrix; 6] {
    [&m.e, &m.f, &m.k, &m.kinv, &m.x, &m.y]
}

fn module_text(m: &ModuleMatrices, out: &mut Vec<String>) {
    out.push(format!("basis: {}", m.labels.join(", ")));
    for (name, mat) in MATRIX_NAMES.iter().zip(matrices(m)) {
        out.push(format!("{name} ="));
        for line in mat.to_string().lines() {
            out.push(format!("  {line}"));
        }
    }
}

fn module_json(m: &ModuleMatrices) -> Value {
    let mut map = serde_json::Map::new();
    for (name, mat) in MATRIX_NAMES.iter().zip(matrices(m)) {
        map.insert(name.to_string(), matrix_json(mat));
    }
    json!({ "basis": m.labels, "matrices": map })
}

fn relations_text(rep: &RelationReport, out: &mut Vec<String>) {
    for c in &rep.checks {
        out.push(format!(
            "{} {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name
        ));
    }
}

fn relations_json(rep: &RelationReport) -> Value {
    let mut map = serde_json::Map::new();
    for c in &rep.checks {
        map.insert(c.name.to_string(), json!(c.pass));
    }
    Value::Object(map)
}

fn scalars_text(xs: &[Scalar]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn normal_form(expr: &str, p: &str) -> Result<Output> {
    let x = arg("expr", parse_element(expr))?;
    let p = arg("p", parse_center_poly(p))?;
    let nf = normalize(&x, &p)?;
    Ok(Output {
        text: vec![nf.to_string()],
        json: json!({ "input": x.to_string(), "p": p.to_string(), "normal_form": nf.to_string() }),
    })
}

fn confluence(p: &str) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let rep = system_for(&p)?.verify_confluence()?;
    let listed = rep
        .ambiguities
        .iter()
        .filter(|a| a.hand_checked && a.resolved)
        .count();
    let extra = rep.extra_words();
    let unresolved: Vec<String> = rep
        .ambiguities
        .iter()
        .filter(|a| !a.resolved)
        .map(|a| a.word.to_string())
        .collect();
    let text = vec![
        format!("{listed}/{} resolved", HAND_CHECKED_OVERLAPS.len()),
        format!(
            "detected overlaps: {}, resolved: {}",
            rep.ambiguities.len(),
            rep.resolved_count()
        ),
        format!("outside the listed set: {}", extra.join(" ")),
        format!(
            "unresolved: {}",
            if unresolved.is_empty() {
                "none".to_string()
            } else {
                unresolved.join(" ")
            }
        ),
    ];
    let json = json!({
        "p": p.to_string(),
        "listed": HAND_CHECKED_OVERLAPS.len(),
        "listed_resolved": listed,
        "detected": rep.ambiguities.len(),
        "resolved": rep.resolved_count(),
        "extra": extra,
        "missing": rep.missing_words(),
        "unresolved": unresolved,
    });
    Ok(Output { text, json })
}

fn multiply_cmd(lhs: &str, rhs: &str, p: &str) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let a = normalize(&arg("lhs", parse_element(lhs))?, &p)?;
    let b = normalize(&arg("rhs", parse_element(rhs))?, &p)?;
    let prod = multiply(&a, &b, &p)?;
    Ok(Output {
        text: vec![prod.to_string()],
        json: json!({ "lhs": a.to_string(), "rhs": b.to_string(), "p": p.to_string(), "product": prod.to_string() }),
    })
}

fn nonzero(p: &CenterPolynomial) -> Result<()> {
    Ok(p.require_nonzero()?)
}

fn alpha_cmd(p: &str, r: &str, m: i64) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    let a = alpha(&p, &r, m);
    Ok(Output {
        text: vec![a.to_string()],
        json: json!({ "p": p.to_string(), "r": weight_json(&r), "m": m, "alpha": a.to_string() }),
    })
}

fn alpha_roots(p: &str, r: &str) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    let roots = alpha_root_set(&p, &r)?;
    let list: Vec<String> = roots.iter().map(|n| n.to_string()).collect();
    Ok(Output {
        text: vec![
            format!("r = {}", weight_text(&r)),
            format!("roots: {{{}}}", list.join(", ")),
        ],
        json: json!({ "p": p.to_string(), "r": weight_json(&r), "roots": roots }),
    })
}

fn maximal(p: &str, r: &str, n: u32) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    let vs = maximal_vectors(&p, &r, n)?;
    let w = r.shift(-(n as i64));
    let mut text = vec![
        format!("r = {}", weight_text(&r)),
        format!("weight q^-{n} r = {}", weight_text(&w)),
        format!("dimension: {}", vs.len()),
    ];
    text.extend(vs.iter().map(|v| v.to_string()));
    Ok(Output {
        text,
        json: json!({
            "p": p.to_string(),
            "r": weight_json(&r),
            "n": n,
            "weight": weight_json(&w),
            "vectors": vs.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
    })
}

fn structure(p: &str, r: &str, n: u32) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    let v = structure_vector(&p, &r, n)?;
    Ok(Output {
        text: vec![v.to_string()],
        json: json!({ "p": p.to_string(), "r": weight_json(&r), "n": n, "vector": v.to_string() }),
    })
}

fn simple(p: &str, r: &str, with_matrices: bool) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    nonzero(&p)?;
    let fd = finite_dim_test(&p, &r)?;
    let m = build_simple(&p, &r)?;
    let rep = verify_module_relations(&m, &p)?;
    let first_root = fd.map(|f| f.first_root);
    let mut text = vec![
        format!("dim {}", m.dim()),
        format!("r = {}", weight_text(&r)),
        format!(
            "first root: {}",
            first_root.map_or("none".into(), |k| k.to_string())
        ),
        format!("K eigenvalues: {}", scalars_text(&m.k_eigenvalues())),
        format!("maximal lines: {}", m.maximal_space_dim()),
    ];
    let mut json = json!({
        "p": p.to_string(),
        "r": weight_json(&r),
        "dim": m.dim(),
        "first_root": first_root,
        "k_eigenvalues": m.k_eigenvalues().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "maximal_lines": m.maximal_space_dim(),
        "relations_pass": rep.all_pass(),
    });
    if with_matrices {
        module_text(&m, &mut text);
        relations_text(&rep, &mut text);
        json["module"] = module_json(&m);
        json["relations"] = relations_json(&rep);
    }
    Ok(Output { text, json })
}

fn dim_text(d: Option<usize>) -> String {
    d.map_or("infinite".to_string(), |d| d.to_string())
}

fn composition(p: &str, r: &str) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    let cs = composition_series(&p, &r)?;
    let mut text = vec![format!("Z({})", weight_text(&r))];
    for f in &cs.factors {
        text.push(format!(
            "  V({}) dim {}",
            weight_text(&f.weight),
            dim_text(f.dim)
        ));
    }
    text.push(format!(
        "chain: {}",
        cs.chain
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" > ")
    ));
    for (t, n) in &cs.skipped_roots {
        text.push(format!("skipped root {n} at {t}: no maximal vector"));
    }
    for s in &cs.flagged {
        text.push(format!("flagged: {s}"));
    }
    let factors: Vec<Value> = cs
        .factors
        .iter()
        .map(|f| json!({ "highest_weight": f.weight.to_string(), "class": f.weight.classification(), "dim": f.dim }))
        .collect();
    Ok(Output {
        text,
        json: json!({
            "p": p.to_string(),
            "r": weight_json(&r),
            "factors": factors,
            "chain": cs.chain.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "skipped_roots": cs.skipped_roots.iter().map(|(t, n)| json!({ "top": t.to_string(), "n": n })).collect::<Vec<_>>(),
            "flagged": cs.flagged,
        }),
    })
}

fn block(p: &str, r: &str) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let r = arg("r", parse_weight(r))?;
    let rep = block_t(&p, &r)?;
    let names = |s: &std::collections::BTreeSet<qoscillator::blocks::WeightKey>| {
        s.iter().map(|w| w.to_string()).collect::<Vec<_>>()
    };
    let mut text = vec![
        format!("r = {}", weight_text(&r)),
        format!("r0 = q^{} r = {}", rep.n, weight_text(&rep.r0)),
        format!("S(r) = {{{}}}", names(&rep.s).join(", ")),
        format!("T(r) = {{{}}}", names(&rep.t).join(", ")),
    ];
    text.extend(rep.edges.iter().map(|e| format!("edge: {}", e.reason)));
    text.extend(
        rep.outside_s
            .iter()
            .map(|e| format!("outside S: {}", e.reason)),
    );
    let edges = |es: &[qoscillator::blocks::BlockEdge]| {
        es.iter()
            .map(|e| json!({ "from": e.from.to_string(), "to": e.to.to_string(), "reason": e.reason }))
            .collect::<Vec<_>>()
    };
    Ok(Output {
        text,
        json: json!({
            "p": p.to_string(),
            "r": weight_json(&r),
            "r0": weight_json(&rep.r0),
            "shift": rep.n,
            "S": names(&rep.s),
            "T": names(&rep.t),
            "edges": edges(&rep.edges),
            "outside_S": edges(&rep.outside_s),
        }),
    })
}

fn semisimple(p: &str, nmax: i64) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let rep = semisimplicity_check(&p, nmax)?;
    let fd: Vec<String> = rep
        .finite_dimensional
        .iter()
        .map(|(e, n)| weight_text(&Weight::signed_q_pow(*e, *n)))
        .collect();
    let mut text = vec![
        rep.verdict().to_string(),
        rep.note(),
        format!(
            "finite-dimensional simples at: {}",
            if fd.is_empty() {
                "none".into()
            } else {
                fd.join(", ")
            }
        ),
    ];
    for w in &rep.failures {
        text.push(format!(
            "two roots at {}: m in {:?}",
            Weight::signed_q_pow(w.eps, w.n),
            w.roots
        ));
    }
    let failures: Vec<Value> = rep
        .failures
        .iter()
        .map(|w| json!({ "eps": w.eps, "n": w.n, "roots": w.roots }))
        .collect();
    Ok(Output {
        text,
        json: json!({
            "p": p.to_string(),
            "nmax": nmax,
            "verdict": rep.verdict(),
            "note": rep.note(),
            "finite_dimensional": fd,
            "failures": failures,
        }),
    })
}

fn center(p: &str, bounds: &str, span_limit: usize) -> Result<Output> {
    let p = arg("p", parse_center_poly(p))?;
    let b = arg("bounds", parse_bounds(bounds))?;
    let res = centralizer_basis(&CentralizerQuery::new(p.clone(), b).with_span_limit(span_limit))?;
    let bt = b.map(|x| x.to_string()).join(",");
    let basis: Vec<String> = res.basis.iter().map(PbwElement::to_string).collect();
    let mut text = vec![
        format!(
            "centralizer within bounds ({bt}): dimension {}",
            res.dimension
        ),
        format!("candidates: {}", res.candidates),
    ];
    text.extend(basis.iter().map(|z| format!("  {z}")));
    Ok(Output {
        text,
        json: json!({
            "p": p.to_string(),
            "bounds": b,
            "candidates": res.candidates,
            "dimension": res.dimension,
            "basis": basis,
            "label": "centralizer within bounds",
        }),
    })
}

fn counterexample() -> Result<Output> {
    let (m, lat) = c0_zero_counterexample();
    let rep = verify_module_relations(&m, &CenterPolynomial::zero())?;
    let subs: Vec<String> = lat
        .submodules
        .iter()
        .map(|s| {
            if s.is_empty() {
                "0".to_string()
            } else if s.len() == m.dim() {
                "V".to_string()
            } else {
                let ls: Vec<&str> = s.iter().map(|i| m.labels[*i].as_str()).collect();
                format!("span({})", ls.join(", "))
            }
        })
        .collect();
    let verdict = if lat.semisimple {
        "semisimple"
    } else {
        "not semisimple"
    };
    let mut text = Vec::new();
    module_text(&m, &mut text);
    relations_text(&rep, &mut text);
    text.push(format!("submodules: {}", subs.join(", ")));
    text.push(format!(
        "complement of span(v_0): {}",
        if lat.complement_exists {
            "exists"
        } else {
            "none"
        }
    ));
    text.push(verdict.to_string());
    let mut json = module_json(&m);
    json["relations"] = relations_json(&rep);
    json["submodules"] = json!(subs);
    json["complement_exists"] = json!(lat.complement_exists);
    json["verdict"] = json!(verdict);
    Ok(Output { text, json })
}

/// Runs one subcommand and renders its output.
pub fn run(cli: &Cli) -> Result<String> {
    let out = match &cli.command {
        Command::NormalForm { expr, p } => normal_form(expr, p)?,
        Command::ConfluenceCheck { p } => confluence(p)?,
        Command::Multiply { lhs, rhs, p } => multiply_cmd(lhs, rhs, p)?,
        Command::Alpha { p, r, m } => alpha_cmd(p, r, *m)?,
        Command::AlphaRoots { p, r } => alpha_roots(p, r)?,
        Command::MaximalVectors { p, r, n } => maximal(p, r, *n)?,
        Command::StructureVector { p, r, n } => structure(p, r, *n)?,
        Command::Simple { p, r, matrices } => simple(p, r, *matrices)?,
        Command::CompositionSeries { p, r } => composition(p, r)?,
        Command::Block { p, r } => block(p, r)?,
        Command::SemisimpleCheck { p, nmax } => semisimple(p, *nmax)?,
        Command::Center {
            p,
            bounds,
            span_limit,
        } => center(p, bounds, *span_limit)?,
        Command::CounterexampleC0zero => counterexample()?,
    };
    Ok(match cli.format {
        Format::Text => out.text.join("\n"),
        Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
    })
}
