//! Report front end for the `weitzenbock` engine.
//!
//! [`run`] parses one query (or a batch file of queries), drives the
//! machine and writes a text or JSON report.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use weitzenbock::reptheory::casimir_t;
use weitzenbock::wmachine::{curvature_report, Machine};
use weitzenbock::{build_algebra, Error, Family, HighestWeight, Rat, WFormula};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NOT_DOMINANT: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Section {
    Decomposition,
    Weights,
    Twist,
    Kmatrix,
    Basis,
    Bochner,
    Curvature,
    Casimirs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "wmachine", version, about = "Weitzenböck formulas for holonomy representations")]
struct Cli {
    /// so, u, g2 or spin7
    #[arg(long, required_unless_present = "batch")]
    algebra: Option<String>,
    /// n for SO(n) and U(n)
    #[arg(long)]
    n: Option<usize>,
    /// Highest weight in fundamental coordinates, comma separated
    #[arg(long, allow_hyphen_values = true, required_unless_present = "batch")]
    weight: Option<String>,
    #[arg(long, value_delimiter = ',')]
    sections: Option<Vec<Section>>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// File with one query per line; emits one JSON object per line
    #[arg(long, conflicts_with_all = ["algebra", "n", "weight", "sections"])]
    batch: Option<std::path::PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub family: Family,
    pub weight: Vec<i64>,
    pub sections: BTreeSet<Section>,
    pub format: Format,
}

/// A failed query: exit code plus diagnostic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotDominant => EXIT_NOT_DOMINANT,
            Error::UnsupportedFamily(_) | Error::TooLarge => EXIT_UNSUPPORTED,
            Error::DimensionMismatch | Error::NotInLattice => EXIT_MALFORMED,
            _ => EXIT_INTERNAL,
        };
        let message = if code == EXIT_INTERNAL {
            format!("internal error: {}", e)
        } else {
            e.to_string()
        };
        Failure { code, message }
    }
}

fn resolve_family(name: &str, n: Option<usize>) -> Result<Family, Failure> {
    let need_n = || n.ok_or_else(|| Failure::new(EXIT_MALFORMED, format!("--n is required for {}", name)));
    let no_n = |f: Family| match n {
        Some(_) => Err(Failure::new(EXIT_MALFORMED, format!("--n is not accepted for {}", name))),
        None => Ok(f),
    };
    match name.to_ascii_lowercase().as_str() {
        "so" => Ok(Family::so(need_n()?)),
        "u" => Ok(Family::U(need_n()?)),
        "g2" => no_n(Family::G2),
        "spin7" => no_n(Family::Spin7),
        other => Err(Failure::new(
            EXIT_UNSUPPORTED,
            format!("unsupported algebra: {}", other),
        )),
    }
}

fn parse_weight(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| Failure::new(EXIT_MALFORMED, format!("bad weight coordinate {:?}", c)))
        })
        .collect()
}

fn query_from(cli: &Cli) -> Result<Query, Failure> {
    let family = resolve_family(cli.algebra.as_deref().unwrap_or_default(), cli.n)?;
    let weight = parse_weight(cli.weight.as_deref().unwrap_or_default())?;
    let sections = match &cli.sections {
        Some(list) => list.iter().copied().collect(),
        None => Section::value_variants().iter().copied().collect(),
    };
    Ok(Query {
        family,
        weight,
        sections,
        format: cli.format,
    })
}

/// Builds the machine for a query.
pub fn evaluate(q: &Query) -> Result<Machine, Failure> {
    let alg = Arc::new(build_algebra(q.family)?);
    if q.weight.len() != alg.rank {
        return Err(Failure::new(
            EXIT_MALFORMED,
            format!("{} needs {} weight coordinates, got {}", q.family, alg.rank, q.weight.len()),
        ));
    }
    let lam = HighestWeight::new(&alg, &q.weight)?;
    Ok(Machine::new(&lam)?)
}

/// Parses `argv`, runs the query or batch and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Some(path) = &cli.batch {
        return match std::fs::read_to_string(path) {
            Ok(text) => run_batch(&text, out, err),
            Err(e) => {
                let _ = writeln!(err, "cannot read {}: {}", path.display(), e);
                EXIT_MALFORMED
            }
        };
    }
    let result = query_from(&cli).and_then(|q| evaluate(&q).map(|m| (q, m)));
    match result {
        Ok((q, m)) => {
            let text = match q.format {
                Format::Text => render_text(&m, &q.sections),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report_json(&m, &q.sections))
                        .expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

/// One compact JSON object per non-empty line, in input order. The exit
/// code is that of the first failing line.
pub fn run_batch(text: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut status = EXIT_OK;
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let argv = std::iter::once("wmachine").chain(line.split_whitespace());
        let parsed = Cli::try_parse_from(argv)
            .map_err(|e| Failure::new(EXIT_MALFORMED, e.kind().to_string()))
            .and_then(|cli| {
                if cli.batch.is_some() {
                    Err(Failure::new(EXIT_MALFORMED, "nested --batch"))
                } else {
                    query_from(&cli)
                }
            });
        let mut obj = Map::new();
        obj.insert("query".into(), Value::String(line.into()));
        match parsed.and_then(|q| evaluate(&q).map(|m| (q, m))) {
            Ok((q, m)) => {
                if let Value::Object(r) = report_json(&m, &q.sections) {
                    obj.extend(r);
                }
            }
            Err(f) => {
                let _ = writeln!(err, "{}: {}", line, f.message);
                if status == EXIT_OK {
                    status = f.code;
                }
                obj.insert("error".into(), json!({"exit": f.code, "message": f.message}));
            }
        }
        let _ = writeln!(out, "{}", Value::Object(obj));
    }
    status
}

fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn int_json(i: &num_bigint::BigInt) -> Value {
    match i.to_i64() {
        Some(x) => json!(x),
        None => Value::String(i.to_string()),
    }
}

/// Coefficients of `T*_ε T_ε` for a formula `F`: the operator is `−F(∇²)`.
fn operator_coeffs(f: &WFormula) -> Vec<Rat> {
    f.coeffs.iter().map(|c| -c.clone()).collect()
}

pub fn report_json(m: &Machine, sections: &BTreeSet<Section>) -> Value {
    let ctx = &m.ctx;
    let alg = &ctx.alg;
    let has = |s: Section| sections.contains(&s);
    let mut r = Map::new();
    let mut a = Map::new();
    a.insert("family".into(), json!(alg.family.name()));
    if let Some(n) = alg.family.parameter() {
        a.insert("parameter".into(), json!(n));
    }
    a.insert("dimT".into(), json!(alg.dim_t));
    a.insert("dimG".into(), json!(alg.dim_g));
    r.insert("algebra".into(), Value::Object(a));
    r.insert(
        "lambda".into(),
        json!({"fundamental": ctx.lambda.fund, "dim": int_json(&ctx.dim)}),
    );
    if has(Section::Decomposition) || has(Section::Weights) {
        let entries = ctx
            .entries
            .iter()
            .map(|e| {
                let mut o = Map::new();
                o.insert("label".into(), Value::String(e.label.ascii()));
                if has(Section::Decomposition) {
                    o.insert("mu_fundamental".into(), json!(e.mu_fund));
                    o.insert("dim".into(), int_json(&e.dim));
                    o.insert("dratio_num".into(), int_json(e.dratio.numer()));
                    o.insert("dratio_den".into(), int_json(e.dratio.denom()));
                }
                if has(Section::Weights) {
                    o.insert("b".into(), rat_json(&e.b));
                    if let Some(bc) = &e.b_center {
                        o.insert("b_center".into(), rat_json(bc));
                    }
                }
                Value::Object(o)
            })
            .collect();
        r.insert("decomposition".into(), Value::Array(entries));
    }
    if has(Section::Twist) {
        r.insert("tau".into(), matrix_json(&m.tau.m.to_rows()));
    }
    if has(Section::Kmatrix) {
        r.insert("k_matrix".into(), matrix_json(&m.k.m.to_rows()));
        let spectrum = m
            .spaces
            .iter()
            .filter(|s| !s.basis.is_empty())
            .map(|s| json!({"eigenvalue": rat_json(&s.eigenvalue), "multiplicity": s.basis.len()}))
            .collect();
        r.insert("k_spectrum".into(), Value::Array(spectrum));
    }
    if has(Section::Basis) {
        let basis = m
            .basis
            .vectors
            .iter()
            .map(|v| {
                let mut o = Map::new();
                if let Some(d) = v.degree {
                    o.insert("degree".into(), json!(d));
                }
                if let Some(t) = v.tau_eig {
                    o.insert("tau_eig".into(), json!(t));
                }
                if let Some(k) = &v.k_eig {
                    o.insert("k_eig".into(), rat_json(k));
                }
                o.insert("coeffs".into(), rats_json(&operator_coeffs(&v.formula)));
                Value::Object(o)
            })
            .collect();
        r.insert("basis".into(), Value::Array(basis));
    }
    if has(Section::Bochner) {
        if let Some(b) = &m.bochner {
            r.insert("bochner".into(), json!({"coeffs": rats_json(&operator_coeffs(b))}));
        }
    }
    if has(Section::Curvature) {
        let c = curvature_report(ctx);
        r.insert("qR".into(), rats_json(&c.q_r));
        r.insert("laplacian".into(), rats_json(&c.laplacian));
    }
    if has(Section::Casimirs) {
        let mut powers = Map::new();
        for k in 2..=6u32 {
            powers.insert(k.to_string(), rat_json(&ctx.higher_casimir(k)));
        }
        r.insert(
            "casimirs".into(),
            json!({
                "cas_lambda": rat_json(&ctx.casimir()),
                "cas_t": rat_json(&casimir_t(alg)),
                "trace_powers": powers,
            }),
        );
    }
    r.insert(
        "flags".into(),
        json!({
            "degenerate": ctx.degenerate,
            "spin_gap": m.basis.spin_gap,
            "so4_warning": alg.so4_warning(),
        }),
    );
    Value::Object(r)
}

fn matrix_json(rows: &[Vec<Rat>]) -> Value {
    Value::Array(rows.iter().map(|r| rats_json(r)).collect())
}

fn text_rat(r: &Rat) -> String {
    let s = r.to_string();
    match s.strip_prefix('-') {
        Some(rest) => format!("−{}", rest),
        None => s,
    }
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `4·T*₋ε₂T₋ε₂ + 4/3·T*₊ε₃T₊ε₃ − 1·T*₊ε₁T₊ε₁`, terms in increasing
/// conformal weight, zero terms dropped.
pub fn operator_row(m: &Machine, coeffs: &[Rat]) -> String {
    let ctx = &m.ctx;
    let mut order: Vec<usize> = (0..ctx.len()).collect();
    order.sort_by(|&i, &j| ctx.entries[i].b.cmp(&ctx.entries[j].b));
    let mut s = String::new();
    for i in order {
        let c = &coeffs[i];
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rat::zero();
        let sign = match (s.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "−",
            (false, false) => " + ",
            (false, true) => " − ",
        };
        let l = ctx.entries[i].label.pretty();
        let _ = write!(s, "{}{}·T*{}T{}", sign, c.abs(), l, l);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|x| x.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::from(" ");
        for (c, cell) in r.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            let _ = write!(line, " {}{}", cell, " ".repeat(pad));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn matrix_text(m: &Machine, rows: &[Vec<Rat>]) -> String {
    let labels: Vec<String> = m.ctx.entries.iter().map(|e| e.label.pretty()).collect();
    let mut t = vec![std::iter::once(String::new()).chain(labels.iter().cloned()).collect()];
    for (l, r) in labels.iter().zip(rows) {
        t.push(std::iter::once(l.clone()).chain(r.iter().map(text_rat)).collect());
    }
    table(&t)
}

fn eig_text(v: i8) -> &'static str {
    if v > 0 {
        "+1"
    } else {
        "−1"
    }
}

pub fn render_text(m: &Machine, sections: &BTreeSet<Section>) -> String {
    let ctx = &m.ctx;
    let alg = &ctx.alg;
    let has = |s: Section| sections.contains(&s);
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {}  dim T = {}  dim g = {}", alg.family, alg.dim_t, alg.dim_g);
    let _ = writeln!(s, "lambda: {}  dim V_λ = {}", tuple(&ctx.lambda.fund), ctx.dim);
    if has(Section::Decomposition) || has(Section::Weights) {
        let u = ctx.entries.iter().any(|e| e.b_center.is_some());
        let mut head = vec!["ε".to_string()];
        if has(Section::Decomposition) {
            head.extend(["λ+ε", "dim", "d_ε"].map(String::from));
        }
        if has(Section::Weights) {
            head.push("b_ε".into());
            if u {
                head.push("b_ε(center)".into());
            }
        }
        let mut rows = vec![head];
        for e in &ctx.entries {
            let mut r = vec![e.label.pretty()];
            if has(Section::Decomposition) {
                r.push(tuple(&e.mu_fund));
                r.push(e.dim.to_string());
                r.push(text_rat(&e.dratio));
            }
            if has(Section::Weights) {
                r.push(text_rat(&e.b));
                if let Some(bc) = &e.b_center {
                    r.push(text_rat(bc));
                }
            }
            rows.push(r);
        }
        let _ = writeln!(s, "\ndecomposition of T ⊗ V_λ");
        s.push_str(&table(&rows));
    }
    if has(Section::Twist) {
        let _ = writeln!(s, "\ntwist τ (row ε: τ pr_ε)");
        s.push_str(&matrix_text(m, &m.tau.m.to_rows()));
    }
    if has(Section::Kmatrix) {
        let _ = writeln!(s, "\nclassifying endomorphism K (row ε: K pr_ε)");
        s.push_str(&matrix_text(m, &m.k.m.to_rows()));
        let spec: Vec<String> = m
            .spaces
            .iter()
            .filter(|e| !e.basis.is_empty())
            .map(|e| format!("{} [{}] ×{}", text_rat(&e.eigenvalue), e.class, e.basis.len()))
            .collect();
        let _ = writeln!(s, "  spectrum: {}", spec.join(", "));
    }
    if has(Section::Basis) {
        let _ = writeln!(s, "\nbasis of Weitzenböck formulas");
        let mut extra = 0;
        for v in &m.basis.vectors {
            let name = match v.degree {
                Some(d) => format!("p{}", d),
                None => {
                    extra += 1;
                    format!("e{}", extra)
                }
            };
            let mut tags = Vec::new();
            if let Some(t) = v.tau_eig {
                tags.push(format!("τ={}", eig_text(t)));
            }
            if let Some(k) = &v.k_eig {
                tags.push(format!("K={}", text_rat(k)));
            }
            let _ = writeln!(
                s,
                "  {} [{}]: {}",
                name,
                tags.join(" "),
                operator_row(m, &operator_coeffs(&v.formula))
            );
        }
        if !m.basis.complete {
            let _ = writeln!(s, "  incomplete: ℂ[B] misses one direction");
        }
    }
    if has(Section::Bochner) {
        if let Some(b) = &m.bochner {
            let _ = writeln!(s, "\nBochner identity: 0 = {}", operator_row(m, &operator_coeffs(b)));
        }
    }
    if has(Section::Curvature) {
        let c = curvature_report(ctx);
        let _ = writeln!(s, "\nq(R): {}", operator_row(m, &c.q_r));
        let _ = writeln!(s, "Δ: {}", operator_row(m, &c.laplacian));
    }
    if has(Section::Casimirs) {
        let _ = writeln!(s, "\nCas(V_λ) = {}  Cas(T) = {}", text_rat(&ctx.casimir()), text_rat(&casimir_t(alg)));
        for k in 2..=6u32 {
            let _ = writeln!(s, "  tr B^{} = {}", k, text_rat(&ctx.higher_casimir(k)));
        }
    }
    let _ = writeln!(
        s,
        "\nflags: degenerate={} spin_gap={} so4_warning={}",
        ctx.degenerate,
        m.basis.spin_gap,
        alg.so4_warning()
    );
    s
}
