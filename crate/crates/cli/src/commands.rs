//! Subcommand bodies. Each returns the text and JSON renderings of one result.

use std::ops::RangeInclusive;
use std::path::Path;

use serde_json::{json, Value};

use jetvar::char_ring::{anomaly_p, anomaly_q, Presentation, RepDescriptor, Verdict};
use jetvar::formal_vf::{CeSubalgebra, FormalVFModel};
use jetvar::geometry_models::{verify_bianchi, verify_cartan, verify_lemma15, verify_lemma20, verify_prop14, VerificationReport};
use jetvar::jet_calculus::{euler_lagrange, functional_equiv, helmholtz, JetContext, JetForm};
use jetvar::weil_cohomology::{dimensions, LieAlgebraData, SubalgebraEmbedding, WeilAlgebra, WoAlgebra};

use crate::args::{Cli, Command, ContextArgs, GfRelative, Suite};
use crate::cache::{CacheKey, ResultsCache};
use crate::dsl::{self, BinOp, ContextSpec, Expr, Pos};
use crate::error::{exit, CliError};

/// Result of one subcommand.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// Whether the computed verdict is the positive one, for commands that have one.
    pub holds: Option<bool>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, holds: None, exit_code: exit::OK }
    }

    fn verdict(text: String, json: Value, holds: bool) -> Self {
        Outcome { text, json, holds: Some(holds), exit_code: exit::OK }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("values serialize")
        } else {
            self.text.clone()
        }
    }
}

/// Runs one subcommand. A failed identity suite exits with the verification
/// code; with `--check`, so does any negative verdict.
pub fn run(cli: &Cli, cache: &mut ResultsCache) -> Result<Outcome, CliError> {
    let mut outcome = dispatch(cli, cache)?;
    let strict = cli.check || matches!(cli.command, Command::Verify { .. });
    if strict && outcome.holds == Some(false) {
        outcome.exit_code = exit::VERIFICATION;
    }
    Ok(outcome)
}

fn dispatch(cli: &Cli, cache: &mut ResultsCache) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::El { file, context } => el(file, context),
        Command::Helmholtz { file, context } => helmholtz_cmd(file, context),
        Command::Equiv { a, b, k, context } => equiv(a, b, *k, context),
        Command::Weil { algebra, rel, degrees, truncation } => weil(algebra, rel, degrees.clone(), *truncation, cache),
        Command::Wo { n, degrees } => wo(*n, degrees.clone(), cache),
        Command::Gf { n, rel, degrees, weights, gauge } => gf(*n, *rel, degrees.clone(), weights.clone(), gauge.as_deref(), cache),
        Command::Verify { suite, n, gauge, truncation } => verify(*suite, *n, gauge, *truncation),
        Command::Anomaly { n, rep } => anomaly(*n, rep),
        Command::Mixed { n, rep, group, gauge } => mixed(*n, rep, group, gauge),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })
}

struct Source {
    path: String,
    text: String,
    expr: Expr,
}

fn load(path: &Path) -> Result<Source, CliError> {
    let text = read(path)?;
    let path = path.display().to_string();
    let expr = dsl::parse(&text).map_err(|e| CliError::dsl(&path, &text, e))?;
    Ok(Source { path, text, expr })
}

/// One context for several files, inferred from all of them together.
fn shared_context(sources: &[&Source], spec: ContextSpec) -> Result<JetContext, CliError> {
    let joint = sources
        .iter()
        .map(|s| s.expr.clone())
        .reduce(|a, b| Expr::Binary(BinOp::Add, Box::new(a), Box::new(b), Pos(0)))
        .expect("at least one source");
    dsl::infer_context(&joint, spec).map_err(|e| match sources {
        [only] => CliError::dsl(&only.path, &only.text, e),
        _ => CliError::Input(e.to_string()),
    })
}

fn evaluate(source: &Source, ctx: JetContext) -> Result<JetForm, CliError> {
    dsl::evaluate(&source.expr, ctx).map_err(|e| CliError::dsl(&source.path, &source.text, e))
}

fn context_json(ctx: JetContext) -> Value {
    json!({ "n": ctx.n(), "m": ctx.m() })
}

fn el(file: &Path, args: &ContextArgs) -> Result<Outcome, CliError> {
    let src = load(file)?;
    let ctx = shared_context(&[&src], args.spec())?;
    let lagrangian = evaluate(&src, ctx)?;
    let source = euler_lagrange(&lagrangian)?;
    let printed = dsl::print(&source);
    let json = json!({
        "command": "el",
        "context": context_json(ctx),
        "lagrangian": dsl::print(&lagrangian),
        "source_form": printed,
    });
    Ok(Outcome::ok(printed, json))
}

fn helmholtz_cmd(file: &Path, args: &ContextArgs) -> Result<Outcome, CliError> {
    let src = load(file)?;
    let ctx = shared_context(&[&src], args.spec())?;
    let input = evaluate(&src, ctx)?;
    let n = ctx.n() as u32;
    let from_lagrangian = !input.is_zero() && input.bidegrees().iter().all(|&b| b == (n, 0));
    let source = if from_lagrangian { euler_lagrange(&input)? } else { input };
    let h = helmholtz(&source)?;
    let verdict = if h.is_zero() { "VARIATIONAL" } else { "NOT VARIATIONAL" };
    let text = format!("source: {}\nhelmholtz: {}\n{verdict}", dsl::print(&source), dsl::print(&h));
    let json = json!({
        "command": "helmholtz",
        "context": context_json(ctx),
        "from_lagrangian": from_lagrangian,
        "source_form": dsl::print(&source),
        "helmholtz": dsl::print(&h),
        "variational": h.is_zero(),
    });
    Ok(Outcome::verdict(text, json, h.is_zero()))
}

fn equiv(a: &Path, b: &Path, k: u32, args: &ContextArgs) -> Result<Outcome, CliError> {
    let (sa, sb) = (load(a)?, load(b)?);
    let ctx = shared_context(&[&sa, &sb], args.spec())?;
    let (fa, fb) = (evaluate(&sa, ctx)?, evaluate(&sb, ctx)?);
    let same = functional_equiv(&fa, &fb, k)?;
    let text = if same { "EQUIVALENT" } else { "NOT EQUIVALENT" }.to_string();
    let json = json!({ "command": "equiv", "context": context_json(ctx), "k": k, "equivalent": same });
    Ok(Outcome::verdict(text, json, same))
}

/// `gl<n>`, `so<n>`, `so3` or `abelian<n>`, with the canonical name.
pub fn lie_algebra(name: &str) -> Result<(String, LieAlgebraData), CliError> {
    let bad = || CliError::Input(format!("unknown Lie algebra `{name}`; use gl<n>, so<n>, so3 or abelian<n>"));
    let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (head, digits) = name.split_at(split);
    let k: usize = digits.parse().map_err(|_| bad())?;
    if k == 0 || k > 8 {
        return Err(bad());
    }
    let lie = match head {
        "gl" => LieAlgebraData::gl(k),
        "so" if k == 3 => LieAlgebraData::so3(),
        "so" if k >= 2 => LieAlgebraData::so(k),
        "abelian" => LieAlgebraData::abelian(k),
        _ => return Err(bad()),
    };
    Ok((format!("{head}{k}"), lie))
}

fn embedding(algebra: &str, lie: &LieAlgebraData, rel: &str) -> Result<(String, SubalgebraEmbedding), CliError> {
    match rel {
        "0" | "trivial" => Ok(("trivial".into(), SubalgebraEmbedding::trivial(lie))),
        r if r == "full" || r == algebra => Ok(("full".into(), SubalgebraEmbedding::full(lie))),
        r if r == "so" || r.starts_with("so") => {
            let n = algebra
                .strip_prefix("gl")
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| CliError::Input(format!("`--rel {r}` needs a gl<n> algebra, got {algebra}")))?;
            if r != "so" && r != format!("so{n}") {
                return Err(CliError::Input(format!("`--rel {r}` does not sit inside gl{n}")));
            }
            Ok((format!("so{n}"), SubalgebraEmbedding::so_in_gl(n)))
        }
        _ => Err(CliError::Input(format!("unknown subalgebra `{rel}`; use trivial, full or so"))),
    }
}

/// Aligned table: a header row of column labels, then one row per entry.
fn table(corner: &str, columns: &[String], rows: &[(String, Vec<usize>)]) -> String {
    let first = rows.iter().map(|r| r.0.len()).chain([corner.len()]).max().unwrap_or(0);
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| rows.iter().map(|r| r.1[j].to_string().len()).chain([c.len()]).max().unwrap_or(1))
        .collect();
    let mut out = format!("{corner:<first$}");
    for (c, w) in columns.iter().zip(&widths) {
        out.push_str(&format!(" {c:>w$}"));
    }
    for (label, values) in rows {
        out.push_str(&format!("\n{label:<first$}"));
        for (v, w) in values.iter().zip(&widths) {
            out.push_str(&format!(" {v:>w$}"));
        }
    }
    out
}

fn degree_table(title: String, degrees: &RangeInclusive<u32>, dims: &[usize]) -> String {
    let cols: Vec<String> = degrees.clone().map(|d| d.to_string()).collect();
    format!("{title}\n{}", table("degree", &cols, &[("dim".into(), dims.to_vec())]))
}

/// Looks up every key, computing the missing ones with `compute` and storing them.
fn cached(
    cache: &mut ResultsCache,
    keys: Vec<CacheKey>,
    mut compute: impl FnMut(&CacheKey) -> Result<usize, CliError>,
) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::with_capacity(keys.len());
    let mut fresh = Vec::new();
    for key in keys {
        let dim = match cache.get(&key) {
            Some(d) => d,
            None => {
                let d = compute(&key)?;
                fresh.push((key, d));
                d
            }
        };
        out.push(dim);
    }
    cache.insert_all(&fresh)?;
    Ok(out)
}

fn weil(
    algebra: &str,
    rel: &str,
    degrees: RangeInclusive<u32>,
    truncation: Option<u32>,
    cache: &mut ResultsCache,
) -> Result<Outcome, CliError> {
    let (name, lie) = lie_algebra(algebra)?;
    let (rel_name, h) = embedding(&name, &lie, rel)?;
    let keys = degrees
        .clone()
        .map(|degree| CacheKey { kind: "weil".into(), algebra: name.clone(), relative: rel_name.clone(), truncation, degree, weight: None })
        .collect();
    let mut weil: Option<WeilAlgebra> = None;
    let dims = cached(cache, keys, |key| {
        if weil.is_none() {
            weil = Some(WeilAlgebra::build(&lie, truncation)?);
        }
        let w = weil.as_ref().expect("built above");
        Ok(dimensions(&w.relative_cohomology(&h, key.degree..=key.degree)?)[0])
    })?;
    let trunc = truncation.map_or("none".to_string(), |t| t.to_string());
    let title = format!("H(W({name}), {rel_name}), truncation {trunc}");
    let json = json!({
        "command": "weil",
        "algebra": name,
        "relative": rel_name,
        "truncation": truncation,
        "table": degrees.clone().zip(&dims).map(|(d, k)| json!({ "degree": d, "dimension": k })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(degree_table(title, &degrees, &dims), json))
}

fn wo(n: u32, degrees: RangeInclusive<u32>, cache: &mut ResultsCache) -> Result<Outcome, CliError> {
    let name = format!("WO{n}");
    let keys = degrees
        .clone()
        .map(|degree| CacheKey { kind: "wo".into(), algebra: name.clone(), relative: "trivial".into(), truncation: None, degree, weight: None })
        .collect();
    let mut model: Option<WoAlgebra> = None;
    let dims = cached(cache, keys, |key| {
        if model.is_none() {
            model = Some(WoAlgebra::build(n)?);
        }
        let m = model.as_ref().expect("built above");
        Ok(dimensions(&m.cohomology(key.degree..=key.degree)?)[0])
    })?;
    let json = json!({
        "command": "wo",
        "n": n,
        "table": degrees.clone().zip(&dims).map(|(d, k)| json!({ "degree": d, "dimension": k })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(degree_table(format!("H(WO_{n})"), &degrees, &dims), json))
}

fn gf(
    n: usize,
    rel: GfRelative,
    degrees: RangeInclusive<u32>,
    weights: RangeInclusive<i32>,
    gauge: Option<&str>,
    cache: &mut ResultsCache,
) -> Result<Outcome, CliError> {
    let gauge = gauge.map(lie_algebra).transpose()?;
    let (sub, rel_name) = match rel {
        GfRelative::Trivial => (CeSubalgebra::Trivial, "trivial"),
        GfRelative::So => (CeSubalgebra::So, "so"),
        GfRelative::Gl => (CeSubalgebra::Gl, "gl"),
    };
    let algebra = match &gauge {
        Some((g, _)) => format!("a{n},{g}"),
        None => format!("a{n}"),
    };
    let mut keys = Vec::new();
    for weight in weights.clone() {
        for degree in degrees.clone() {
            keys.push(CacheKey {
                kind: "gf".into(),
                algebra: algebra.clone(),
                relative: rel_name.into(),
                truncation: None,
                degree,
                weight: Some(weight),
            });
        }
    }
    let mut model: Option<FormalVFModel> = None;
    let dims = cached(cache, keys.clone(), |key| {
        if model.is_none() {
            model = Some(FormalVFModel::new(n, gauge.as_ref().map(|g| g.1.clone()))?);
        }
        let m = model.as_ref().expect("built above");
        let w = key.weight.expect("gf keys carry a weight");
        Ok(m.relative_cohomology(sub, key.degree..=key.degree, w..=w)?[0].dimension)
    })?;
    let width = degrees.clone().count();
    let rows: Vec<(String, Vec<usize>)> =
        weights.clone().zip(dims.chunks(width)).map(|(w, row)| (format!("w={w}"), row.to_vec())).collect();
    let cols: Vec<String> = degrees.clone().map(|d| d.to_string()).collect();
    let sub_label = match rel {
        GfRelative::Trivial => "0".to_string(),
        _ => format!("{rel_name}({n})"),
    };
    let text = format!("H({algebra}, {sub_label}) by weight\n{}", table("weight\\degree", &cols, &rows));
    let json = json!({
        "command": "gf",
        "n": n,
        "algebra": algebra,
        "relative": rel_name,
        "table": keys.iter().zip(&dims).map(|(k, d)| json!({ "degree": k.degree, "weight": k.weight, "dimension": d })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}

fn report_json(report: &VerificationReport) -> Value {
    json!({
        "command": "verify",
        "suite": report.suite,
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({ "name": c.name, "holds": c.holds, "lhs": c.lhs, "rhs": c.rhs })).collect::<Vec<_>>(),
        "failures": report.failures().iter().map(|c| json!({ "name": c.name, "lhs": c.lhs, "rhs": c.rhs })).collect::<Vec<_>>(),
    })
}

fn verify(suite: Suite, n: usize, gauge: &str, truncation: u32) -> Result<Outcome, CliError> {
    let (_, lie) = lie_algebra(gauge)?;
    let report = match suite {
        Suite::Lemma15 => verify_lemma15(n)?,
        Suite::Lemma20 => verify_lemma20(n, &lie)?,
        Suite::Prop14 => verify_prop14(n)?,
        Suite::Bianchi => verify_bianchi(n, &lie)?,
        Suite::Cartan => verify_cartan(n, &lie, truncation)?,
    };
    Ok(Outcome::verdict(report.to_string(), report_json(&report), report.passed()))
}

fn parse_rep(text: &str) -> Result<RepDescriptor, CliError> {
    text.parse().map_err(|e: jetvar::Error| CliError::Input(e.to_string()))
}

fn anomaly(n: u32, rep: &str) -> Result<Outcome, CliError> {
    let rep = parse_rep(rep)?;
    let p = anomaly_p(n, &rep)?;
    let json = json!({
        "command": "anomaly",
        "n": n,
        "rep": rep.to_string(),
        "polynomial": p.polynomial.to_string(),
        "verdict": p.verdict.to_string(),
    });
    Ok(Outcome::verdict(p.to_string(), json, p.verdict == Verdict::Cancels))
}

fn presentation(group: &str) -> Result<Presentation, CliError> {
    let bad = || CliError::Input(format!("unknown gauge group `{group}`; use u<N> or so<N>"));
    if let Some(k) = group.strip_prefix('u') {
        return Ok(Presentation::unitary(k.parse().map_err(|_| bad())?)?);
    }
    if let Some(k) = group.strip_prefix("so") {
        return Ok(Presentation::so(k.parse().map_err(|_| bad())?)?);
    }
    Err(bad())
}

fn mixed(n: u32, rep: &str, group: &str, gauge: &str) -> Result<Outcome, CliError> {
    let rep = parse_rep(rep)?;
    let beta = parse_rep(gauge)?;
    let g = presentation(group)?;
    let q = anomaly_q(n, &rep, &g, &beta)?;
    let json = json!({
        "command": "mixed",
        "n": n,
        "rep": rep.to_string(),
        "group": g.to_string(),
        "gauge": beta.to_string(),
        "polynomial": q.polynomial.to_string(),
        "verdict": q.verdict.to_string(),
        "components": q.components.iter().map(|((r, s), p)| json!({
            "gravitational_degree": r,
            "gauge_degree": s,
            "polynomial": p.to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::verdict(q.to_string().trim_end().to_string(), json, q.verdict == Verdict::Cancels))
}
