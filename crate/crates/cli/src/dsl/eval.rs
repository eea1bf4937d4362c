use jetvar::exact_algebra::{MultiIndex, RationalFunction, Var, MAX_DIM};
use jetvar::jet_calculus::{JetContext, JetForm};

use super::ast::{BinOp, Expr, Ident};
use super::DslError;

/// Field naming scheme of a DSL file.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Naming {
    Generic,
    Metric,
    /// Connections of a group with the given dimension.
    Connection(usize),
}

/// Explicit context settings; unset entries are inferred from the symbols used.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct ContextSpec {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub naming: Option<Naming>,
}

enum Symbol {
    Base(usize),
    Generic { field: usize, n: usize },
    Metric { n: usize },
    Connection { alpha: usize, n: usize },
    Free,
}

fn split_number(s: &str) -> Option<(usize, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    Some((s[..end].parse().ok()?, &s[end..]))
}

/// Largest direction in an optional `_digits` suffix.
fn suffix_span(rest: &str) -> Option<usize> {
    if rest.is_empty() {
        return Some(0);
    }
    let digits = rest.strip_prefix('_')?;
    Some(MultiIndex::parse_digits(digits).filter(|_| !digits.is_empty())?.span())
}

fn classify(name: &str) -> Option<Symbol> {
    let (head, body) = name.split_at(1);
    match head {
        "x" => {
            let (k, rest) = split_number(body)?;
            (rest.is_empty() && k >= 1).then_some(Symbol::Base(k))
        }
        "u" => {
            let (k, rest) = split_number(body)?;
            (k >= 1).then_some(())?;
            Some(Symbol::Generic { field: k, n: suffix_span(rest)? })
        }
        "y" => {
            let b = body.as_bytes();
            if b.len() < 2 || !b[0].is_ascii_digit() || !b[1].is_ascii_digit() || b[0] == b'0' || b[1] == b'0' {
                return None;
            }
            let span = ((b[0] - b'0') as usize).max((b[1] - b'0') as usize);
            Some(Symbol::Metric { n: span.max(suffix_span(&body[2..])?) })
        }
        "A" => {
            let (alpha, rest) = split_number(body)?;
            let (i, rest) = split_number(rest.strip_prefix('_')?)?;
            (alpha >= 1 && i >= 1).then_some(())?;
            Some(Symbol::Connection { alpha, n: i.max(suffix_span(rest)?) })
        }
        "s" => {
            let (k, rest) = split_number(body)?;
            (rest.is_empty() && k >= 1 && k <= u16::MAX as usize).then_some(Symbol::Free)
        }
        "a" | "b" => {
            let (_, rest) = split_number(body)?;
            let (_, rest) = split_number(rest.strip_prefix('_')?)?;
            suffix_span(rest)?;
            Some(Symbol::Free)
        }
        "t" if body.is_empty() => Some(Symbol::Free),
        _ => None,
    }
}

fn unknown(id: &Ident) -> DslError {
    DslError::UnknownSymbol { name: id.name.clone(), pos: id.pos }
}

/// Jet context for an expression: explicit settings win, the symbols fill in the rest.
pub fn infer_context(expr: &Expr, spec: ContextSpec) -> Result<JetContext, DslError> {
    let mut n = expr.max_total_direction().max(1);
    let mut fields = 1;
    let mut naming = spec.naming;
    let mut naming_at: Option<&Ident> = None;
    for id in expr.identifiers() {
        let sym = classify(&id.name).ok_or_else(|| unknown(id))?;
        let (found, span) = match sym {
            Symbol::Base(k) => (None, k),
            Symbol::Generic { field, n } => {
                fields = fields.max(field);
                (Some(Naming::Generic), n)
            }
            Symbol::Metric { n } => (Some(Naming::Metric), n),
            Symbol::Connection { alpha, n } => (Some(Naming::Connection(alpha)), n),
            Symbol::Free => (None, 0),
        };
        n = n.max(span);
        if let Some(f) = found {
            naming = match (naming, f) {
                (None, f) => Some(f),
                (Some(Naming::Connection(a)), Naming::Connection(b)) if spec.naming.is_none() => Some(Naming::Connection(a.max(b))),
                (Some(a), b) if std::mem::discriminant(&a) == std::mem::discriminant(&b) => Some(a),
                (Some(_), _) => {
                    let first = naming_at.map_or(String::new(), |f| format!(" (after `{}`)", f.name));
                    return Err(DslError::Evaluation { pos: id.pos, message: format!("`{}` mixes field naming schemes{first}", id.name) });
                }
            };
            naming_at.get_or_insert(id);
        }
    }
    let n = match spec.n {
        Some(given) if given < n => {
            return Err(DslError::Evaluation { pos: 0, message: format!("symbols need base dimension {n}, but n = {given} was given") })
        }
        Some(given) => given,
        None => n,
    };
    if n > MAX_DIM {
        return Err(DslError::Evaluation { pos: 0, message: format!("base dimension {n} exceeds {MAX_DIM}") });
    }
    let built = match naming.unwrap_or(Naming::Generic) {
        Naming::Generic => JetContext::new(n, spec.m.unwrap_or(fields).max(fields)),
        Naming::Metric => JetContext::metrics(n),
        Naming::Connection(dim) => JetContext::connections(n, dim),
    };
    built.map_err(|e| DslError::Evaluation { pos: 0, message: e.to_string() })
}

fn resolve(id: &Ident, ctx: JetContext) -> Result<Var, DslError> {
    let name = id.name.as_str();
    if let Some(v) = ctx.parse_field_var(name) {
        return Ok(v);
    }
    match classify(name).ok_or_else(|| unknown(id))? {
        Symbol::Base(k) if k <= ctx.n() => Ok(Var::x(k - 1)),
        Symbol::Free => free_symbol(name).ok_or_else(|| unknown(id)),
        _ => Err(unknown(id)),
    }
}

fn free_symbol(name: &str) -> Option<Var> {
    if name == "t" {
        return Some(Var::T);
    }
    let (head, body) = name.split_at(1);
    let (k, rest) = split_number(body)?;
    match head {
        "s" => Some(Var::Sym((k - 1) as u16)),
        "a" | "b" => {
            let (comp, rest) = split_number(rest.strip_prefix('_')?)?;
            let idx = if rest.is_empty() { MultiIndex::EMPTY } else { MultiIndex::parse_digits(rest.strip_prefix('_')?)? };
            (k >= 1 && comp >= 1).then_some(Var::Param { set: (k - 1) as u8, gauge: head == "b", comp: (comp - 1) as u8, idx })
        }
        _ => None,
    }
}

fn function_of(form: &JetForm) -> Option<RationalFunction> {
    form.as_function()
}

/// Value of an expression, with every coefficient reduced.
pub fn evaluate(expr: &Expr, ctx: JetContext) -> Result<JetForm, DslError> {
    Ok(reduced(&eval(expr, ctx)?))
}

pub(crate) fn reduced(form: &JetForm) -> JetForm {
    form.map_coefficients(|c| Ok(c.clone().reduced())).expect("reduction cannot fail")
}

/// 1/e, keeping powers and products of the divisor as separate denominator
/// factors so that printed denominators `(p)**k` read back unchanged.
fn reciprocal(expr: &Expr, ctx: JetContext, pos: usize) -> Result<RationalFunction, DslError> {
    match expr {
        Expr::Pow(base, k, _) => Ok(reciprocal(base, ctx, pos)?.pow(*k)),
        Expr::Binary(BinOp::Mul | BinOp::Wedge, a, b, _) => Ok(&reciprocal(a, ctx, pos)? * &reciprocal(b, ctx, pos)?),
        Expr::Binary(BinOp::Div, a, b, _) => Ok(&reciprocal(a, ctx, pos)? * &divisor(b, ctx, pos)?),
        Expr::Neg(e) => Ok(-&reciprocal(e, ctx, pos)?),
        _ => divisor(expr, ctx, pos)?.recip().map_err(|_| DslError::Evaluation { pos, message: "division by zero".into() }),
    }
}

fn divisor(expr: &Expr, ctx: JetContext, pos: usize) -> Result<RationalFunction, DslError> {
    function_of(&eval(expr, ctx)?).ok_or_else(|| DslError::Evaluation { pos, message: "the divisor must be a function".into() })
}

fn eval(expr: &Expr, ctx: JetContext) -> Result<JetForm, DslError> {
    Ok(match expr {
        Expr::Int(c) => JetForm::constant(ctx, c.clone()),
        Expr::Var(id) => JetForm::function(ctx, RationalFunction::var(resolve(id, ctx)?)),
        Expr::Neg(e) => -eval(e, ctx)?,
        Expr::Binary(BinOp::Div, a, b, pos) => {
            let inv = reciprocal(b, ctx, pos.0)?;
            eval(a, ctx)?.mul_function(&inv)
        }
        Expr::Binary(op, a, b, pos) => {
            let x = eval(a, ctx)?;
            let y = eval(b, ctx)?;
            match op {
                BinOp::Add => &x + &y,
                BinOp::Sub => &x - &y,
                BinOp::Wedge => x.wedge(&y),
                BinOp::Mul => {
                    if function_of(&x).is_none() && function_of(&y).is_none() {
                        return Err(DslError::Evaluation {
                            pos: pos.0,
                            message: "`*` needs a function on one side; use `^` to wedge two forms".into(),
                        });
                    }
                    x.wedge(&y)
                }
                BinOp::Div => unreachable!("handled above"),
            }
        }
        Expr::Pow(e, k, pos) => {
            let f = function_of(&eval(e, ctx)?)
                .ok_or_else(|| DslError::Evaluation { pos: pos.0, message: "`**` raises functions only; use `^` for forms".into() })?;
            JetForm::function(ctx, f.pow(*k))
        }
        Expr::D(e) => eval(e, ctx)?.d(),
        Expr::Theta(id) => match resolve(id, ctx)? {
            Var::U { field, idx } => JetForm::theta(ctx, field as usize, idx),
            _ => return Err(DslError::Evaluation { pos: id.pos, message: format!("th() needs a field variable, got `{}`", id.name) }),
        },
        Expr::Total(e, i, pos) => {
            if *i == 0 || *i > ctx.n() {
                return Err(DslError::Evaluation { pos: pos.0, message: format!("direction {i} is outside 1..={}", ctx.n()) });
            }
            eval(e, ctx)?.total_derivative(i - 1)
        }
    })
}
