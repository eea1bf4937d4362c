//! Text format for forms on jet spaces.
//!
//! ```text
//! expr  = term { ("+" | "-") term } ;
//! term  = unary { ("*" | "/" | "^") unary } ;
//! unary = "-" unary | atom [ "**" integer ] ;
//! atom  = integer | name | "(" expr ")"
//!       | "d(" expr ")" | "th(" name ")" | "D(" expr "," integer ")" ;
//! ```
//!
//! `^` is the wedge product and `**` a power of a function. Names are `x1`,
//! `u1`, `u1_12`, `y12`, `y12_1`, `A1_2`, `A1_2_11`, plus `s1`, `a1_2_11`,
//! `b1_1` and `t`. `#` comments run to the end of the line.

mod ast;
mod eval;
mod lexer;

pub use ast::{parse, BinOp, Expr, Ident, Pos};
pub use eval::{evaluate, infer_context, ContextSpec, Naming};

use jetvar::jet_calculus::{JetContext, JetForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown symbol `{name}` at offset {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("cannot evaluate at offset {pos}: {message}")]
    Evaluation { pos: usize, message: String },
}

impl DslError {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        DslError::Syntax { pos, message: message.into() }
    }

    pub fn pos(&self) -> usize {
        match self {
            DslError::Syntax { pos, .. } | DslError::UnknownSymbol { pos, .. } | DslError::Evaluation { pos, .. } => *pos,
        }
    }

    /// `line:col: message` with the offending line and a caret under the column.
    pub fn render(&self, source: &str) -> String {
        let pos = self.pos().min(source.len());
        let line_start = source[..pos].rfind('\n').map_or(0, |i| i + 1);
        let line_end = source[pos..].find('\n').map_or(source.len(), |i| pos + i);
        let line_no = source[..pos].matches('\n').count() + 1;
        let col = source[line_start..pos].chars().count() + 1;
        let message = match self {
            DslError::Syntax { message, .. } => format!("syntax error: {message}"),
            DslError::UnknownSymbol { name, .. } => format!("unknown symbol `{name}`"),
            DslError::Evaluation { message, .. } => message.clone(),
        };
        format!("{line_no}:{col}: {message}\n  {}\n  {}^", &source[line_start..line_end], " ".repeat(col - 1))
    }
}

/// Parses and evaluates in the inferred (or given) context.
pub fn parse_form(text: &str, spec: ContextSpec) -> Result<JetForm, DslError> {
    let expr = parse(text)?;
    let ctx = infer_context(&expr, spec)?;
    evaluate(&expr, ctx)
}

/// Parses and evaluates in a fixed context.
pub fn parse_form_in(text: &str, ctx: JetContext) -> Result<JetForm, DslError> {
    evaluate(&parse(text)?, ctx)
}

/// Canonical text of a form; `parse_form_in(&print(f), f.context()) == f`.
/// Coefficients are reduced first; denominators print as their stored factors.
pub fn print(form: &JetForm) -> String {
    eval::reduced(form).to_string()
}

/// Context settings that reproduce `ctx` exactly.
pub fn spec_of(ctx: JetContext) -> ContextSpec {
    use jetvar::jet_calculus::FieldNaming;
    let naming = match ctx.naming() {
        FieldNaming::Generic => Naming::Generic,
        FieldNaming::Metric => Naming::Metric,
        FieldNaming::Connection { algebra_dim } => Naming::Connection(algebra_dim as usize),
    };
    ContextSpec { n: Some(ctx.n()), m: Some(ctx.m()), naming: Some(naming) }
}
