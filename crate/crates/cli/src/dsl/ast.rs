use std::fmt;

use jetvar::Scalar;

use super::lexer::{lex, Spanned, Tok};
use super::DslError;

/// Identifier with its source offset; equality ignores the offset.
#[derive(Clone, Debug, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: usize,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// Source offset; never part of structural equality.
#[derive(Copy, Clone, Debug, Default)]
pub struct Pos(pub usize);

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Wedge,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Wedge => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div | BinOp::Wedge => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative integer literal.
    Int(Scalar),
    Var(Ident),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>, Pos),
    /// Scalar power `e ** k`.
    Pow(Box<Expr>, u32, Pos),
    /// Exterior derivative `d(e)`.
    D(Box<Expr>),
    /// Contact form `th(u1_2)`.
    Theta(Ident),
    /// Total derivative `D(e, i)`.
    Total(Box<Expr>, usize, Pos),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Every identifier with its offset, in source order.
    pub fn identifiers(&self) -> Vec<&Ident> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Ident>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(id) | Expr::Theta(id) => out.push(id),
            Expr::Neg(e) | Expr::Pow(e, _, _) | Expr::D(e) | Expr::Total(e, _, _) => e.collect(out),
            Expr::Binary(_, a, b, _) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Largest direction used by `D(e, i)`.
    pub fn max_total_direction(&self) -> usize {
        match self {
            Expr::Int(_) | Expr::Var(_) | Expr::Theta(_) => 0,
            Expr::Neg(e) | Expr::Pow(e, _, _) | Expr::D(e) => e.max_total_direction(),
            Expr::Total(e, i, _) => (*i).max(e.max_total_direction()),
            Expr::Binary(_, a, b, _) => a.max_total_direction().max(b.max_total_direction()),
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(c) => write!(f, "{c}"),
            Expr::Var(id) => f.write_str(&id.name),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, e.precedence() < 3)
            }
            Expr::Binary(op, a, b, _) => {
                let p = op.precedence();
                wrap(f, a, a.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                wrap(f, b, b.precedence() <= p)
            }
            Expr::Pow(e, k, _) => {
                wrap(f, e, e.precedence() < 5)?;
                write!(f, "**{k}")
            }
            Expr::D(e) => write!(f, "d({e})"),
            Expr::Theta(id) => write!(f, "th({})", id.name),
            Expr::Total(e, i, _) => write!(f, "D({e}, {i})"),
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |s| s.pos)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), DslError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.at += 1;
                Ok(())
            }
            Some(t) => Err(DslError::syntax(self.pos(), format!("expected {}, found {}", want.describe(), t.describe()))),
            None => Err(DslError::syntax(self.end, format!("expected {}, found end of input", want.describe()))),
        }
    }

    fn integer(&mut self, what: &str) -> Result<(u64, usize), DslError> {
        let pos = self.pos();
        match self.bump() {
            Some(Spanned { tok: Tok::Int(s), .. }) => {
                s.parse::<u64>().map(|v| (v, pos)).map_err(|_| DslError::syntax(pos, format!("{what} `{s}` is too large")))
            }
            Some(t) => Err(DslError::syntax(pos, format!("expected {what}, found {}", t.tok.describe()))),
            None => Err(DslError::syntax(pos, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let pos = self.pos();
            self.at += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), Pos(pos));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                Some(Tok::Caret) => BinOp::Wedge,
                _ => return Ok(lhs),
            };
            let pos = self.pos();
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), Pos(pos));
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::StarStar) {
            let op = self.pos();
            self.at += 1;
            let (k, pos) = self.integer("an exponent")?;
            let k = u32::try_from(k).map_err(|_| DslError::syntax(pos, "exponent is too large"))?;
            return Ok(Expr::Pow(Box::new(base), k, Pos(op)));
        }
        Ok(base)
    }

    fn ident(&mut self) -> Result<Ident, DslError> {
        let pos = self.pos();
        match self.bump() {
            Some(Spanned { tok: Tok::Ident(name), pos }) => Ok(Ident { name, pos }),
            Some(t) => Err(DslError::syntax(pos, format!("expected a variable, found {}", t.tok.describe()))),
            None => Err(DslError::syntax(pos, "expected a variable, found end of input")),
        }
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let pos = self.pos();
        let Some(t) = self.bump() else {
            return Err(DslError::syntax(pos, "unexpected end of input"));
        };
        match t.tok {
            Tok::Int(s) => Ok(Expr::Int(s.parse().map_err(|_| DslError::syntax(pos, format!("bad integer `{s}`")))?)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if self.peek() == Some(&Tok::LParen) && matches!(name.as_str(), "d" | "th" | "D") => {
                self.at += 1;
                let out = match name.as_str() {
                    "d" => Expr::D(Box::new(self.expr()?)),
                    "th" => Expr::Theta(self.ident()?),
                    _ => {
                        let e = self.expr()?;
                        self.expect(Tok::Comma)?;
                        let (i, ipos) = self.integer("a direction")?;
                        Expr::Total(Box::new(e), i as usize, Pos(ipos))
                    }
                };
                self.expect(Tok::RParen)?;
                Ok(out)
            }
            Tok::Ident(name) => Ok(Expr::Var(Ident { name, pos })),
            other => Err(DslError::syntax(pos, format!("unexpected {}", other.describe()))),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, DslError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(DslError::syntax(0, "empty expression"));
    }
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(DslError::syntax(p.pos(), format!("unexpected {} after the expression", t.describe())));
    }
    Ok(e)
}
