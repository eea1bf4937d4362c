use crate::error::{Error, Result};
use crate::exact_algebra::{MultiIndex, MultiPoly, RationalFunction, Var, MAX_DIM};

/// How fiber coordinates are named when printing and parsing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldNaming {
    /// `u1`, `u2`, ... with jets `u1_12`.
    Generic,
    /// Symmetric metric components `y11`, `y12`, `y22`, ... with jets `y12_1`.
    Metric,
    /// Connection components A^α_i as `A1_2` (α = 1, i = 2), jets `A1_2_12`.
    Connection { algebra_dim: u8 },
}

/// Local coordinates x^1..x^n on the base and m fiber coordinates with all their jets.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetContext {
    n: u8,
    m: u8,
    naming: FieldNaming,
}

impl JetContext {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_naming(n, m, FieldNaming::Generic)
    }

    pub fn with_naming(n: usize, m: usize, naming: FieldNaming) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Precondition(format!("base dimension {n} must lie in 1..={MAX_DIM}")));
        }
        if m == 0 || m > u8::MAX as usize {
            return Err(Error::Precondition(format!("fiber dimension {m} must be positive")));
        }
        let expected = match naming {
            FieldNaming::Generic => m,
            FieldNaming::Metric => n * (n + 1) / 2,
            FieldNaming::Connection { algebra_dim } => algebra_dim as usize * n,
        };
        if expected != m {
            return Err(Error::Precondition(format!("naming {naming:?} needs {expected} fields, got {m}")));
        }
        Ok(JetContext { n: n as u8, m: m as u8, naming })
    }

    /// Bundle of Riemannian metrics: fibers y_ij with i ≤ j.
    pub fn metrics(n: usize) -> Result<Self> {
        Self::with_naming(n, n * (n + 1) / 2, FieldNaming::Metric)
    }

    /// Bundle of connections on a principal bundle with a `dim`-dimensional group.
    pub fn connections(n: usize, dim: usize) -> Result<Self> {
        Self::with_naming(n, n * dim, FieldNaming::Connection { algebra_dim: dim as u8 })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn naming(&self) -> FieldNaming {
        self.naming
    }

    /// Field index of the metric component y_ij (either order).
    pub fn metric_field(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let n = self.n();
        a * n - a * (a + 1) / 2 + b
    }

    /// (i, j) with i ≤ j of a metric field index.
    pub fn metric_pair(&self, field: usize) -> (usize, usize) {
        let n = self.n();
        let mut f = field;
        for a in 0..n {
            let row = n - a;
            if f < row {
                return (a, a + f);
            }
            f -= row;
        }
        panic!("metric field {field} out of range")
    }

    /// Field index of A^α_i.
    pub fn connection_field(&self, alpha: usize, i: usize) -> usize {
        alpha * self.n() + i
    }

    pub fn u(&self, field: usize, idx: MultiIndex) -> Var {
        debug_assert!(field < self.m());
        Var::u(field, idx)
    }

    pub fn x(&self, i: usize) -> Var {
        debug_assert!(i < self.n());
        Var::x(i)
    }

    pub fn field_label(&self, field: usize) -> String {
        match self.naming {
            FieldNaming::Generic => format!("u{}", field + 1),
            FieldNaming::Metric => {
                let (i, j) = self.metric_pair(field);
                format!("y{}{}", i + 1, j + 1)
            }
            FieldNaming::Connection { .. } => {
                let n = self.n();
                format!("A{}_{}", field / n + 1, field % n + 1)
            }
        }
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            Var::U { field, idx } => {
                let base = self.field_label(field as usize);
                if idx.is_empty() {
                    base
                } else {
                    format!("{base}_{}", idx.digits())
                }
            }
            other => other.to_string(),
        }
    }

    /// Inverse of [`var_name`](Self::var_name) for fiber coordinates.
    pub fn parse_field_var(&self, name: &str) -> Option<Var> {
        let (head, rest) = match self.naming {
            FieldNaming::Generic => {
                let body = name.strip_prefix('u')?;
                let (num, rest) = split_number(body)?;
                (num.checked_sub(1)?, rest)
            }
            FieldNaming::Metric => {
                let body = name.strip_prefix('y')?;
                let bytes = body.as_bytes();
                if bytes.len() < 2 || !bytes[0].is_ascii_digit() || !bytes[1].is_ascii_digit() {
                    return None;
                }
                let i = (bytes[0] - b'0') as usize;
                let j = (bytes[1] - b'0') as usize;
                if i == 0 || j == 0 || i > self.n() || j > self.n() {
                    return None;
                }
                (self.metric_field(i - 1, j - 1), &body[2..])
            }
            FieldNaming::Connection { algebra_dim } => {
                let body = name.strip_prefix('A')?;
                let (alpha, rest) = split_number(body)?;
                let rest = rest.strip_prefix('_')?;
                let (i, rest) = split_number(rest)?;
                if alpha == 0 || alpha > algebra_dim as usize || i == 0 || i > self.n() {
                    return None;
                }
                (self.connection_field(alpha - 1, i - 1), rest)
            }
        };
        if head >= self.m() {
            return None;
        }
        let idx = if rest.is_empty() {
            MultiIndex::EMPTY
        } else {
            let digits = rest.strip_prefix('_')?;
            let idx = MultiIndex::parse_digits(digits)?;
            if idx.span() > self.n() {
                return None;
            }
            idx
        };
        Some(Var::u(head, idx))
    }

    /// Total derivative D_i = ∂/∂x^i + Σ u^α_{J+i} ∂/∂u^α_J.
    pub fn total_derivative(&self, f: &RationalFunction, i: usize) -> RationalFunction {
        f.derive_along(&|v| match v {
            Var::X(k) if k as usize == i => Some(MultiPoly::one()),
            Var::U { field, idx } => Some(MultiPoly::var(Var::U { field, idx: idx.plus(i) })),
            _ => None,
        })
    }

    /// D_J f, applying D_i in sorted direction order.
    pub fn total_derivative_multi(&self, f: &RationalFunction, idx: &MultiIndex) -> RationalFunction {
        idx.directions().into_iter().fold(f.clone(), |acc, i| self.total_derivative(&acc, i))
    }

    /// Highest jet order among the variables of `f`.
    pub fn jet_order(&self, f: &RationalFunction) -> u32 {
        f.vars()
            .into_iter()
            .filter_map(|v| match v {
                Var::U { idx, .. } => Some(idx.order()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

fn split_number(s: &str) -> Option<(usize, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    Some((s[..end].parse().ok()?, &s[end..]))
}
