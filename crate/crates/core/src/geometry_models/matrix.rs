use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::exact_algebra::{RationalFunction, Scalar, Var};
use crate::jet_calculus::{JetContext, JetForm};

/// Determinant by Laplace expansion along the first row. Entries must commute.
pub fn determinant<T>(m: &[Vec<T>], zero: &T, one: &T) -> T
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    match m.len() {
        0 => one.clone(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        size => {
            let mut acc = zero.clone();
            for j in 0..size {
                let minor = minor(m, 0, j);
                let term = &m[0][j] * &determinant(&minor, zero, one);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Pfaffian of an antisymmetric matrix (only the upper triangle is read).
pub fn pfaffian<T>(m: &[Vec<T>], zero: &T, one: &T) -> T
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let size = m.len();
    if size == 0 {
        return one.clone();
    }
    if size % 2 == 1 {
        return zero.clone();
    }
    let mut acc = zero.clone();
    for j in 1..size {
        let keep: Vec<usize> = (1..size).filter(|&k| k != j).collect();
        let sub: Vec<Vec<T>> = keep.iter().map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect()).collect();
        let term = &m[0][j] * &pfaffian(&sub, zero, one);
        acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Cofactor matrix entry removal.
pub fn minor<T: Clone>(m: &[Vec<T>], row: usize, col: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, line)| line.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Square matrix of differential forms on a jet space.
#[derive(Clone, PartialEq)]
pub struct MatrixOfForms {
    ctx: JetContext,
    entries: Vec<Vec<JetForm>>,
}

impl MatrixOfForms {
    pub fn new(ctx: JetContext, entries: Vec<Vec<JetForm>>) -> Result<Self> {
        let size = entries.len();
        if entries.iter().any(|row| row.len() != size) {
            return Err(Error::Precondition("matrix of forms must be square".into()));
        }
        Ok(MatrixOfForms { ctx, entries })
    }

    pub fn from_fn(ctx: JetContext, size: usize, f: impl Fn(usize, usize) -> JetForm) -> Self {
        MatrixOfForms { ctx, entries: (0..size).map(|i| (0..size).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn zero(ctx: JetContext, size: usize) -> Self {
        Self::from_fn(ctx, size, |_, _| JetForm::zero(ctx))
    }

    pub fn identity(ctx: JetContext, size: usize) -> Self {
        Self::from_fn(ctx, size, |i, j| {
            if i == j {
                JetForm::constant(ctx, Scalar::one())
            } else {
                JetForm::zero(ctx)
            }
        })
    }

    pub fn context(&self) -> JetContext {
        self.ctx
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &JetForm {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<JetForm>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(JetForm::is_zero)
    }

    /// Form degrees occurring in the entries.
    pub fn degrees(&self) -> std::collections::BTreeSet<u32> {
        self.entries.iter().flatten().flat_map(|e| e.degrees()).collect()
    }

    pub fn map(&self, f: impl Fn(&JetForm) -> JetForm) -> Self {
        MatrixOfForms { ctx: self.ctx, entries: self.entries.iter().map(|row| row.iter().map(&f).collect()).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&JetForm) -> Result<JetForm>) -> Result<Self> {
        let entries =
            self.entries.iter().map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(MatrixOfForms { ctx: self.ctx, entries })
    }

    fn check_size(&self, other: &MatrixOfForms) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::Precondition(format!("matrix sizes differ: {} vs {}", self.size(), other.size())));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixOfForms) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self::from_fn(self.ctx, self.size(), |i, j| &self.entries[i][j] + &other.entries[i][j]))
    }

    pub fn sub(&self, other: &MatrixOfForms) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self::from_fn(self.ctx, self.size(), |i, j| &self.entries[i][j] - &other.entries[i][j]))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn mul_function(&self, f: &RationalFunction) -> Self {
        self.map(|e| e.mul_function(f))
    }

    /// (A ∧ B)^i_j = Σ_a A^i_a ∧ B^a_j.
    pub fn wedge(&self, other: &MatrixOfForms) -> Result<Self> {
        self.check_size(other)?;
        let size = self.size();
        Ok(Self::from_fn(self.ctx, size, |i, j| {
            let mut acc = JetForm::zero(self.ctx);
            for a in 0..size {
                if !self.entries[i][a].is_zero() && !other.entries[a][j].is_zero() {
                    acc.add_assign(&self.entries[i][a].wedge(&other.entries[a][j]));
                }
            }
            acc
        }))
    }

    /// A ∧ B − (−1)^{|A||B|} B ∧ A for degree-homogeneous A, B.
    pub fn graded_commutator(&self, other: &MatrixOfForms) -> Result<Self> {
        let sign = match (self.homogeneous_degree(), other.homogeneous_degree()) {
            (Some(a), Some(b)) => (a * b) % 2 == 1,
            _ => return Err(Error::DegreeMismatch("graded commutator needs homogeneous entries".into())),
        };
        let ab = self.wedge(other)?;
        let ba = other.wedge(self)?;
        if sign {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degrees();
        match d.len() {
            0 => Some(0),
            1 => d.into_iter().next(),
            _ => None,
        }
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut out = Self::identity(self.ctx, self.size());
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    pub fn trace(&self) -> JetForm {
        let mut acc = JetForm::zero(self.ctx);
        for i in 0..self.size() {
            acc.add_assign(&self.entries[i][i]);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.size(), |i, j| self.entries[j][i].clone())
    }

    /// Entrywise exterior derivative.
    pub fn d(&self) -> Self {
        self.map(JetForm::d)
    }

    pub fn evaluate(&self, val: &dyn Fn(Var) -> Option<Scalar>) -> Result<Self> {
        self.try_map(|e| e.evaluate(val))
    }

    /// Symmetric part ½(M + Mᵀ).
    pub fn symmetric_part(&self) -> Self {
        let half = Scalar::new(1, 2);
        Self::from_fn(self.ctx, self.size(), |i, j| (&self.entries[i][j] + &self.entries[j][i]).scale(&half))
    }

    /// Skew part ½(M − Mᵀ).
    pub fn skew_part(&self) -> Self {
        let half = Scalar::new(1, 2);
        Self::from_fn(self.ctx, self.size(), |i, j| (&self.entries[i][j] - &self.entries[j][i]).scale(&half))
    }

    /// Determinant; entries must be even forms so that they commute.
    pub fn determinant(&self) -> Result<JetForm> {
        self.require_even("determinant")?;
        let zero = JetForm::zero(self.ctx);
        let one = JetForm::constant(self.ctx, Scalar::one());
        Ok(determinant(&self.entries, &zero, &one))
    }

    /// Pfaffian of an antisymmetric matrix of even forms.
    pub fn pfaffian(&self) -> Result<JetForm> {
        self.require_even("Pfaffian")?;
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.entries[i][j] != -&self.entries[j][i] {
                    return Err(Error::Precondition(format!("Pfaffian needs an antisymmetric matrix; entry ({}, {})", i + 1, j + 1)));
                }
            }
        }
        let zero = JetForm::zero(self.ctx);
        let one = JetForm::constant(self.ctx, Scalar::one());
        Ok(pfaffian(&self.entries, &zero, &one))
    }

    fn require_even(&self, what: &str) -> Result<()> {
        if self.degrees().iter().any(|d| d % 2 == 1) {
            return Err(Error::DegreeMismatch(format!("{what} needs even-degree entries")));
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixOfForms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                writeln!(f, "[{}][{}] = {e}", i + 1, j + 1)?;
            }
        }
        Ok(())
    }
}

/// Invariant polynomial on matrices written as Σ c · Π_r tr(M^{k_r}).
#[derive(Clone, Debug, PartialEq)]
pub struct TracePolynomial {
    terms: Vec<(Scalar, Vec<u32>)>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        TracePolynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        TracePolynomial { terms: vec![(Scalar::one(), Vec::new())] }
    }

    /// tr(M^k).
    pub fn power_trace(k: u32) -> Self {
        TracePolynomial { terms: vec![(Scalar::one(), vec![k])] }
    }

    pub fn terms(&self) -> &[(Scalar, Vec<u32>)] {
        &self.terms
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TracePolynomial { terms: self.terms.iter().map(|(a, k)| (a * c, k.clone())).collect() }.normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TracePolynomial { terms }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (a, ka) in &self.terms {
            for (b, kb) in &other.terms {
                let mut k = ka.clone();
                k.extend(kb.iter().copied());
                terms.push((a * b, k));
            }
        }
        TracePolynomial { terms }.normalized()
    }

    fn normalized(self) -> Self {
        let mut map: std::collections::BTreeMap<Vec<u32>, Scalar> = std::collections::BTreeMap::new();
        for (c, mut k) in self.terms {
            k.retain(|&e| e > 0);
            k.sort_unstable();
            *map.entry(k).or_insert_with(Scalar::zero) += c;
        }
        TracePolynomial { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c, k)).collect() }
    }

    /// Polynomial degree, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(|(_, k)| k.iter().sum::<u32>());
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    /// e_k of the eigenvalues (coefficient of t^k in det(1 + tM)) via Newton's identities.
    pub fn elementary(k: u32) -> Self {
        let mut e = vec![Self::one()];
        for m in 1..=k {
            let mut acc = Self::zero();
            for i in 1..=m {
                let sign = if i % 2 == 1 { Scalar::one() } else { Scalar::from_int(-1) };
                acc = acc.add(&e[(m - i) as usize].mul(&Self::power_trace(i)).scale(&sign));
            }
            e.push(acc.scale(&Scalar::new(1, m as i64)));
        }
        e.pop().expect("nonempty")
    }

    /// p_k = e_{2k}: for a skew matrix with eigenvalues ±i x_j this is e_k(x_j²).
    pub fn pontryagin(k: u32) -> Self {
        Self::elementary(2 * k)
    }

    /// Value on a matrix of even forms.
    pub fn evaluate(&self, m: &MatrixOfForms) -> Result<JetForm> {
        let ctx = m.context();
        let max = self.terms.iter().flat_map(|(_, k)| k.iter().copied()).max().unwrap_or(0);
        let traces = power_traces(m, max)?;
        let mut out = JetForm::zero(ctx);
        for (c, ks) in &self.terms {
            let mut prod = JetForm::constant(ctx, c.clone());
            for &k in ks {
                prod = prod.wedge(&traces[k as usize]);
            }
            out.add_assign(&prod);
        }
        Ok(out)
    }

    /// d/ds p(F + sη) at s = 0, i.e. deg(p) · p(η, F, …, F).
    pub fn polarized(&self, eta: &MatrixOfForms, f: &MatrixOfForms) -> Result<JetForm> {
        let ctx = f.context();
        let max = self.terms.iter().flat_map(|(_, k)| k.iter().copied()).max().unwrap_or(0);
        let traces = power_traces(f, max)?;
        let mut mixed = vec![JetForm::zero(ctx)];
        let mut fp = MatrixOfForms::identity(ctx, f.size());
        for _ in 1..=max {
            mixed.push(eta.wedge(&fp)?.trace());
            fp = fp.wedge(f)?;
        }
        let mut out = JetForm::zero(ctx);
        for (c, ks) in &self.terms {
            for (r, &kr) in ks.iter().enumerate() {
                let mut prod = mixed[kr as usize].scale(&(c * &Scalar::from_int(kr as i64)));
                for (s, &ks_) in ks.iter().enumerate() {
                    if s != r {
                        prod = prod.wedge(&traces[ks_ as usize]);
                    }
                }
                out.add_assign(&prod);
            }
        }
        Ok(out)
    }
}

fn power_traces(m: &MatrixOfForms, max: u32) -> Result<Vec<JetForm>> {
    let ctx = m.context();
    let mut out = vec![JetForm::constant(ctx, Scalar::from_int(m.size() as i64))];
    let mut p = MatrixOfForms::identity(ctx, m.size());
    for _ in 1..=max {
        p = p.wedge(m)?;
        out.push(p.trace());
    }
    Ok(out)
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (c, ks)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for k in ks {
                write!(f, " tr(M^{k})")?;
            }
        }
        Ok(())
    }
}
