use crate::error::{Error, Result};
use crate::exact_algebra::{Monomial, MultiIndex, MultiPoly, RationalFunction, Scalar, Var, MAX_DIM};
use crate::weil_cohomology::LieAlgebraData;

/// x^J as a monomial.
pub fn x_monomial(idx: &MultiIndex) -> Monomial {
    Monomial::from_pairs((0..MAX_DIM).filter(|&i| idx.count(i) > 0).map(|i| (Var::x(i), idx.count(i))).collect())
}

/// Infinitesimal automorphism X = f^i ∂/∂x^i + g^α B̃_α of a trivial bundle;
/// the gauge part is empty for plain vector fields on the base.
#[derive(Clone, Debug, PartialEq)]
pub struct AutField {
    vector: Vec<RationalFunction>,
    gauge: Vec<RationalFunction>,
}

impl AutField {
    pub fn new(vector: Vec<RationalFunction>, gauge: Vec<RationalFunction>) -> Result<Self> {
        for c in vector.iter().chain(&gauge) {
            if c.vars().iter().any(|v| v.is_jet() || matches!(v, Var::X(i) if *i as usize >= vector.len())) {
                return Err(Error::Precondition(format!("component {c} must depend on x^1..x^{} only", vector.len())));
            }
        }
        Ok(AutField { vector, gauge })
    }

    pub fn base(vector: Vec<RationalFunction>) -> Result<Self> {
        Self::new(vector, Vec::new())
    }

    pub fn from_polys(vector: &[MultiPoly], gauge: &[MultiPoly]) -> Result<Self> {
        Self::new(vector.iter().cloned().map(Into::into).collect(), gauge.iter().cloned().map(Into::into).collect())
    }

    pub fn n(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &[RationalFunction] {
        &self.vector
    }

    pub fn gauge(&self) -> &[RationalFunction] {
        &self.gauge
    }

    /// ∂f/∂x^i.
    pub fn dx(f: &RationalFunction, i: usize) -> RationalFunction {
        f.partial(Var::x(i))
    }

    /// X(f) = f^i ∂_i f for functions of x.
    pub fn directional(&self, f: &RationalFunction) -> RationalFunction {
        let mut out = RationalFunction::zero();
        for (i, c) in self.vector.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &Self::dx(f, i));
            }
        }
        out
    }

    /// Bracket matching the lifts: base part [f₁, f₂], gauge part
    /// f₁(g₂) − f₂(g₁) − c^α_{βγ} g₁^β g₂^γ.
    pub fn bracket(&self, other: &AutField, lie: Option<&LieAlgebraData>) -> Result<AutField> {
        if self.n() != other.n() || self.gauge.len() != other.gauge.len() {
            return Err(Error::Precondition("fields live on different bundles".into()));
        }
        let vector = (0..self.n()).map(|i| &self.directional(&other.vector[i]) - &other.directional(&self.vector[i])).collect();
        let mut gauge: Vec<RationalFunction> =
            (0..self.gauge.len()).map(|a| &self.directional(&other.gauge[a]) - &other.directional(&self.gauge[a])).collect();
        if let Some(g) = lie {
            if g.dim() != gauge.len() {
                return Err(Error::Precondition("gauge algebra dimension mismatch".into()));
            }
            for (a, out) in gauge.iter_mut().enumerate() {
                for b in 0..g.dim() {
                    for c in 0..g.dim() {
                        let k = g.c(a, b, c);
                        if !k.is_zero() {
                            *out = &*out - &(&self.gauge[b] * &other.gauge[c]).scale(&k);
                        }
                    }
                }
            }
        }
        Ok(AutField { vector, gauge })
    }

    pub fn scale(&self, c: &Scalar) -> AutField {
        AutField {
            vector: self.vector.iter().map(|f| f.scale(c)).collect(),
            gauge: self.gauge.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &AutField) -> AutField {
        AutField {
            vector: self.vector.iter().zip(&other.vector).map(|(a, b)| a + b).collect(),
            gauge: self.gauge.iter().zip(&other.gauge).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Truncated Taylor expansion of a generic field with fresh symbols:
/// X^i = Σ_{|J| ≤ t} a^i_J x^J / J!, g^α = Σ b^α_J x^J / J!, so that a^i_J = ∂_J X^i(0).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalParameter {
    n: u8,
    gauge_dim: u8,
    set: u8,
    truncation: u32,
}

impl FormalParameter {
    pub fn new(n: usize, gauge_dim: usize, set: usize, truncation: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Precondition(format!("n = {n} must lie in 1..={MAX_DIM}")));
        }
        Ok(FormalParameter { n: n as u8, gauge_dim: gauge_dim as u8, set: set as u8, truncation })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn gauge_dim(&self) -> usize {
        self.gauge_dim as usize
    }

    pub fn set(&self) -> usize {
        self.set as usize
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn require_truncation(&self, needed: u32) -> Result<()> {
        if self.truncation < needed {
            return Err(Error::Truncation(format!("parameter truncation {} < required {needed}", self.truncation)));
        }
        Ok(())
    }

    /// a^i_J (or b^α_J when `gauge`).
    pub fn coefficient(&self, gauge: bool, comp: usize, idx: MultiIndex) -> Var {
        Var::Param { set: self.set, gauge, comp: comp as u8, idx }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for idx in MultiIndex::all_up_to(self.n(), self.truncation) {
            for i in 0..self.n() {
                out.push(self.coefficient(false, i, idx));
            }
            for a in 0..self.gauge_dim() {
                out.push(self.coefficient(true, a, idx));
            }
        }
        out
    }

    fn series(&self, gauge: bool, comp: usize) -> RationalFunction {
        let mut p = MultiPoly::zero();
        for idx in MultiIndex::all_up_to(self.n(), self.truncation) {
            let m = x_monomial(&idx).mul(&Monomial::var(self.coefficient(gauge, comp, idx)));
            p.add_term(m, Scalar::new(1, idx.factorial() as i64));
        }
        p.into()
    }

    pub fn field(&self) -> AutField {
        AutField {
            vector: (0..self.n()).map(|i| self.series(false, i)).collect(),
            gauge: (0..self.gauge_dim()).map(|a| self.series(true, a)).collect(),
        }
    }

    /// Values of the symbols reproducing a concrete polynomial field of degree ≤ t.
    pub fn values_for(&self, concrete: &AutField) -> Result<impl Fn(Var) -> Option<Scalar>> {
        if concrete.n() != self.n() || concrete.gauge().len() != self.gauge_dim() {
            return Err(Error::Precondition("field shape does not match the parameter".into()));
        }
        let mut table = rustc_hash::FxHashMap::default();
        for (gauge, comps) in [(false, concrete.vector()), (true, concrete.gauge())] {
            for (comp, f) in comps.iter().enumerate() {
                let p = f
                    .as_polynomial()
                    .ok_or_else(|| Error::Precondition(format!("component {f} is not a polynomial")))?;
                for (m, c) in p.terms() {
                    let mut counts = [0u8; MAX_DIM];
                    for (v, e) in m.factors() {
                        match v {
                            Var::X(i) => counts[*i as usize] = *e as u8,
                            other => {
                                return Err(Error::Precondition(format!("component depends on {other}")));
                            }
                        }
                    }
                    let idx = MultiIndex::from_counts(counts);
                    if idx.order() > self.truncation {
                        return Err(Error::Truncation(format!("field has degree {} > truncation {}", idx.order(), self.truncation)));
                    }
                    table.insert(self.coefficient(gauge, comp, idx), c * &Scalar::from_int(idx.factorial() as i64));
                }
            }
        }
        let set = self.set;
        Ok(move |v: Var| match v {
            Var::Param { set: s, .. } if s == set => Some(table.get(&v).cloned().unwrap_or_else(Scalar::zero)),
            _ => None,
        })
    }
}

/// Polynomial degree of a coefficient in the symbols of the given parameter sets.
pub fn parameter_degree(f: &RationalFunction) -> u32 {
    f.numerator()
        .terms()
        .map(|(m, _)| m.factors().iter().filter(|(v, _)| matches!(v, Var::Param { .. })).map(|(_, e)| *e).sum::<u32>())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_reproduces_field() {
        let p = FormalParameter::new(2, 0, 0, 2).unwrap();
        let x1 = MultiPoly::var(Var::x(0));
        let x2 = MultiPoly::var(Var::x(1));
        let f = AutField::from_polys(&[&x1 * &x2, &(&x1 * &x1) + &MultiPoly::int(3)], &[]).unwrap();
        let val = p.values_for(&f).unwrap();
        let generic = p.field();
        for i in 0..2 {
            assert_eq!(generic.vector()[i].evaluate(&val).unwrap(), f.vector()[i]);
        }
    }

    #[test]
    fn truncation_is_enforced() {
        let p = FormalParameter::new(1, 0, 0, 1).unwrap();
        let x = MultiPoly::var(Var::x(0));
        let f = AutField::from_polys(&[&x * &x], &[]).unwrap();
        assert!(matches!(p.values_for(&f), Err(Error::Truncation(_))));
    }
}
