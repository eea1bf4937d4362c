use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{Monomial, MultiPoly, Scalar, Var};

/// Ring of invariant polynomials, as a free graded-commutative presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    /// p_1..p_⌊n/2⌋ (degree 4i), plus e (degree n) with e² = p_{n/2} for n even.
    SpecialOrthogonal(u32),
    /// c_1..c_N (degree 2i).
    Unitary(u32),
    /// Gravitational factor ⊗ gauge factor.
    Tensor(Box<Presentation>, Box<Presentation>),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    Pontryagin(u32),
    Euler,
    Chern(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingGenerator {
    pub kind: GeneratorKind,
    /// 0 for the first tensor factor (or a plain presentation), 1 for the second.
    pub side: u8,
    /// Form degree.
    pub degree: u32,
    pub name: String,
}

impl Presentation {
    pub fn so(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("SO(0) has no invariant ring".into()));
        }
        Ok(Presentation::SpecialOrthogonal(n))
    }

    pub fn unitary(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("U(0) has no invariant ring".into()));
        }
        Ok(Presentation::Unitary(n))
    }

    pub fn tensor(gravity: Presentation, gauge: Presentation) -> Result<Self> {
        if gravity.is_tensor() || gauge.is_tensor() {
            return Err(Error::Unsupported("tensor products of more than two factors".into()));
        }
        Ok(Presentation::Tensor(Box::new(gravity), Box::new(gauge)))
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, Presentation::Tensor(..))
    }

    /// The factor on a side; a plain presentation is its own side 0.
    pub fn factor(&self, side: u8) -> Option<&Presentation> {
        match (self, side) {
            (Presentation::Tensor(a, _), 0) => Some(a),
            (Presentation::Tensor(_, b), 1) => Some(b),
            (Presentation::Tensor(..), _) => None,
            (p, 0) => Some(p),
            _ => None,
        }
    }

    /// Number of formal roots: ⌊n/2⌋ for SO(n), N for U(N).
    pub fn roots(&self) -> usize {
        match self {
            Presentation::SpecialOrthogonal(n) => (*n / 2) as usize,
            Presentation::Unitary(n) => *n as usize,
            Presentation::Tensor(..) => 0,
        }
    }

    fn factor_generators(&self, side: u8, suffix: &str) -> Vec<RingGenerator> {
        let gen = |kind, degree, name: String| RingGenerator { kind, side, degree, name: format!("{name}{suffix}") };
        match self {
            Presentation::SpecialOrthogonal(n) => {
                let mut out: Vec<RingGenerator> = (1..=n / 2).map(|i| gen(GeneratorKind::Pontryagin(i), 4 * i, format!("p{i}"))).collect();
                if n % 2 == 0 {
                    out.push(gen(GeneratorKind::Euler, *n, "e".into()));
                }
                out
            }
            Presentation::Unitary(n) => (1..=*n).map(|i| gen(GeneratorKind::Chern(i), 2 * i, format!("c{i}"))).collect(),
            Presentation::Tensor(..) => Vec::new(),
        }
    }

    pub fn generators(&self) -> Vec<RingGenerator> {
        match self {
            Presentation::Tensor(a, b) => {
                let mut out = a.factor_generators(0, "");
                let clash = matches!((a.as_ref(), b.as_ref()), (Presentation::SpecialOrthogonal(_), Presentation::SpecialOrthogonal(_))
                    | (Presentation::Unitary(_), Presentation::Unitary(_)));
                out.extend(b.factor_generators(1, if clash { "'" } else { "" }));
                out
            }
            p => p.factor_generators(0, ""),
        }
    }

    pub fn index_of(&self, kind: GeneratorKind, side: u8) -> Option<usize> {
        self.generators().iter().position(|g| g.kind == kind && g.side == side)
    }

    /// (index of e, index of p_{n/2}) for each even SO factor.
    fn euler_relations(&self) -> Vec<(usize, usize)> {
        let gens = self.generators();
        let mut out = Vec::new();
        for side in 0..2u8 {
            if let Some(Presentation::SpecialOrthogonal(n)) = self.factor(side) {
                if n % 2 == 0 {
                    let e = gens.iter().position(|g| g.kind == GeneratorKind::Euler && g.side == side);
                    let p = gens.iter().position(|g| g.kind == GeneratorKind::Pontryagin(n / 2) && g.side == side);
                    if let (Some(e), Some(p)) = (e, p) {
                        out.push((e, p));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::SpecialOrthogonal(n) => write!(f, "SO({n})"),
            Presentation::Unitary(n) => write!(f, "U({n})"),
            Presentation::Tensor(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

fn gen_var(i: usize) -> Var {
    Var::Sym(i as u16)
}

fn gen_index(v: &Var) -> usize {
    match v {
        Var::Sym(k) => *k as usize,
        other => panic!("invariant polynomial contains non-generator {other}"),
    }
}

/// Element of an invariant-polynomial ring, stored as a polynomial in the
/// presentation's generators with the Euler relation applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPolynomial {
    presentation: Presentation,
    poly: MultiPoly,
    /// Power of 2π carried along for normalizations; never used in verdicts.
    two_pi_exponent: i32,
}

impl InvariantPolynomial {
    pub fn zero(presentation: &Presentation) -> Self {
        InvariantPolynomial { presentation: presentation.clone(), poly: MultiPoly::zero(), two_pi_exponent: 0 }
    }

    pub fn constant(presentation: &Presentation, c: Scalar) -> Self {
        InvariantPolynomial { presentation: presentation.clone(), poly: MultiPoly::constant(c), two_pi_exponent: 0 }
    }

    pub fn generator(presentation: &Presentation, kind: GeneratorKind, side: u8) -> Result<Self> {
        let i = presentation
            .index_of(kind, side)
            .ok_or_else(|| Error::UnknownGenerator(format!("{kind:?} on side {side} of {presentation}")))?;
        Ok(InvariantPolynomial { presentation: presentation.clone(), poly: MultiPoly::var(gen_var(i)), two_pi_exponent: 0 })
    }

    /// Builds from (coefficient, [(generator name, exponent)]) pairs.
    pub fn from_named_terms(presentation: &Presentation, terms: &[(Scalar, Vec<(&str, u32)>)]) -> Result<Self> {
        let gens = presentation.generators();
        let mut poly = MultiPoly::zero();
        for (c, factors) in terms {
            let mut pairs = Vec::new();
            for (name, e) in factors {
                let i = gens.iter().position(|g| g.name == *name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                pairs.push((gen_var(i), *e));
            }
            poly.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        Ok(Self::from_poly(presentation, poly))
    }

    pub(crate) fn from_poly(presentation: &Presentation, poly: MultiPoly) -> Self {
        let mut out = InvariantPolynomial { presentation: presentation.clone(), poly, two_pi_exponent: 0 };
        out.apply_relations();
        out
    }

    pub fn with_two_pi_exponent(mut self, e: i32) -> Self {
        self.two_pi_exponent = e;
        self
    }

    pub fn two_pi_exponent(&self) -> i32 {
        self.two_pi_exponent
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub(crate) fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Rewrites e^{2a+b} ↦ p_{n/2}^a e^b.
    fn apply_relations(&mut self) {
        for (e, p) in self.presentation.euler_relations() {
            let ev = gen_var(e);
            if self.poly.degree_in(ev) < 2 {
                continue;
            }
            let mut out = MultiPoly::zero();
            for (m, c) in self.poly.terms() {
                let k = m.exponent(ev);
                let mut pairs: Vec<(Var, u32)> = m.factors().iter().filter(|(v, _)| *v != ev).cloned().collect();
                if k % 2 == 1 {
                    pairs.push((ev, 1));
                }
                if k >= 2 {
                    let pv = gen_var(p);
                    match pairs.iter_mut().find(|(v, _)| *v == pv) {
                        Some(slot) => slot.1 += k / 2,
                        None => pairs.push((pv, k / 2)),
                    }
                }
                out.add_term(Monomial::from_pairs(pairs), c.clone());
            }
            self.poly = out;
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.presentation != other.presentation {
            return Err(Error::Precondition(format!("presentations {} and {} differ", self.presentation, other.presentation)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(InvariantPolynomial { presentation: self.presentation.clone(), poly: &self.poly + &other.poly, two_pi_exponent: self.two_pi_exponent })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(InvariantPolynomial { presentation: self.presentation.clone(), poly: &self.poly - &other.poly, two_pi_exponent: self.two_pi_exponent })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        InvariantPolynomial { presentation: self.presentation.clone(), poly: self.poly.scale(c), two_pi_exponent: self.two_pi_exponent }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = InvariantPolynomial {
            presentation: self.presentation.clone(),
            poly: &self.poly * &other.poly,
            two_pi_exponent: self.two_pi_exponent + other.two_pi_exponent,
        };
        out.apply_relations();
        Ok(out)
    }

    fn monomial_degree(&self, m: &Monomial) -> u32 {
        let gens = self.presentation.generators();
        m.factors().iter().map(|(v, e)| gens[gen_index(v)].degree * e).sum()
    }

    /// Form degree of each side of a monomial.
    fn monomial_bidegree(&self, m: &Monomial) -> (u32, u32) {
        let gens = self.presentation.generators();
        let mut out = (0, 0);
        for (v, e) in m.factors() {
            let g = &gens[gen_index(v)];
            if g.side == 0 {
                out.0 += g.degree * e;
            } else {
                out.1 += g.degree * e;
            }
        }
        out
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let poly = MultiPoly::from_terms(self.poly.terms().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())));
        InvariantPolynomial { presentation: self.presentation.clone(), poly, two_pi_exponent: self.two_pi_exponent }
    }

    /// Homogeneous component of the given form degree.
    pub fn component(&self, form_degree: u32) -> Self {
        self.filter(|m| self.monomial_degree(m) == form_degree)
    }

    pub fn truncated(&self, max_form_degree: u32) -> Self {
        self.filter(|m| self.monomial_degree(m) <= max_form_degree)
    }

    pub fn form_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.poly.terms().map(|(m, _)| self.monomial_degree(m)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Components by (gravitational, gauge) polynomial degree, i.e. form degree / 2.
    pub fn bidegree_components(&self) -> BTreeMap<(u32, u32), InvariantPolynomial> {
        let mut out = BTreeMap::new();
        for (m, _) in self.poly.terms() {
            let (a, b) = self.monomial_bidegree(m);
            out.entry((a / 2, b / 2)).or_insert_with(|| self.filter(|k| self.monomial_bidegree(k) == (a, b)));
        }
        out
    }

    /// Coefficient of the degree-0 part.
    pub fn constant_term(&self) -> Scalar {
        self.poly.coefficient(&Monomial::one())
    }

    /// Coefficient of a monomial given by generator names.
    pub fn coefficient(&self, factors: &[(&str, u32)]) -> Result<Scalar> {
        let gens = self.presentation.generators();
        let mut pairs = Vec::new();
        for (name, e) in factors {
            let i = gens.iter().position(|g| g.name == *name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            pairs.push((gen_var(i), *e));
        }
        Ok(self.poly.coefficient(&Monomial::from_pairs(pairs)))
    }

    /// Image in a tensor presentation containing this ring as the given side.
    pub fn embed(&self, target: &Presentation, side: u8) -> Result<Self> {
        let factor = target.factor(side).ok_or_else(|| Error::Precondition(format!("{target} has no side {side}")))?;
        if *factor != self.presentation {
            return Err(Error::Precondition(format!("{} is not side {side} of {target}", self.presentation)));
        }
        let src = self.presentation.generators();
        let dst = target.generators();
        let map: Vec<usize> = src
            .iter()
            .map(|g| dst.iter().position(|h| h.kind == g.kind && h.side == side).expect("generator present in tensor factor"))
            .collect();
        let poly = self.poly.substitute(&|v| Some(MultiPoly::var(gen_var(map[gen_index(&v)]))));
        Ok(InvariantPolynomial { presentation: target.clone(), poly, two_pi_exponent: self.two_pi_exponent })
    }

    /// a ⊗ b in the tensor presentation of the two rings.
    pub fn tensor(a: &Self, b: &Self) -> Result<Self> {
        let target = Presentation::tensor(a.presentation.clone(), b.presentation.clone())?;
        a.embed(&target, 0)?.mul(&b.embed(&target, 1)?)
    }

    /// Terms as (coefficient, [(generator, exponent)]), by increasing degree.
    pub fn named_terms(&self) -> Vec<(Scalar, Vec<(String, u32)>)> {
        let gens = self.presentation.generators();
        let mut terms: Vec<(u32, Vec<(usize, u32)>, Scalar)> = self
            .poly
            .terms()
            .map(|(m, c)| (self.monomial_degree(m), m.factors().iter().map(|(v, e)| (gen_index(v), *e)).collect(), c.clone()))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        terms.into_iter().map(|(_, f, c)| (c, f.into_iter().map(|(i, e)| (gens[i].name.clone(), e)).collect())).collect()
    }
}

impl fmt::Display for InvariantPolynomial {
    /// `-1/24 p1`, `7/5760 p1^2 - 1/1440 p2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.named_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, factors)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> =
                factors.iter().map(|(name, e)| if *e == 1 { name.clone() } else { format!("{name}^{e}") }).collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join(" "))?;
            } else {
                write!(f, "{a} {}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of the given form degree, with e-exponent ≤ 1 on each
/// even SO factor.
pub fn invariant_ring_dimension(presentation: &Presentation, form_degree: u32) -> usize {
    let gens = presentation.generators();
    fn count(gens: &[RingGenerator], i: usize, left: u32) -> usize {
        if left == 0 {
            return 1;
        }
        if i == gens.len() {
            return 0;
        }
        let g = &gens[i];
        let max = if g.kind == GeneratorKind::Euler { 1 } else { left / g.degree };
        (0..=max.min(left / g.degree)).map(|e| count(gens, i + 1, left - e * g.degree)).sum()
    }
    count(&gens, 0, form_degree)
}
