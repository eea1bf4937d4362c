//! Chevalley-Eilenberg complexes of formal vector fields a_n and a_{n,g} with
//! their weight grading, curvature cochains and the map from truncated Weil
//! algebras.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exact_algebra::{MultiIndex, Scalar, MAX_DIM};
use crate::superalgebra::{Derivation, Generator, GeneratorSpec, GradedSlice, Parity, SliceFilter, SuperAlgebra, SuperElement};
use crate::weil_cohomology::{degree_cohomology, DegreeCohomology, LieAlgebraData, WeilAlgebra};

/// Generators of the continuous dual: θ^i_J (pairing with (−1)^{|J|}∂_J X^i(0))
/// and σ^α_J (the same on the gauge part).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CeGenerator {
    Theta { comp: u8, idx: MultiIndex },
    Sigma { comp: u8, idx: MultiIndex },
}

impl CeGenerator {
    pub fn theta(comp: usize, idx: MultiIndex) -> Self {
        CeGenerator::Theta { comp: comp as u8, idx }
    }

    pub fn sigma(comp: usize, idx: MultiIndex) -> Self {
        CeGenerator::Sigma { comp: comp as u8, idx }
    }

    fn key(&self) -> (u8, MultiIndex, u8) {
        match *self {
            CeGenerator::Theta { comp, idx } => (0, idx, comp),
            CeGenerator::Sigma { comp, idx } => (1, idx, comp),
        }
    }
}

impl Ord for CeGenerator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CeGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (letter, comp, idx) = match self {
            CeGenerator::Theta { comp, idx } => ("th", comp, idx),
            CeGenerator::Sigma { comp, idx } => ("s", comp, idx),
        };
        write!(f, "{letter}{}", comp + 1)?;
        if !idx.is_empty() {
            write!(f, "_{}", idx.digits())?;
        }
        Ok(())
    }
}

impl Generator for CeGenerator {
    fn parity(&self) -> Parity {
        Parity::Odd
    }

    fn degree(&self) -> u32 {
        1
    }

    fn weight(&self) -> i32 {
        match self {
            CeGenerator::Theta { idx, .. } => idx.order() as i32 - 1,
            CeGenerator::Sigma { idx, .. } => idx.order() as i32,
        }
    }
}

pub type CeCochain = SuperElement<CeGenerator>;

fn th(comp: usize, idx: MultiIndex) -> CeCochain {
    SuperElement::generator(CeGenerator::theta(comp, idx))
}

fn sg(comp: usize, idx: MultiIndex) -> CeCochain {
    SuperElement::generator(CeGenerator::sigma(comp, idx))
}

/// Which subalgebra to take basic elements relative to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeSubalgebra {
    Trivial,
    /// so(n) (and the whole gauge algebra, if present).
    So,
    /// gl(n) (and the whole gauge algebra, if present).
    Gl,
}

/// The Lie algebra a_n, or a_{n,g} when a gauge algebra is given.
#[derive(Clone, Debug)]
pub struct FormalVFModel {
    n: usize,
    gauge: Option<LieAlgebraData>,
    d: Derivation<CeGenerator>,
}

impl FormalVFModel {
    pub fn new(n: usize, gauge: Option<LieAlgebraData>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Precondition(format!("n = {n} must lie in 1..={MAX_DIM}")));
        }
        let d = ce_differential(n, gauge.clone());
        Ok(FormalVFModel { n, gauge, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gauge(&self) -> Option<&LieAlgebraData> {
        self.gauge.as_ref()
    }

    pub fn differential(&self) -> &Derivation<CeGenerator> {
        &self.d
    }

    pub fn apply(&self, c: &CeCochain) -> Result<CeCochain> {
        self.d.apply(c)
    }

    /// All generators of weight ≤ `max_weight`.
    pub fn generators(&self, max_weight: i32) -> Vec<CeGenerator> {
        let mut out = Vec::new();
        if max_weight < -1 {
            return out;
        }
        for idx in MultiIndex::all_up_to(self.n, (max_weight + 1) as u32) {
            for i in 0..self.n {
                out.push(CeGenerator::theta(i, idx));
            }
        }
        if let Some(g) = &self.gauge {
            if max_weight >= 0 {
                for idx in MultiIndex::all_up_to(self.n, max_weight as u32) {
                    for a in 0..g.dim() {
                        out.push(CeGenerator::sigma(a, idx));
                    }
                }
            }
        }
        out
    }

    /// Finite algebra containing every word of the given degree and weight and
    /// of the neighbouring degrees.
    pub fn algebra_for(&self, degree: u32, weight: i32) -> Result<SuperAlgebra<CeGenerator>> {
        let bound = weight + self.n.min(degree as usize) as i32;
        SuperAlgebra::new(self.generators(bound))
    }

    /// R^i_j = dθ^i_j + θ^i_k θ^k_j.
    pub fn curvature(&self, i: usize, j: usize) -> Result<CeCochain> {
        let mut r = self.apply(&th(i, MultiIndex::unit(j)))?;
        for k in 0..self.n {
            r = r + &th(i, MultiIndex::unit(k)) * &th(k, MultiIndex::unit(j));
        }
        Ok(r)
    }

    /// S^α = dσ^α + ½c^α_{βγ}σ^βσ^γ.
    pub fn gauge_curvature(&self, alpha: usize) -> Result<CeCochain> {
        let g = self.gauge.as_ref().ok_or_else(|| Error::Precondition("model has no gauge algebra".into()))?;
        let mut s = self.apply(&sg(alpha, MultiIndex::EMPTY))?;
        let half = Scalar::new(1, 2);
        for b in 0..g.dim() {
            for c in 0..g.dim() {
                let k = g.c(alpha, b, c);
                if !k.is_zero() {
                    s.add_scaled(&(&sg(b, MultiIndex::EMPTY) * &sg(c, MultiIndex::EMPTY)), &(&k * &half));
                }
            }
        }
        Ok(s)
    }

    /// dR^i_j + θ^i_k R^k_j − R^i_k θ^k_j for all (i, j); all zero when Bianchi holds.
    pub fn bianchi_defects(&self) -> Result<Vec<CeCochain>> {
        let n = self.n;
        let r: Vec<Vec<CeCochain>> =
            (0..n).map(|i| (0..n).map(|j| self.curvature(i, j)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut e = self.apply(&r[i][j])?;
                for k in 0..n {
                    e = e + &th(i, MultiIndex::unit(k)) * &r[k][j];
                    e = e - &r[i][k] * &th(k, MultiIndex::unit(j));
                }
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Interior product by a^i_j x^j ∂_i (gl part) plus the constant gauge
    /// element with coordinates `gauge_part`.
    pub fn interior(&self, linear: &[Vec<Scalar>], gauge_part: &[Scalar]) -> Derivation<CeGenerator> {
        let linear = linear.to_vec();
        let gauge_part = gauge_part.to_vec();
        Derivation::new(Parity::Odd, -1, move |g| {
            Ok(match *g {
                CeGenerator::Theta { comp, idx } if idx.order() == 1 => {
                    let l = idx.directions()[0];
                    let v = linear.get(comp as usize).and_then(|row| row.get(l)).cloned().unwrap_or_default();
                    SuperElement::scalar(-v)
                }
                CeGenerator::Sigma { comp, idx } if idx.is_empty() => {
                    SuperElement::scalar(gauge_part.get(comp as usize).cloned().unwrap_or_default())
                }
                _ => SuperElement::zero(),
            })
        })
    }

    /// ι_h and L_h over a basis of the chosen subalgebra.
    pub fn basic_operators(&self, sub: CeSubalgebra) -> Vec<Derivation<CeGenerator>> {
        let n = self.n;
        let zero_gauge = vec![Scalar::zero(); self.gauge.as_ref().map_or(0, |g| g.dim())];
        let mut mats = Vec::new();
        let unit = |a: usize, b: usize| -> Vec<Vec<Scalar>> {
            (0..n)
                .map(|i| (0..n).map(|j| Scalar::from_int(((i, j) == (a, b)) as i64)).collect())
                .collect()
        };
        match sub {
            CeSubalgebra::Trivial => return Vec::new(),
            CeSubalgebra::So => {
                for a in 0..n {
                    for b in a + 1..n {
                        let mut m = unit(a, b);
                        m[b][a] = Scalar::from_int(-1);
                        mats.push(m);
                    }
                }
            }
            CeSubalgebra::Gl => {
                for a in 0..n {
                    for b in 0..n {
                        mats.push(unit(a, b));
                    }
                }
            }
        }
        let mut ops = Vec::new();
        for m in &mats {
            let iota = self.interior(m, &zero_gauge);
            ops.push(self.d.commutator(&iota));
            ops.push(iota);
        }
        let zero_linear = vec![vec![Scalar::zero(); n]; n];
        for a in 0..zero_gauge.len() {
            let mut v = zero_gauge.clone();
            v[a] = Scalar::one();
            let iota = self.interior(&zero_linear, &v);
            ops.push(self.d.commutator(&iota));
            ops.push(iota);
        }
        ops
    }

    /// Slice of the basic subcomplex at one (degree, weight).
    pub fn slice(&self, sub: CeSubalgebra, degree: u32, weight: i32) -> Result<GradedSlice<CeGenerator>> {
        let ops = self.basic_operators(sub);
        let alg = self.algebra_for(degree, weight)?;
        alg.complex_slice(&self.d, degree, Some(weight), &SliceFilter::Basic(&ops))
    }

    /// Per-(degree, weight) cohomology of the basic subcomplex.
    pub fn relative_cohomology(
        &self,
        sub: CeSubalgebra,
        degrees: RangeInclusive<u32>,
        weights: RangeInclusive<i32>,
    ) -> Result<Vec<DegreeCohomology<CeGenerator>>> {
        if weights.is_empty() || degrees.is_empty() {
            return Err(Error::WeightWindow(format!("empty window {degrees:?} x {weights:?}")));
        }
        let mut out = Vec::new();
        for degree in degrees {
            for weight in weights.clone() {
                let s = self.slice(sub, degree, weight)?;
                out.push(degree_cohomology(&s, degree, Some(weight)));
            }
        }
        Ok(out)
    }

    /// β: W_(n)(gl(n) × g) → Λa_{n,g}^*; `weil` must be built on `gl(n)` or
    /// `gl(n) × g` with the matching gauge algebra.
    pub fn beta(&self, weil: &WeilAlgebra, w: &SuperElement<GeneratorSpec>) -> Result<CeCochain> {
        let n = self.n;
        let expected = match &self.gauge {
            None => LieAlgebraData::gl(n),
            Some(g) => LieAlgebraData::product(&LieAlgebraData::gl(n), g),
        };
        if *weil.lie() != expected {
            return Err(Error::Precondition(format!("β needs W({}), got W({})", expected.label, weil.lie().label)));
        }
        weil.algebra().check_element(w)?;
        let mut images = rustc_hash::FxHashMap::default();
        for k in 0..weil.lie().dim() {
            let (lam, cur) = if k < n * n {
                let (a, b) = (k / n, k % n);
                (th(a, MultiIndex::unit(b)), self.curvature(a, b)?)
            } else {
                let alpha = k - n * n;
                (sg(alpha, MultiIndex::EMPTY), self.gauge_curvature(alpha)?)
            };
            images.insert(weil.lambda(k).clone(), lam);
            images.insert(weil.curvature(k).clone(), cur);
        }
        Ok(w.map_generators(&|g| images[g].clone()))
    }
}

/// dθ^i_J = Σ_{A+B=J} C(J,A) θ^j_A θ^i_{B+j};
/// dσ^α_J = Σ C(J,A) θ^i_A σ^α_{B+i} − ½ Σ c^α_{βγ} C(J,A) σ^β_A σ^γ_B.
fn ce_differential(n: usize, gauge: Option<LieAlgebraData>) -> Derivation<CeGenerator> {
    Derivation::new(Parity::Odd, 1, move |g| {
        let mut out = SuperElement::zero();
        match *g {
            CeGenerator::Theta { comp, idx } => {
                for a in idx.sub_indices() {
                    let b = idx.sub(&a).expect("sub-index");
                    let c = Scalar::from_int(idx.binomial(&a) as i64);
                    for j in 0..n {
                        let t = &th(j, a) * &th(comp as usize, b.plus(j));
                        out.add_scaled(&t, &c);
                    }
                }
            }
            CeGenerator::Sigma { comp, idx } => {
                for a in idx.sub_indices() {
                    let b = idx.sub(&a).expect("sub-index");
                    let c = Scalar::from_int(idx.binomial(&a) as i64);
                    for i in 0..n {
                        let t = &th(i, a) * &sg(comp as usize, b.plus(i));
                        out.add_scaled(&t, &c);
                    }
                    if let Some(lie) = &gauge {
                        for beta in 0..lie.dim() {
                            for gamma in 0..lie.dim() {
                                let k = lie.c(comp as usize, beta, gamma);
                                if k.is_zero() {
                                    continue;
                                }
                                let t = &sg(beta, a) * &sg(gamma, b);
                                out.add_scaled(&t, &(&(&k * &c) * &Scalar::new(-1, 2)));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_differentials() {
        let m = FormalVFModel::new(2, None).unwrap();
        let d0 = m.apply(&th(0, MultiIndex::EMPTY)).unwrap();
        let expected = &th(0, MultiIndex::EMPTY) * &th(0, MultiIndex::unit(0)) + &th(1, MultiIndex::EMPTY) * &th(0, MultiIndex::unit(1));
        assert_eq!(d0, expected);
        assert!(m.apply(&CeCochain::one()).unwrap().is_zero());
        let m = FormalVFModel::new(1, Some(LieAlgebraData::abelian(1))).unwrap();
        let ds = m.apply(&sg(0, MultiIndex::EMPTY)).unwrap();
        assert_eq!(ds, &th(0, MultiIndex::EMPTY) * &sg(0, MultiIndex::unit(0)));
    }

    #[test]
    fn weights_and_names() {
        let g = CeGenerator::theta(0, MultiIndex::from_directions(&[0, 1]));
        assert_eq!(g.weight(), 1);
        assert_eq!(g.to_string(), "th1_12");
        assert_eq!(CeGenerator::sigma(1, MultiIndex::EMPTY).weight(), 0);
    }
}
