use std::ops::RangeInclusive;

use rustc_hash::FxHashMap;

use super::lie::{LieAlgebraData, SubalgebraEmbedding};
use crate::error::{Error, Result};
use crate::exact_algebra::{cohomology, Scalar};
use crate::superalgebra::{
    Derivation, Generator, GeneratorSpec, GradedSlice, Parity, SliceFilter, SuperAlgebra, SuperElement, SuperWord,
    TruncationIdeal,
};

/// Cohomology of one degree (and weight) of a filtered complex.
#[derive(Clone, Debug)]
pub struct DegreeCohomology<G: Generator> {
    pub degree: u32,
    pub weight: Option<i32>,
    pub dimension: usize,
    pub representatives: Vec<SuperElement<G>>,
}

pub fn dimensions<G: Generator>(table: &[DegreeCohomology<G>]) -> Vec<usize> {
    table.iter().map(|r| r.dimension).collect()
}

pub(crate) fn table_from<G: Generator>(
    algebra: &SuperAlgebra<G>,
    d: &Derivation<G>,
    degrees: RangeInclusive<u32>,
    weight: Option<i32>,
    filter: &SliceFilter<'_, G>,
) -> Result<Vec<DegreeCohomology<G>>> {
    let mut out = Vec::new();
    for degree in degrees {
        let s = algebra.complex_slice(d, degree, weight, filter)?;
        out.push(degree_cohomology(&s, degree, weight));
    }
    Ok(out)
}

pub(crate) fn degree_cohomology<G: Generator>(s: &GradedSlice<G>, degree: u32, weight: Option<i32>) -> DegreeCohomology<G> {
    let h = cohomology(&s.slice);
    DegreeCohomology {
        degree,
        weight,
        dimension: h.dimension,
        representatives: h.representatives.iter().map(|v| s.element_of(v)).collect(),
    }
}

/// The Weil algebra W(g), optionally truncated to symmetric degree ≤ k.
#[derive(Clone, Debug)]
pub struct WeilAlgebra {
    lie: LieAlgebraData,
    truncation: Option<u32>,
    algebra: SuperAlgebra<GeneratorSpec>,
    d: Derivation<GeneratorSpec>,
    lambdas: Vec<GeneratorSpec>,
    curvatures: Vec<GeneratorSpec>,
}

impl WeilAlgebra {
    /// dλ^i = Λ^i − ½c^i_{jk}λ^jλ^k and dΛ^i = c^i_{jk}Λ^jλ^k.
    pub fn build(lie: &LieAlgebraData, truncation: Option<u32>) -> Result<Self> {
        let lambdas: Vec<GeneratorSpec> = lie.names().iter().map(|s| GeneratorSpec::odd(format!("l{s}"), 1)).collect();
        let curvatures: Vec<GeneratorSpec> = lie.names().iter().map(|s| GeneratorSpec::even(format!("L{s}"), 2)).collect();
        let n = lie.dim();
        let mut table = FxHashMap::default();
        for i in 0..n {
            let mut dl = SuperElement::generator(curvatures[i].clone());
            let mut dc = SuperElement::zero();
            for j in 0..n {
                for k in 0..n {
                    let c = lie.c(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let ll = SuperElement::product(&[lambdas[j].clone(), lambdas[k].clone()]);
                    dl.add_scaled(&ll, &(&c * &Scalar::new(-1, 2)));
                    let cl = SuperElement::product(&[curvatures[j].clone(), lambdas[k].clone()]);
                    dc.add_scaled(&cl, &c);
                }
            }
            table.insert(lambdas[i].clone(), dl);
            table.insert(curvatures[i].clone(), dc);
        }
        let mut gens = lambdas.clone();
        gens.extend(curvatures.iter().cloned());
        let mut algebra = SuperAlgebra::new(gens)?;
        if let Some(k) = truncation {
            algebra = algebra.with_ideal(TruncationIdeal::new(move |w: &SuperWord<GeneratorSpec>| {
                w.factors().iter().filter(|(g, _)| g.parity == Parity::Even).map(|(_, e)| *e).sum::<u32>() > k
            }));
        }
        let d = Derivation::from_table(Parity::Odd, 1, table);
        algebra.check_square_zero(&d)?;
        Ok(WeilAlgebra { lie: lie.clone(), truncation, algebra, d, lambdas, curvatures })
    }

    pub fn lie(&self) -> &LieAlgebraData {
        &self.lie
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn algebra(&self) -> &SuperAlgebra<GeneratorSpec> {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation<GeneratorSpec> {
        &self.d
    }

    pub fn lambda(&self, i: usize) -> &GeneratorSpec {
        &self.lambdas[i]
    }

    pub fn curvature(&self, i: usize) -> &GeneratorSpec {
        &self.curvatures[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lie.names().iter().position(|s| s == name)
    }

    /// Interior product by the element with coordinates `v`: ι_v λ^j = v^j, ι_v Λ^j = 0.
    pub fn interior(&self, v: &[Scalar]) -> Result<Derivation<GeneratorSpec>> {
        if v.len() != self.lie.dim() {
            return Err(Error::UndeclaredAction(format!("vector of length {} in {}", v.len(), self.lie.label)));
        }
        let mut table = FxHashMap::default();
        for (i, c) in v.iter().enumerate() {
            table.insert(self.lambdas[i].clone(), SuperElement::scalar(c.clone()));
            table.insert(self.curvatures[i].clone(), SuperElement::zero());
        }
        Ok(Derivation::from_table(Parity::Odd, -1, table))
    }

    pub fn interior_basis(&self, i: usize) -> Result<Derivation<GeneratorSpec>> {
        if i >= self.lie.dim() {
            return Err(Error::UndeclaredAction(format!("basis vector {i} of {}", self.lie.label)));
        }
        let v: Vec<Scalar> = (0..self.lie.dim()).map(|j| Scalar::from_int((i == j) as i64)).collect();
        self.interior(&v)
    }

    /// L_v = d ι_v + ι_v d.
    pub fn lie_derivative(&self, v: &[Scalar]) -> Result<Derivation<GeneratorSpec>> {
        Ok(self.d.commutator(&self.interior(v)?))
    }

    /// ι_h and L_h for each basis vector of the subalgebra.
    pub fn basic_operators(&self, h: &SubalgebraEmbedding) -> Result<Vec<Derivation<GeneratorSpec>>> {
        if h.ambient != self.lie {
            return Err(Error::NotSubalgebra(format!("{} does not embed into {}", h.sub.label, self.lie.label)));
        }
        let mut ops = Vec::new();
        for v in &h.inclusion {
            ops.push(self.interior(v)?);
            ops.push(self.lie_derivative(v)?);
        }
        Ok(ops)
    }

    pub fn slice(&self, h: &SubalgebraEmbedding, degree: u32) -> Result<GradedSlice<GeneratorSpec>> {
        let ops = self.basic_operators(h)?;
        self.algebra.complex_slice(&self.d, degree, None, &SliceFilter::Basic(&ops))
    }

    /// Cohomology of the h-basic subcomplex per degree.
    pub fn relative_cohomology(
        &self,
        h: &SubalgebraEmbedding,
        degrees: RangeInclusive<u32>,
    ) -> Result<Vec<DegreeCohomology<GeneratorSpec>>> {
        let ops = self.basic_operators(h)?;
        table_from(&self.algebra, &self.d, degrees, None, &SliceFilter::Basic(&ops))
    }

    /// Matrix of Λ generators, entry (a, b) = Λ^a_b; only for gl(n).
    pub fn curvature_matrix(&self) -> Result<Vec<Vec<SuperElement<GeneratorSpec>>>> {
        let dim = self.lie.dim();
        let n = (1..=dim).find(|k| k * k == dim).unwrap_or(0);
        if n == 0 || self.lie != LieAlgebraData::gl(n) {
            return Err(Error::Precondition(format!("{} is not gl(n)", self.lie.label)));
        }
        Ok((0..n)
            .map(|a| (0..n).map(|b| SuperElement::generator(self.curvatures[a * n + b].clone())).collect())
            .collect())
    }
}

/// The algebra WO_n: U_i (odd i ≤ n) of degree 2i−1, C_i of degree 2i, dU_i = C_i,
/// with words of C-degree > 2n killed.
#[derive(Clone, Debug)]
pub struct WoAlgebra {
    pub n: u32,
    algebra: SuperAlgebra<GeneratorSpec>,
    d: Derivation<GeneratorSpec>,
}

impl WoAlgebra {
    pub fn build(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("WO_n needs n ≥ 1".into()));
        }
        let mut gens = Vec::new();
        let mut table = FxHashMap::default();
        for i in 1..=n {
            let c = GeneratorSpec::even(format!("C{i}"), 2 * i);
            table.insert(c.clone(), SuperElement::zero());
            if i % 2 == 1 {
                let u = GeneratorSpec::odd(format!("U{i}"), 2 * i - 1);
                table.insert(u.clone(), SuperElement::generator(c.clone()));
                gens.push(u);
            }
            gens.push(c);
        }
        let limit = 2 * n;
        let algebra = SuperAlgebra::new(gens)?.with_ideal(TruncationIdeal::new(move |w: &SuperWord<GeneratorSpec>| {
            w.factors().iter().filter(|(g, _)| g.parity == Parity::Even).map(|(g, e)| g.degree * e).sum::<u32>() > limit
        }));
        let d = Derivation::from_table(Parity::Odd, 1, table);
        algebra.check_square_zero(&d)?;
        Ok(WoAlgebra { n, algebra, d })
    }

    pub fn algebra(&self) -> &SuperAlgebra<GeneratorSpec> {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation<GeneratorSpec> {
        &self.d
    }

    pub fn u(&self, i: u32) -> Option<GeneratorSpec> {
        (i % 2 == 1 && i <= self.n).then(|| GeneratorSpec::odd(format!("U{i}"), 2 * i - 1))
    }

    pub fn c(&self, i: u32) -> Option<GeneratorSpec> {
        (i >= 1 && i <= self.n).then(|| GeneratorSpec::even(format!("C{i}"), 2 * i))
    }

    pub fn slice(&self, degree: u32) -> Result<GradedSlice<GeneratorSpec>> {
        self.algebra.complex_slice(&self.d, degree, None, &SliceFilter::None)
    }

    pub fn cohomology(&self, degrees: RangeInclusive<u32>) -> Result<Vec<DegreeCohomology<GeneratorSpec>>> {
        table_from(&self.algebra, &self.d, degrees, None, &SliceFilter::None)
    }
}

/// Pfaffian of an antisymmetric matrix with commuting (even) entries.
///
/// Entries of even total degree commute, so this also applies to matrices of
/// even-degree elements.
pub fn pfaffian<G: Generator>(m: &[Vec<SuperElement<G>>]) -> SuperElement<G> {
    let n = m.len();
    if n == 0 {
        return SuperElement::one();
    }
    if n % 2 == 1 {
        return SuperElement::zero();
    }
    let mut out = SuperElement::zero();
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor: Vec<Vec<SuperElement<G>>> =
            keep.iter().map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect()).collect();
        let term = &m[0][j] * &pfaffian(&minor);
        if j % 2 == 1 {
            out = out + term;
        } else {
            out = out - term;
        }
    }
    out
}

/// Ordered matrix product Σ_k a_ik b_kj.
pub fn matrix_product<G: Generator>(a: &[Vec<SuperElement<G>>], b: &[Vec<SuperElement<G>>]) -> Vec<Vec<SuperElement<G>>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(SuperElement::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion, for commuting entries.
pub fn determinant<G: Generator>(m: &[Vec<SuperElement<G>>]) -> SuperElement<G> {
    let n = m.len();
    if n == 0 {
        return SuperElement::one();
    }
    let mut out = SuperElement::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SuperElement<G>>> =
            (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect()).collect();
        let term = &m[0][j] * &determinant(&minor);
        if j % 2 == 0 {
            out = out + term;
        } else {
            out = out - term;
        }
    }
    out
}

/// Result of comparing H(W_(n)(gl(n)), so(n)) with H(WO_n)[T]/(T² − C_n).
#[derive(Clone, Debug)]
pub struct EulerExtensionReport {
    pub n: u32,
    pub relative_dims: Vec<usize>,
    pub wo_dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub euler_is_basic: bool,
    pub euler_is_cocycle: bool,
    pub euler_square_nonzero: bool,
    pub top_chern_nonzero: bool,
    /// `T² = ratio · C_n` in cohomology, when both classes are proportional.
    pub ratio: Option<Scalar>,
}

impl EulerExtensionReport {
    pub fn holds(&self) -> bool {
        self.relative_dims == self.expected_dims
            && self.euler_is_basic
            && self.euler_is_cocycle
            && self.euler_square_nonzero
            && self.top_chern_nonzero
            && self.ratio.is_some()
    }
}

/// Checks the even-n Euler extension in degrees `0..=max_degree` (≥ 2n for the
/// T² comparison).
pub fn check_even_euler_extension(n: u32, max_degree: u32) -> Result<EulerExtensionReport> {
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("n = {n} must be even")));
    }
    let gl = LieAlgebraData::gl(n as usize);
    let h = SubalgebraEmbedding::so_in_gl(n as usize);
    let w = WeilAlgebra::build(&gl, Some(n))?;
    let rel = w.relative_cohomology(&h, 0..=max_degree)?;
    let wo = WoAlgebra::build(n)?.cohomology(0..=max_degree)?;
    let relative_dims = dimensions(&rel);
    let wo_dims = dimensions(&wo);
    let expected_dims: Vec<usize> = (0..=max_degree as usize)
        .map(|r| wo_dims[r] + if r >= n as usize { wo_dims[r - n as usize] } else { 0 })
        .collect();

    // Curvature of the skew part λ^A of λ: F^A = Λ^A − (λλ)^A + λ^Aλ^A.
    let size = n as usize;
    let big = w.curvature_matrix()?;
    let lam: Vec<Vec<SuperElement<GeneratorSpec>>> = (0..size)
        .map(|a| (0..size).map(|b| SuperElement::generator(w.lambda(a * size + b).clone())).collect())
        .collect();
    let skew = |m: &[Vec<SuperElement<GeneratorSpec>>]| -> Vec<Vec<SuperElement<GeneratorSpec>>> {
        let half = Scalar::new(1, 2);
        (0..size).map(|a| (0..size).map(|b| (&m[a][b] - &m[b][a]).scale(&half)).collect()).collect()
    };
    let lam_a = skew(&lam);
    let ll = matrix_product(&lam, &lam);
    let aa = matrix_product(&lam_a, &lam_a);
    let (big_a, ll_a) = (skew(&big), skew(&ll));
    let f_a: Vec<Vec<SuperElement<GeneratorSpec>>> = (0..size)
        .map(|a| (0..size).map(|b| &(&big_a[a][b] - &ll_a[a][b]) + &aa[a][b]).collect())
        .collect();
    let euler = w.algebra().reduce(&pfaffian(&f_a));
    let top = determinant(&big);

    let t_slice = w.slice(&h, n)?;
    let euler_is_basic = t_slice.coordinates(&euler).is_some();
    let euler_is_cocycle = w.algebra().apply(w.differential(), &euler)?.is_zero();

    let mut euler_square_nonzero = false;
    let mut top_chern_nonzero = false;
    let mut ratio = None;
    if max_degree >= 2 * n {
        let s = w.slice(&h, 2 * n)?;
        let coh = cohomology(&s.slice);
        let class = |e: &SuperElement<GeneratorSpec>| -> Option<Vec<Scalar>> {
            let z = s.coordinates(&w.algebra().reduce(e))?;
            s.slice.class_of(&coh, &z)
        };
        let sq = class(&w.algebra().multiply(&euler, &euler)?);
        let cn = class(&top);
        if let (Some(sq), Some(cn)) = (sq, cn) {
            euler_square_nonzero = sq.iter().any(|x| !x.is_zero());
            top_chern_nonzero = cn.iter().any(|x| !x.is_zero());
            if let Some(k) = cn.iter().position(|x| !x.is_zero()) {
                let r = &sq[k] / &cn[k];
                if sq.iter().zip(&cn).all(|(a, b)| *a == b * &r) {
                    ratio = Some(r);
                }
            }
        }
    }
    Ok(EulerExtensionReport {
        n,
        relative_dims,
        wo_dims,
        expected_dims,
        euler_is_basic,
        euler_is_cocycle,
        euler_square_nonzero,
        top_chern_nonzero,
        ratio,
    })
}
