use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::derivation::Derivation;
use super::element::SuperElement;
use super::word::SuperWord;
use super::Generator;
use crate::error::{Error, Result};
use crate::exact_algebra::{kernel_with_free_columns, ComplexSlice, Scalar, SparseMatrix};

/// Monomial ideal given by a predicate on words.
#[derive(Clone)]
pub struct TruncationIdeal<G: Generator>(Arc<dyn Fn(&SuperWord<G>) -> bool + Send + Sync>);

impl<G: Generator> TruncationIdeal<G> {
    pub fn new(kills: impl Fn(&SuperWord<G>) -> bool + Send + Sync + 'static) -> Self {
        TruncationIdeal(Arc::new(kills))
    }

    pub fn kills(&self, w: &SuperWord<G>) -> bool {
        (self.0)(w)
    }
}

impl<G: Generator> fmt::Debug for TruncationIdeal<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TruncationIdeal")
    }
}

/// Restriction applied to each degree before assembling a slice.
pub enum SliceFilter<'a, G: Generator> {
    None,
    /// Keep only the words satisfying the predicate.
    Words(&'a dyn Fn(&SuperWord<G>) -> bool),
    /// Joint kernel of the listed derivations (basic elements).
    Basic(&'a [Derivation<G>]),
}

/// A complex slice together with the algebra elements spanning its middle degree.
#[derive(Clone, Debug)]
pub struct GradedSlice<G: Generator> {
    pub slice: ComplexSlice,
    pub basis: Vec<SuperElement<G>>,
    pivots: Vec<usize>,
    words: Vec<SuperWord<G>>,
}

impl<G: Generator> GradedSlice<G> {
    pub fn element_of(&self, coords: &[Scalar]) -> SuperElement<G> {
        let mut out = SuperElement::zero();
        for (b, c) in self.basis.iter().zip(coords) {
            out.add_scaled(b, c);
        }
        out
    }

    /// Coordinates of `a` in the slice basis, if `a` lies in its span.
    pub fn coordinates(&self, a: &SuperElement<G>) -> Option<Vec<Scalar>> {
        let index: FxHashMap<&SuperWord<G>, usize> = self.words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut full = vec![Scalar::zero(); self.words.len()];
        for (w, c) in a.terms() {
            full[*index.get(w)?] = c.clone();
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| full[p].clone()).collect();
        (self.element_of(&coords) == *a).then_some(coords)
    }
}

/// Free graded-commutative algebra on a finite generator set, optionally
/// truncated by a monomial ideal.
#[derive(Clone, Debug)]
pub struct SuperAlgebra<G: Generator> {
    generators: Vec<G>,
    ideal: Option<TruncationIdeal<G>>,
}

struct DegreeSpace<G: Generator> {
    words: Vec<SuperWord<G>>,
    index: FxHashMap<SuperWord<G>, usize>,
    vectors: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl<G: Generator> SuperAlgebra<G> {
    pub fn new(mut generators: Vec<G>) -> Result<Self> {
        generators.sort();
        for w in generators.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGenerators(format!("duplicate generator {}", w[0])));
            }
        }
        if let Some(g) = generators.iter().find(|g| g.degree() == 0) {
            return Err(Error::InvalidGenerators(format!("generator {g} has degree 0")));
        }
        Ok(SuperAlgebra { generators, ideal: None })
    }

    pub fn with_ideal(mut self, ideal: TruncationIdeal<G>) -> Self {
        self.ideal = Some(ideal);
        self
    }

    pub fn generators(&self) -> &[G] {
        &self.generators
    }

    pub fn ideal(&self) -> Option<&TruncationIdeal<G>> {
        self.ideal.as_ref()
    }

    pub fn kills(&self, w: &SuperWord<G>) -> bool {
        self.ideal.as_ref().is_some_and(|i| i.kills(w))
    }

    pub fn contains(&self, g: &G) -> bool {
        self.generators.binary_search(g).is_ok()
    }

    /// Checks that every generator in `a` belongs to this algebra.
    pub fn check_element(&self, a: &SuperElement<G>) -> Result<()> {
        for (w, _) in a.terms() {
            for (g, _) in w.factors() {
                if !self.contains(g) {
                    return Err(Error::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn reduce(&self, a: &SuperElement<G>) -> SuperElement<G> {
        match &self.ideal {
            None => a.clone(),
            Some(i) => a.filter(|w| !i.kills(w)),
        }
    }

    pub fn multiply(&self, a: &SuperElement<G>, b: &SuperElement<G>) -> Result<SuperElement<G>> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.reduce(&(a * b)))
    }

    pub fn apply(&self, d: &Derivation<G>, a: &SuperElement<G>) -> Result<SuperElement<G>> {
        Ok(self.reduce(&d.apply(&self.reduce(a))?))
    }

    /// Canonical words of the given degree (and weight, if requested) not killed
    /// by the ideal, in canonical order.
    pub fn basis(&self, degree: u32, weight: Option<i32>) -> Vec<SuperWord<G>> {
        let mut out = Vec::new();
        let bounds = weight.map(|w| (w, self.suffix_rates()));
        self.enumerate(0, degree, SuperWord::one(), bounds.as_ref(), &mut out);
        if let Some(wt) = weight {
            out.retain(|w| w.weight() == wt);
        }
        out.sort();
        out
    }

    /// For each suffix of the generator list, its generators sorted by weight per degree.
    fn suffix_rates(&self) -> Vec<Vec<(i32, u32, bool)>> {
        (0..=self.generators.len())
            .map(|k| {
                let mut v: Vec<(i32, u32, bool)> =
                    self.generators[k..].iter().map(|g| (g.weight(), g.degree(), g.parity().is_odd())).collect();
                v.sort_by(|a, b| (a.0 as i64 * b.1 as i64).cmp(&(b.0 as i64 * a.1 as i64)));
                v
            })
            .collect()
    }

    /// Fractional-relaxation bound on the weight reachable with `left` more degrees.
    fn weight_bound(rates: &[(i32, u32, bool)], left: u32, lowest: bool) -> Scalar {
        let mut acc = Scalar::zero();
        let mut rem = left;
        let iter: Box<dyn Iterator<Item = &(i32, u32, bool)>> =
            if lowest { Box::new(rates.iter()) } else { Box::new(rates.iter().rev()) };
        for &(w, d, odd) in iter {
            if rem == 0 {
                break;
            }
            let take = if odd { d.min(rem) } else { rem };
            acc += Scalar::new(w as i64 * take as i64, d as i64);
            rem -= take;
        }
        acc
    }

    fn enumerate(
        &self,
        start: usize,
        left: u32,
        cur: SuperWord<G>,
        bounds: Option<&(i32, Vec<Vec<(i32, u32, bool)>>)>,
        out: &mut Vec<SuperWord<G>>,
    ) {
        if left == 0 {
            out.push(cur);
            return;
        }
        if let Some((target, rates)) = bounds {
            let need = Scalar::from_int((*target - cur.weight()) as i64);
            let rates = &rates[start];
            if need < Self::weight_bound(rates, left, true) || need > Self::weight_bound(rates, left, false) {
                return;
            }
        }
        for k in start..self.generators.len() {
            let g = &self.generators[k];
            if g.degree() > left {
                continue;
            }
            let max_e = if g.parity().is_odd() { 1 } else { left / g.degree() };
            let mut w = cur.clone();
            for _ in 1..=max_e {
                w = w.mul(&SuperWord::generator(g.clone())).expect("even power or first odd factor").1;
                if self.kills(&w) {
                    break;
                }
                self.enumerate(k + 1, left - g.degree() * w.exponent(g), w.clone(), bounds, out);
            }
        }
    }

    /// Killed words of degree ≤ `cutoff` must map into killed words.
    pub fn check_ideal_stable(&self, d: &Derivation<G>, cutoff: u32) -> Result<()> {
        let Some(ideal) = &self.ideal else { return Ok(()) };
        let free = SuperAlgebra { generators: self.generators.clone(), ideal: None };
        for deg in 0..=cutoff {
            for w in free.basis(deg, None) {
                if !ideal.kills(&w) {
                    continue;
                }
                let dw = d.apply_word(&w)?;
                let bad = dw.terms().find(|(u, _)| !ideal.kills(u)).map(|(u, _)| u.to_string());
                if let Some(bad) = bad {
                    return Err(Error::UnstableFilter(format!("d({w}) contains surviving word {bad}")));
                }
            }
        }
        Ok(())
    }

    /// d ∘ d on each generator.
    pub fn check_square_zero(&self, d: &Derivation<G>) -> Result<()> {
        for g in &self.generators {
            let dd = self.apply(d, &self.apply(d, &SuperElement::generator(g.clone()))?)?;
            if !dd.is_zero() {
                return Err(Error::Precondition(format!("d^2({g}) = {dd}")));
            }
        }
        Ok(())
    }

    fn degree_space(&self, degree: i64, weight: Option<i32>, filter: &SliceFilter<'_, G>) -> Result<DegreeSpace<G>> {
        let mut words = if degree < 0 { Vec::new() } else { self.basis(degree as u32, weight) };
        if let SliceFilter::Words(pred) = filter {
            words.retain(|w| pred(w));
        }
        let index: FxHashMap<SuperWord<G>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let (vectors, pivots) = match filter {
            SliceFilter::Basic(ops) if n > 0 => {
                let mut rows: FxHashMap<(usize, SuperWord<G>), usize> = FxHashMap::default();
                let mut triplets = Vec::new();
                for (col, w) in words.iter().enumerate() {
                    for (k, op) in ops.iter().enumerate() {
                        let image = self.reduce(&op.apply_word(w)?);
                        for (u, c) in image.terms() {
                            let next = rows.len();
                            let r = *rows.entry((k, u.clone())).or_insert(next);
                            triplets.push((r, col, c.clone()));
                        }
                    }
                }
                let m = SparseMatrix::from_triplets(rows.len(), n, triplets);
                kernel_with_free_columns(&m)
            }
            _ => {
                let vectors = (0..n)
                    .map(|i| {
                        let mut v = vec![Scalar::zero(); n];
                        v[i] = Scalar::one();
                        v
                    })
                    .collect();
                (vectors, (0..n).collect())
            }
        };
        Ok(DegreeSpace { words, index, vectors, pivots })
    }

    fn element(space: &DegreeSpace<G>, v: &[Scalar]) -> SuperElement<G> {
        let mut out = SuperElement::zero();
        for (w, c) in space.words.iter().zip(v) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Matrix of `d` from `src` into `dst` in the subspace coordinates.
    fn restricted(&self, d: &Derivation<G>, src: &DegreeSpace<G>, dst: &DegreeSpace<G>) -> Result<SparseMatrix> {
        let mut triplets = Vec::new();
        for (col, v) in src.vectors.iter().enumerate() {
            let a = Self::element(src, v);
            let image = self.apply(d, &a)?;
            let mut full = vec![Scalar::zero(); dst.words.len()];
            for (u, c) in image.terms() {
                match dst.index.get(u) {
                    Some(&i) => full[i] = c.clone(),
                    None => return Err(Error::UnstableFilter(format!("d({a}) leaves the subcomplex through {u}"))),
                }
            }
            let coords: Vec<Scalar> = dst.pivots.iter().map(|&p| full[p].clone()).collect();
            let mut check = vec![Scalar::zero(); dst.words.len()];
            for (b, c) in dst.vectors.iter().zip(&coords) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in check.iter_mut().zip(b) {
                    *x += y * c;
                }
            }
            if check != full {
                return Err(Error::UnstableFilter(format!("d({a}) = {image} is not in the filtered span")));
            }
            for (row, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    triplets.push((row, col, c));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(dst.vectors.len(), src.vectors.len(), triplets))
    }

    /// Matrices of `d` into and out of `degree`, restricted by `filter`.
    pub fn complex_slice(
        &self,
        d: &Derivation<G>,
        degree: u32,
        weight: Option<i32>,
        filter: &SliceFilter<'_, G>,
    ) -> Result<GradedSlice<G>> {
        let prev = self.degree_space(degree as i64 - 1, weight, filter)?;
        let here = self.degree_space(degree as i64, weight, filter)?;
        let next = self.degree_space(degree as i64 + 1, weight, filter)?;
        let d_in = self.restricted(d, &prev, &here)?;
        let d_out = self.restricted(d, &here, &next)?;
        let basis: Vec<SuperElement<G>> = here.vectors.iter().map(|v| Self::element(&here, v)).collect();
        let labels = basis.iter().map(|b| b.to_string()).collect();
        let slice = ComplexSlice::new(d_in, d_out, labels)?;
        Ok(GradedSlice { slice, basis, pivots: here.pivots, words: here.words })
    }
}
