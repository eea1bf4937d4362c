use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::element::SuperElement;
use super::word::SuperWord;
use super::{Generator, Parity};
use crate::error::{Error, Result};
use crate::exact_algebra::Scalar;

type Action<G> = dyn Fn(&G) -> Result<SuperElement<G>> + Send + Sync;

/// Graded derivation, given by its values on generators and extended by the
/// graded Leibniz rule.
#[derive(Clone)]
pub struct Derivation<G: Generator> {
    parity: Parity,
    degree: i32,
    action: Arc<Action<G>>,
}

impl<G: Generator> fmt::Debug for Derivation<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({:?}, degree {})", self.parity, self.degree)
    }
}

impl<G: Generator> Derivation<G> {
    pub fn new(parity: Parity, degree: i32, action: impl Fn(&G) -> Result<SuperElement<G>> + Send + Sync + 'static) -> Self {
        Derivation { parity, degree, action: Arc::new(action) }
    }

    /// Derivation defined by a finite table; generators outside it are an error.
    pub fn from_table(parity: Parity, degree: i32, table: FxHashMap<G, SuperElement<G>>) -> Self {
        Self::new(parity, degree, move |g| table.get(g).cloned().ok_or_else(|| Error::UnknownGenerator(g.to_string())))
    }

    pub fn zero(parity: Parity, degree: i32) -> Self {
        Self::new(parity, degree, |_| Ok(SuperElement::zero()))
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn on_generator(&self, g: &G) -> Result<SuperElement<G>> {
        (self.action)(g)
    }

    pub fn apply_word(&self, w: &SuperWord<G>) -> Result<SuperElement<G>> {
        let mut cache = FxHashMap::default();
        self.apply_word_cached(w, &mut cache)
    }

    fn apply_word_cached(&self, w: &SuperWord<G>, cache: &mut FxHashMap<G, SuperElement<G>>) -> Result<SuperElement<G>> {
        let mut out = SuperElement::zero();
        for k in 0..w.factors().len() {
            let (prefix, g, e, rest) = w.split_at_factor(k);
            if !cache.contains_key(&g) {
                cache.insert(g.clone(), self.on_generator(&g)?);
            }
            let dg = &cache[&g];
            if dg.is_zero() {
                continue;
            }
            let mut c = Scalar::from_int(e as i64);
            if self.parity.is_odd() && prefix.parity().is_odd() {
                c = -c;
            }
            let left = SuperElement::word(prefix);
            let term = (&left * dg).mul_word(&rest, &c);
            out = out + term;
        }
        Ok(out)
    }

    pub fn apply(&self, a: &SuperElement<G>) -> Result<SuperElement<G>> {
        let mut cache = FxHashMap::default();
        let mut out = SuperElement::zero();
        for (w, c) in a.terms() {
            let dw = self.apply_word_cached(w, &mut cache)?;
            out.add_scaled(&dw, c);
        }
        Ok(out)
    }

    /// Graded commutator [self, other] = self∘other − (−1)^{|self||other|} other∘self,
    /// again a derivation.
    pub fn commutator(&self, other: &Derivation<G>) -> Derivation<G> {
        let (a, b) = (self.clone(), other.clone());
        let both_odd = a.parity.is_odd() && b.parity.is_odd();
        let parity = Parity::from_count(usize::from(a.parity.is_odd()) + usize::from(b.parity.is_odd()));
        Derivation::new(parity, a.degree + b.degree, move |g| {
            let ab = a.apply(&b.on_generator(g)?)?;
            let ba = b.apply(&a.on_generator(g)?)?;
            Ok(if both_odd { ab + ba } else { ab - ba })
        })
    }

    pub fn scaled(&self, c: Scalar) -> Derivation<G> {
        let a = self.clone();
        Derivation::new(self.parity, self.degree, move |g| Ok(a.on_generator(g)?.scale(&c)))
    }

    pub fn sum(&self, other: &Derivation<G>) -> Derivation<G> {
        let (a, b) = (self.clone(), other.clone());
        Derivation::new(self.parity, self.degree, move |g| Ok(a.on_generator(g)? + b.on_generator(g)?))
    }
}
