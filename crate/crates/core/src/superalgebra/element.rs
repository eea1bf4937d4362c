use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::word::SuperWord;
use super::Generator;
use crate::exact_algebra::Scalar;

/// Element of a free graded-commutative algebra with rational coefficients.
#[derive(Clone)]
pub struct SuperElement<G: Generator> {
    terms: FxHashMap<SuperWord<G>, Scalar>,
}

impl<G: Generator> Default for SuperElement<G> {
    fn default() -> Self {
        SuperElement { terms: FxHashMap::default() }
    }
}

impl<G: Generator> PartialEq for SuperElement<G> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<G: Generator> Eq for SuperElement<G> {}

impl<G: Generator> SuperElement<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(SuperWord::one(), c)
    }

    pub fn generator(g: G) -> Self {
        Self::term(SuperWord::generator(g), Scalar::one())
    }

    pub fn word(w: SuperWord<G>) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: SuperWord<G>, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    /// Ordered product of generators, sign-normalized.
    pub fn product(factors: &[G]) -> Self {
        match SuperWord::from_product(factors) {
            Some((s, w)) => Self::term(w, Scalar::from_int(s as i64)),
            None => Self::zero(),
        }
    }

    pub fn add_term(&mut self, w: SuperWord<G>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &SuperWord<G>) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperWord<G>, &Scalar)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<(&SuperWord<G>, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|w| w.degree()).collect()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn component(&self, degree: u32) -> Self {
        self.filter(|w| w.degree() == degree)
    }

    pub fn filter(&self, keep: impl Fn(&SuperWord<G>) -> bool) -> Self {
        SuperElement {
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SuperElement { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn mul_word(&self, w: &SuperWord<G>, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (u, v) in &self.terms {
            if let Some((s, p)) = u.mul(w) {
                let coeff = v * c;
                out.add_term(p, if s < 0 { -coeff } else { coeff });
            }
        }
        out
    }

    /// Substitutes each generator by an element of another algebra (an algebra
    /// homomorphism when parities are preserved).
    pub fn map_generators<H: Generator>(&self, f: &dyn Fn(&G) -> SuperElement<H>) -> SuperElement<H> {
        let mut cache: FxHashMap<G, SuperElement<H>> = FxHashMap::default();
        let mut out = SuperElement::zero();
        for (w, c) in &self.terms {
            let mut acc = SuperElement::scalar(c.clone());
            for (g, e) in w.factors() {
                let img = cache.entry(g.clone()).or_insert_with(|| f(g)).clone();
                for _ in 0..*e {
                    acc = &acc * &img;
                }
            }
            out = out + acc;
        }
        out
    }

    pub fn fmt_with(&self, f: &mut dyn fmt::Write, word: &dyn Fn(&SuperWord<G>) -> String) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if w.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&word(w))?;
            } else {
                write!(f, "{mag} * {}", word(w))?;
            }
        }
        Ok(())
    }
}

impl<G: Generator> fmt::Display for SuperElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|w| w.to_string())
    }
}

impl<G: Generator> fmt::Debug for SuperElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<G: Generator> Add<&SuperElement<G>> for &SuperElement<G> {
    type Output = SuperElement<G>;
    fn add(self, rhs: &SuperElement<G>) -> SuperElement<G> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<G: Generator> Sub<&SuperElement<G>> for &SuperElement<G> {
    type Output = SuperElement<G>;
    fn sub(self, rhs: &SuperElement<G>) -> SuperElement<G> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl<G: Generator> Neg for &SuperElement<G> {
    type Output = SuperElement<G>;
    fn neg(self) -> SuperElement<G> {
        self.scale(&Scalar::from_int(-1))
    }
}

impl<G: Generator> Mul<&SuperElement<G>> for &SuperElement<G> {
    type Output = SuperElement<G>;
    fn mul(self, rhs: &SuperElement<G>) -> SuperElement<G> {
        let mut out = SuperElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                if let Some((s, w)) = a.mul(b) {
                    let c = x * y;
                    out.add_term(w, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }
}

impl<G: Generator> Add for SuperElement<G> {
    type Output = SuperElement<G>;
    fn add(mut self, rhs: SuperElement<G>) -> SuperElement<G> {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        self.add_scaled(&rhs, &Scalar::one());
        self
    }
}

impl<G: Generator> Sub for SuperElement<G> {
    type Output = SuperElement<G>;
    fn sub(mut self, rhs: SuperElement<G>) -> SuperElement<G> {
        self.add_scaled(&rhs, &Scalar::from_int(-1));
        self
    }
}

impl<G: Generator> Mul for SuperElement<G> {
    type Output = SuperElement<G>;
    fn mul(self, rhs: SuperElement<G>) -> SuperElement<G> {
        &self * &rhs
    }
}

impl<G: Generator> Neg for SuperElement<G> {
    type Output = SuperElement<G>;
    fn neg(self) -> SuperElement<G> {
        -&self
    }
}
