use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::scalar::Scalar;
use super::var::Var;

/// Power product of variables, sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|p| p.0.cmp(&v))
            .map_or(0, |i| self.0[i].1)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes one power of `v`, returning the old exponent.
    fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|p| p.0.cmp(&v)).ok()?;
        let e = self.0[i].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    fn without(&self, v: Var) -> (u32, Monomial) {
        match self.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let mut out = self.0.clone();
                let (_, e) = out.remove(i);
                (e, Monomial(out))
            }
            Err(_) => (0, self.clone()),
        }
    }

    pub fn fmt_with(&self, f: &mut dyn fmt::Write, name: &dyn Fn(Var) -> String) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            f.write_str(&name(*v))?;
            if *e > 1 {
                write!(f, "**{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded reverse-lexicographic order; smaller `Var` values rank as "earlier" variables.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let va = if i > 0 { Some(a[i - 1]) } else { None };
            let vb = if j > 0 { Some(b[j - 1]) } else { None };
            match (va, vb) {
                (Some((x, e)), Some((y, f))) => match x.cmp(&y) {
                    Ordering::Equal => {
                        if e != f {
                            return f.cmp(&e);
                        }
                        i -= 1;
                        j -= 1;
                    }
                    // `x` is the later variable and only `self` has it.
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                },
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.fmt_with(f, &|v| v.to_string())
    }
}

/// Multivariate polynomial with exact rational coefficients.
#[derive(Clone, Default)]
pub struct MultiPoly {
    terms: FxHashMap<Monomial, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        MultiPoly::constant(Scalar::from_int(c))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Monomial::var(v), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = FxHashMap::default();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending graded reverse-lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| a.0.cmp(b.0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                s.insert(*v);
            }
        }
        s
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.mul(mono), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c * &Scalar::from_int(e as i64));
            }
        }
        out
    }

    /// Applies the derivation Σ_v coeff(v) ∂/∂v; `coeff` returns `None` for zero.
    pub fn derive_along(&self, coeff: &dyn Fn(Var) -> Option<MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for v in self.vars() {
            if let Some(c) = coeff(v) {
                if !c.is_zero() {
                    out += &(&c * &self.derivative(v));
                }
            }
        }
        out
    }

    /// Substitutes polynomials for variables (`None` keeps the variable).
    pub fn substitute(&self, sub: &dyn Fn(Var) -> Option<MultiPoly>) -> MultiPoly {
        let mut cache: FxHashMap<Var, Option<MultiPoly>> = FxHashMap::default();
        let mut powers: FxHashMap<(Var, u32), MultiPoly> = FxHashMap::default();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = MultiPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                let s = cache.entry(v).or_insert_with(|| sub(v)).clone();
                match s {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        acc = &acc * &pw;
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if !acc.is_zero() {
                let mono = Monomial::from_pairs(kept);
                out += &acc.mul_monomial(&mono, &Scalar::one());
            }
        }
        out
    }

    /// Substitutes scalars for some variables.
    pub fn evaluate(&self, val: &dyn Fn(Var) -> Option<Scalar>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.factors() {
                match val(v) {
                    Some(s) => {
                        coeff *= &s.pow(e);
                        if coeff.is_zero() {
                            break;
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            if !coeff.is_zero() {
                out.add_term(Monomial::from_pairs(kept), coeff);
            }
        }
        out
    }

    /// Splits by powers of `v`: returns coefficient polynomials indexed by exponent.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, MultiPoly::zero());
            }
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// ∫₀¹ self dv.
    pub fn integrate_unit(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out.add_term(rest, c / &Scalar::from_int(e as i64 + 1));
        }
        out
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Scalar {
        let mut num: Option<Scalar> = None;
        let mut den = Scalar::one();
        for c in self.terms.values() {
            let n = Scalar::from_bigint(c.numer());
            num = Some(match num {
                None => n.abs(),
                Some(g) => g.gcd(&n),
            });
            den = den.lcm_with_denom(c);
        }
        match num {
            None => Scalar::one(),
            Some(g) => &g / &den,
        }
    }

    /// Scales so the leading (grevlex) coefficient is 1; returns the removed factor.
    pub fn make_monic(&self) -> (Scalar, MultiPoly) {
        match self.leading_term() {
            None => (Scalar::one(), MultiPoly::zero()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.recip();
                (c, self.scale(&inv))
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(&lm)?;
            let qc = c * &lc_inv;
            rem -= &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    pub fn fmt_with(&self, f: &mut dyn fmt::Write, name: &dyn Fn(Var) -> String) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} * ")?;
                }
                m.fmt_with(f, name)?;
            }
        }
        Ok(())
    }

    pub fn to_string_with(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut s = String::new();
        self.fmt_with(&mut s, name).expect("string write");
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| v.to_string())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        out += small;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = MultiPoly::zero();
        out.terms.reserve(self.len() * rhs.len() / 2);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(MultiPoly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::var::MultiIndex;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }

    #[test]
    fn grevlex_order() {
        // x1 > x2 > x3; grevlex: x1*x3 < x2^2 (same degree, smaller power of last var wins).
        let a = Monomial::from_pairs(vec![(Var::x(0), 1), (Var::x(2), 1)]);
        let b = Monomial::from_pairs(vec![(Var::x(1), 2)]);
        assert!(b > a);
        let c = Monomial::from_pairs(vec![(Var::x(0), 2)]);
        assert!(c > b);
        assert!(Monomial::var(Var::x(2)) < c);
    }

    #[test]
    fn printing_is_canonical() {
        let p = &(&x(0) * &x(0)).scale(&Scalar::new(1, 2)) - &x(1);
        assert_eq!(p.to_string(), "1/2 * x1**2 - x2");
        assert_eq!((-&x(0)).to_string(), "-x1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let f = &x(0) + &x(1);
        let g = &x(0) - &MultiPoly::int(3);
        let p = &f * &g;
        assert_eq!(p.div_exact(&f), Some(g.clone()));
        assert_eq!((&p + &MultiPoly::one()).div_exact(&f), None);
    }

    #[test]
    fn derivation_along_field() {
        let u = MultiPoly::var(Var::u(0, MultiIndex::EMPTY));
        let p = &u * &x(0);
        let d = p.derive_along(&|v| match v {
            Var::X(0) => Some(MultiPoly::one()),
            _ => None,
        });
        assert_eq!(d, u);
    }

    #[test]
    fn content_and_monic() {
        let p = &x(0).scale(&Scalar::new(4, 3)) + &MultiPoly::constant(Scalar::new(2, 1));
        assert_eq!(p.content(), Scalar::new(2, 3));
        let (c, m) = p.make_monic();
        assert_eq!(c, Scalar::new(4, 3));
        assert_eq!(m.to_string(), "x1 + 3/2");
    }
}
