use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::MultiPoly;
use super::scalar::Scalar;
use super::var::Var;

/// Element of the fraction field ℚ(vars).
///
/// The denominator is kept as a product of monic factors with multiplicities.
/// Factors that compare equal are merged, and a factor dividing the numerator is
/// cancelled by [`RationalFunction::reduce`]. In this workbench the only
/// denominators are metric determinants, so structural merging keeps sizes
/// bounded without a general multivariate GCD.
#[derive(Clone, Default)]
pub struct RationalFunction {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("division by the zero polynomial")]
    ZeroDenominator,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction::default()
    }

    pub fn one() -> Self {
        MultiPoly::one().into()
    }

    pub fn constant(c: Scalar) -> Self {
        MultiPoly::constant(c).into()
    }

    pub fn int(c: i64) -> Self {
        MultiPoly::int(c).into()
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::var(v).into()
    }

    /// `num / den`, with `den` normalized to a monic factor.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        let mut out = RationalFunction { num, den: Vec::new() };
        out.divide_by_factor(&den, 1);
        out.reduce();
        Ok(out)
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// Denominator factors (monic) with multiplicities.
    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    /// Expanded denominator; leading coefficient 1.
    pub fn denominator(&self) -> MultiPoly {
        self.den
            .iter()
            .fold(MultiPoly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.iter().any(|(f, _)| f.depends_on(v))
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut s = self.num.vars();
        for (f, _) in &self.den {
            s.extend(f.vars());
        }
        s
    }

    /// Divides by `p^e`, normalizing `p` to a monic factor.
    fn divide_by_factor(&mut self, p: &MultiPoly, e: u32) {
        if e == 0 {
            return;
        }
        let (lc, monic) = p.make_monic();
        if let Some(c) = monic.as_constant() {
            debug_assert!(c.is_one());
            self.num = self.num.scale(&lc.recip().pow(e));
            return;
        }
        self.num = self.num.scale(&lc.recip().pow(e));
        match self.den.iter_mut().find(|(f, _)| *f == monic) {
            Some(slot) => slot.1 += e,
            None => self.den.push((monic, e)),
        }
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for slot in self.den.iter_mut() {
            while slot.1 > 0 {
                match self.num.div_exact(&slot.0) {
                    Some(q) => {
                        self.num = q;
                        slot.1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|s| s.1 > 0);
    }

    /// Applies `f` to the numerator, keeping the denominator factors.
    pub fn map_numerator(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        RationalFunction { num: f(&self.num), den: self.den.clone() }.reduced()
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    /// Brings `a` and `b` over a common denominator (max multiplicities).
    fn common(a: &Self, b: &Self) -> (MultiPoly, MultiPoly, Vec<(MultiPoly, u32)>) {
        if a.den.is_empty() && b.den.is_empty() {
            return (a.num.clone(), b.num.clone(), Vec::new());
        }
        let mut den = a.den.clone();
        for (f, e) in &b.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => den.push((f.clone(), *e)),
            }
        }
        let lift = |x: &Self| -> MultiPoly {
            let mut n = x.num.clone();
            for (f, e) in &den {
                let have = x.den.iter().find(|(g, _)| g == f).map_or(0, |s| s.1);
                if *e > have {
                    n = &n * &f.pow(e - have);
                }
            }
            n
        };
        (lift(a), lift(b), den)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        let num = &self.num * p;
        if num.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num, den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.num.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        let mut out = RationalFunction { num: self.denominator(), den: Vec::new() };
        out.divide_by_factor(&self.num, 1);
        out.reduce();
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RationalFunction::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, v: Var) -> Self {
        self.derive_along(&|w| (w == v).then(MultiPoly::one))
    }

    /// Applies Σ_v coeff(v) ∂/∂v with polynomial coefficients.
    pub fn derive_along(&self, coeff: &dyn Fn(Var) -> Option<MultiPoly>) -> Self {
        let dn = self.num.derive_along(coeff);
        let moving: Vec<(usize, MultiPoly)> = self
            .den
            .iter()
            .enumerate()
            .filter_map(|(i, (f, _))| {
                let df = f.derive_along(coeff);
                (!df.is_zero()).then_some((i, df))
            })
            .collect();
        if moving.is_empty() {
            return RationalFunction { num: dn, den: self.den.clone() }.normalized_zero();
        }
        // N/Πf^e differentiates to [N' Πf − N Σ e f' Π_{j≠i} f] / (Π f^{e+1}) over moving f.
        let mut num = dn;
        for (_, f) in moving.iter().map(|(i, _)| (i, &self.den[*i].0)) {
            num = &num * f;
        }
        for (k, (i, df)) in moving.iter().enumerate() {
            let mut t = self.num.scale(&Scalar::from_int(self.den[*i].1 as i64));
            t = &t * df;
            for (k2, (j, _)) in moving.iter().enumerate() {
                if k2 != k {
                    t = &t * &self.den[*j].0;
                }
            }
            num -= &t;
        }
        let mut den = self.den.clone();
        for (i, _) in &moving {
            den[*i].1 += 1;
        }
        RationalFunction { num, den }.normalized_zero()
    }

    /// Applies Σ_v coeff(v) ∂/∂v with rational coefficients.
    pub fn derive_along_rational(&self, coeff: &dyn Fn(Var) -> Option<RationalFunction>) -> Self {
        let mut out = RationalFunction::zero();
        for v in self.vars() {
            if let Some(c) = coeff(v) {
                if !c.is_zero() {
                    out = &out + &(&c * &self.partial(v));
                }
            }
        }
        out
    }

    fn normalized_zero(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    /// Substitutes polynomials for variables; `None` keeps the variable.
    pub fn substitute(&self, sub: &dyn Fn(Var) -> Option<MultiPoly>) -> Result<Self, RationalError> {
        let mut out = RationalFunction { num: self.num.substitute(sub), den: Vec::new() };
        for (f, e) in &self.den {
            let g = f.substitute(sub);
            if g.is_zero() {
                return Err(RationalError::ZeroDenominator);
            }
            out.divide_by_factor(&g, *e);
        }
        Ok(out.normalized_zero())
    }

    /// Substitutes scalars for variables; `None` keeps the variable.
    pub fn evaluate(&self, val: &dyn Fn(Var) -> Option<Scalar>) -> Result<Self, RationalError> {
        let mut out = RationalFunction { num: self.num.evaluate(val), den: Vec::new() };
        for (f, e) in &self.den {
            let g = f.evaluate(val);
            if g.is_zero() {
                return Err(RationalError::ZeroDenominator);
            }
            out.divide_by_factor(&g, *e);
        }
        Ok(out.normalized_zero())
    }

    /// ∫₀¹ self dv; the denominator must not involve `v`.
    pub fn integrate_unit(&self, v: Var) -> Option<Self> {
        if self.den.iter().any(|(f, _)| f.depends_on(v)) {
            return None;
        }
        Some(RationalFunction { num: self.num.integrate_unit(v), den: self.den.clone() }.normalized_zero())
    }

    pub fn fmt_with(&self, f: &mut dyn fmt::Write, name: &dyn Fn(Var) -> String) -> fmt::Result {
        if self.den.is_empty() {
            return self.num.fmt_with(f, name);
        }
        f.write_str("(")?;
        self.num.fmt_with(f, name)?;
        f.write_str(") / (")?;
        for (k, (p, e)) in self.den.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            f.write_str("(")?;
            p.fmt_with(f, name)?;
            f.write_str(")")?;
            if *e > 1 {
                write!(f, "**{e}")?;
            }
        }
        f.write_str(")")
    }

    pub fn to_string_with(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut s = String::new();
        self.fmt_with(&mut s, name).expect("string write");
        s
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_empty() && other.den.is_empty() {
            return self.num == other.num;
        }
        (self - other).is_zero()
    }
}

impl Eq for RationalFunction {}

impl From<MultiPoly> for RationalFunction {
    fn from(num: MultiPoly) -> Self {
        RationalFunction { num, den: Vec::new() }
    }
}

impl From<Scalar> for RationalFunction {
    fn from(c: Scalar) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| v.to_string())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b, den) = RationalFunction::common(self, rhs);
        RationalFunction { num: &a + &b, den }.normalized_zero()
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, den) = RationalFunction::common(self, rhs);
        RationalFunction { num: &a - &b, den }.normalized_zero()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &rhs.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 += e,
                None => den.push((f.clone(), *e)),
            }
        }
        RationalFunction { num, den }
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = Result<RationalFunction, RationalError>;
    fn div(self, rhs: &RationalFunction) -> Self::Output {
        Ok(self * &rhs.recip()?)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }

    #[test]
    fn cancels_common_factor() {
        let f = &x(0) + &x(1);
        let r = RationalFunction::new(&f * &x(0), f.scale(&Scalar::from_int(2))).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, RationalFunction::from(x(0).scale(&Scalar::new(1, 2))));
    }

    #[test]
    fn denominator_is_monic() {
        let r = RationalFunction::new(MultiPoly::one(), x(0).scale(&Scalar::from_int(3))).unwrap();
        assert_eq!(r.denominator(), x(0));
        assert_eq!(r.numerator(), &MultiPoly::constant(Scalar::new(1, 3)));
    }

    #[test]
    fn quotient_rule() {
        // d/dx1 (1/x1) = -1/x1^2
        let r = RationalFunction::new(MultiPoly::one(), x(0)).unwrap();
        let d = r.partial(Var::x(0));
        let expect = RationalFunction::new(MultiPoly::int(-1), &x(0) * &x(0)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn sums_share_denominators() {
        let r = RationalFunction::new(x(1), x(0)).unwrap();
        let s = &r + &r;
        assert_eq!(s.denominator_factors().len(), 1);
        assert_eq!(s.denominator_factors()[0].1, 1);
        assert!((&s - &r.scale(&Scalar::from_int(2))).is_zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(MultiPoly::one(), MultiPoly::zero()).unwrap_err(),
            RationalError::ZeroDenominator
        );
    }
}
