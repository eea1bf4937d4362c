use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::context::JetContext;
use super::field::JetVectorField;
use crate::error::{Error, Result};
use crate::exact_algebra::{MultiIndex, MultiPoly, RationalFunction, Scalar, Var};
use crate::superalgebra::{Generator, Parity, SuperWord};

/// Contact-basis 1-forms: θ^α_J = du^α_J − u^α_{J+i} dx^i and dx^i.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormGen {
    Theta { field: u8, idx: MultiIndex },
    Dx(u8),
}

impl FormGen {
    pub fn theta(field: usize, idx: MultiIndex) -> Self {
        FormGen::Theta { field: field as u8, idx }
    }

    pub fn dx(i: usize) -> Self {
        FormGen::Dx(i as u8)
    }

    pub fn is_contact(&self) -> bool {
        matches!(self, FormGen::Theta { .. })
    }

    fn key(&self) -> (u8, u8, MultiIndex) {
        match *self {
            FormGen::Theta { field, idx } => (0, field, idx),
            FormGen::Dx(i) => (1, i, MultiIndex::EMPTY),
        }
    }

    pub fn name_with(&self, ctx: &JetContext) -> String {
        match *self {
            FormGen::Theta { field, idx } => format!("th({})", ctx.var_name(Var::u(field as usize, idx))),
            FormGen::Dx(i) => format!("d(x{})", i + 1),
        }
    }
}

impl Ord for FormGen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for FormGen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FormGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FormGen::Theta { field, idx } => write!(f, "th({})", Var::u(field as usize, idx)),
            FormGen::Dx(i) => write!(f, "d(x{})", i + 1),
        }
    }
}

impl Generator for FormGen {
    fn parity(&self) -> Parity {
        Parity::Odd
    }

    fn degree(&self) -> u32 {
        1
    }
}

pub type FormWord = SuperWord<FormGen>;

/// (horizontal, contact) degree of a word.
pub fn word_bidegree(w: &FormWord) -> (u32, u32) {
    let q = w.factors().iter().filter(|(g, _)| g.is_contact()).count() as u32;
    (w.length() - q, q)
}

/// Differential form on J^∞E in the contact basis with rational-function coefficients.
#[derive(Clone)]
pub struct JetForm {
    ctx: JetContext,
    terms: FxHashMap<FormWord, RationalFunction>,
}

impl PartialEq for JetForm {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl JetForm {
    pub fn zero(ctx: JetContext) -> Self {
        JetForm { ctx, terms: FxHashMap::default() }
    }

    pub fn function(ctx: JetContext, f: RationalFunction) -> Self {
        Self::term(ctx, FormWord::one(), f)
    }

    pub fn constant(ctx: JetContext, c: Scalar) -> Self {
        Self::function(ctx, RationalFunction::constant(c))
    }

    pub fn term(ctx: JetContext, w: FormWord, f: RationalFunction) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(w, f);
        out
    }

    pub fn generator(ctx: JetContext, g: FormGen) -> Self {
        Self::term(ctx, FormWord::generator(g), RationalFunction::one())
    }

    pub fn dx(ctx: JetContext, i: usize) -> Self {
        Self::generator(ctx, FormGen::dx(i))
    }

    pub fn theta(ctx: JetContext, field: usize, idx: MultiIndex) -> Self {
        Self::generator(ctx, FormGen::theta(field, idx))
    }

    /// du^α_J = θ^α_J + u^α_{J+i} dx^i.
    pub fn du(ctx: JetContext, field: usize, idx: MultiIndex) -> Self {
        let mut out = Self::theta(ctx, field, idx);
        for i in 0..ctx.n() {
            out.add_term(FormWord::generator(FormGen::dx(i)), RationalFunction::var(Var::u(field, idx.plus(i))));
        }
        out
    }

    /// Differential of a coordinate function.
    pub fn d_var(ctx: JetContext, v: Var) -> Self {
        match v {
            Var::X(i) => Self::dx(ctx, i as usize),
            Var::U { field, idx } => Self::du(ctx, field as usize, idx),
            _ => Self::zero(ctx),
        }
    }

    /// Volume form dx^1 ∧ … ∧ dx^n.
    pub fn volume(ctx: JetContext) -> Self {
        let gens: Vec<FormGen> = (0..ctx.n()).map(FormGen::dx).collect();
        let (s, w) = FormWord::from_product(&gens).expect("distinct dx");
        Self::term(ctx, w, RationalFunction::int(s as i64))
    }

    pub fn context(&self) -> JetContext {
        self.ctx
    }

    pub fn add_term(&mut self, w: FormWord, f: RationalFunction) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(c) => {
                let sum = &*c + &f;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(w, f);
            }
        }
    }

    pub fn add_assign(&mut self, other: &JetForm) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
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

    pub fn terms(&self) -> impl Iterator<Item = (&FormWord, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<(&FormWord, &RationalFunction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coefficient(&self, w: &FormWord) -> RationalFunction {
        self.terms.get(w).cloned().unwrap_or_else(RationalFunction::zero)
    }

    /// Coefficient of a 0-form, or `None` if the form has positive-degree terms.
    pub fn as_function(&self) -> Option<RationalFunction> {
        if self.terms.keys().all(|w| w.is_one()) {
            Some(self.coefficient(&FormWord::one()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coefficients_infallible(|f| f.scale(c))
    }

    pub fn mul_function(&self, f: &RationalFunction) -> Self {
        self.map_coefficients_infallible(|c| c * f)
    }

    fn map_coefficients_infallible(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&RationalFunction) -> Result<RationalFunction>) -> Result<Self> {
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Substitutes scalar values for variables in every coefficient.
    pub fn evaluate(&self, val: &dyn Fn(Var) -> Option<Scalar>) -> Result<Self> {
        self.map_coefficients(|c| Ok(c.evaluate(val)?))
    }

    pub fn wedge(&self, other: &JetForm) -> JetForm {
        let mut out = Self::zero(self.ctx);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if let Some((s, w)) = w1.mul(w2) {
                    let c = c1 * c2;
                    out.add_term(w, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> std::collections::BTreeSet<u32> {
        self.terms.keys().map(|w| w.length()).collect()
    }

    pub fn bidegrees(&self) -> std::collections::BTreeSet<(u32, u32)> {
        self.terms.keys().map(word_bidegree).collect()
    }

    /// Fails unless every term has bidegree (p, q).
    pub fn require_bidegree(&self, p: u32, q: u32) -> Result<()> {
        for w in self.terms.keys() {
            let b = word_bidegree(w);
            if b != (p, q) {
                return Err(Error::Bidegree { expected: (p, q), found: b });
            }
        }
        Ok(())
    }

    pub fn component(&self, p: u32, q: u32) -> JetForm {
        self.filter(|w| word_bidegree(w) == (p, q))
    }

    pub fn degree_component(&self, k: u32) -> JetForm {
        self.filter(|w| w.length() == k)
    }

    pub fn filter(&self, keep: impl Fn(&FormWord) -> bool) -> JetForm {
        let terms = self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect();
        JetForm { ctx: self.ctx, terms }
    }

    pub fn bigrade(&self) -> BTreeMap<(u32, u32), JetForm> {
        let mut out: BTreeMap<(u32, u32), JetForm> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(word_bidegree(w)).or_insert_with(|| JetForm::zero(self.ctx)).add_term(w.clone(), c.clone());
        }
        out
    }

    /// Applies a derivation given on generators to every word, keeping coefficients.
    /// `odd` selects the Koszul sign for passing the operator through the prefix.
    fn derive_words(&self, odd: bool, on_gen: &dyn Fn(FormGen) -> JetForm) -> JetForm {
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            for k in 0..w.factors().len() {
                let (prefix, g, _, rest) = w.split_at_factor(k);
                let image = on_gen(g);
                if image.is_zero() {
                    continue;
                }
                let sign = if odd && k % 2 == 1 { -1 } else { 1 };
                for (hw, hc) in &image.terms {
                    let Some((s1, w1)) = prefix.mul(hw) else { continue };
                    let Some((s2, w2)) = w1.mul(&rest) else { continue };
                    let coeff = c * hc;
                    out.add_term(w2, if sign * s1 * s2 < 0 { -coeff } else { coeff });
                }
            }
        }
        out
    }

    /// Horizontal differential of a function: Σ D_i f dx^i.
    pub fn d_h_function(ctx: JetContext, f: &RationalFunction) -> JetForm {
        let mut out = Self::zero(ctx);
        for i in 0..ctx.n() {
            out.add_term(FormWord::generator(FormGen::dx(i)), ctx.total_derivative(f, i));
        }
        out
    }

    /// Vertical differential of a function: Σ ∂f/∂u^α_J θ^α_J.
    pub fn d_v_function(ctx: JetContext, f: &RationalFunction) -> JetForm {
        let mut out = Self::zero(ctx);
        for v in f.vars() {
            if let Var::U { field, idx } = v {
                out.add_term(FormWord::generator(FormGen::theta(field as usize, idx)), f.partial(v));
            }
        }
        out
    }

    pub fn d_function(ctx: JetContext, f: &RationalFunction) -> JetForm {
        Self::d_h_function(ctx, f) + Self::d_v_function(ctx, f)
    }

    fn d_theta(&self, g: FormGen) -> JetForm {
        match g {
            FormGen::Theta { field, idx } => {
                let mut out = Self::zero(self.ctx);
                for i in 0..self.ctx.n() {
                    let (s, w) = FormWord::from_product(&[FormGen::dx(i), FormGen::theta(field as usize, idx.plus(i))])
                        .expect("distinct generators");
                    out.add_term(w, RationalFunction::int(s as i64));
                }
                out
            }
            FormGen::Dx(_) => Self::zero(self.ctx),
        }
    }

    fn coefficient_part(&self, op: impl Fn(&RationalFunction) -> JetForm) -> JetForm {
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            let dc = op(c);
            out.add_assign(&dc.wedge(&Self::term(self.ctx, w.clone(), RationalFunction::one())));
        }
        out
    }

    /// Horizontal differential d_H.
    pub fn d_h(&self) -> JetForm {
        let ctx = self.ctx;
        let mut out = self.coefficient_part(|c| Self::d_h_function(ctx, c));
        out.add_assign(&self.derive_words(true, &|g| self.d_theta(g)));
        out
    }

    /// Vertical differential d_V.
    pub fn d_v(&self) -> JetForm {
        let ctx = self.ctx;
        self.coefficient_part(|c| Self::d_v_function(ctx, c))
    }

    /// Full exterior derivative d = d_H + d_V.
    pub fn d(&self) -> JetForm {
        self.d_h() + self.d_v()
    }

    /// Interior product with a vector field on jets (odd derivation).
    pub fn interior(&self, field: &dyn JetVectorField) -> JetForm {
        let ctx = self.ctx;
        self.derive_words(true, &|g| {
            let f = match g {
                FormGen::Dx(i) => field.base(i as usize),
                FormGen::Theta { field: a, idx } => {
                    let mut v = field.fiber(a as usize, &idx);
                    for i in 0..ctx.n() {
                        let bi = field.base(i);
                        if !bi.is_zero() {
                            v = &v - &(&bi * &RationalFunction::var(Var::u(a as usize, idx.plus(i))));
                        }
                    }
                    v
                }
            };
            Self::function(ctx, f)
        })
    }

    /// Interior product with ∂/∂u^α_J in the contact basis.
    pub fn contract_vertical(&self, field: usize, idx: MultiIndex) -> JetForm {
        let target = FormGen::theta(field, idx);
        let ctx = self.ctx;
        self.derive_words(true, &|g| {
            if g == target {
                Self::constant(ctx, Scalar::one())
            } else {
                Self::zero(ctx)
            }
        })
    }

    /// Lie derivative along a vector field, computed generator-wise:
    /// L f = V(f), L dx^i = dV^i, L θ_J = dV_J − V_{J+i} dx^i − u_{J+i} dV^i.
    pub fn lie_derivative(&self, field: &dyn JetVectorField) -> JetForm {
        let ctx = self.ctx;
        let mut out = Self::zero(ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), field.apply(c));
        }
        let on_gen = |g: FormGen| match g {
            FormGen::Dx(i) => Self::d_function(ctx, &field.base(i as usize)),
            FormGen::Theta { field: a, idx } => {
                let a = a as usize;
                let mut r = Self::d_function(ctx, &field.fiber(a, &idx));
                for i in 0..ctx.n() {
                    let up = Var::u(a, idx.plus(i));
                    r = r - Self::term(ctx, FormWord::generator(FormGen::dx(i)), field.fiber(a, &idx.plus(i)));
                    let dvi = Self::d_function(ctx, &field.base(i));
                    r = r - dvi.mul_function(&RationalFunction::var(up));
                }
                r
            }
        };
        out.add_assign(&self.derive_words(false, &on_gen));
        out
    }

    /// Lie derivative along the total derivative D_i: coefficients by D_i,
    /// θ_J ↦ θ_{J+i}, dx ↦ 0.
    pub fn total_derivative(&self, i: usize) -> JetForm {
        let ctx = self.ctx;
        let mut out = Self::zero(ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), ctx.total_derivative(c, i));
        }
        out.add_assign(&self.derive_words(false, &|g| match g {
            FormGen::Theta { field, idx } => Self::theta(ctx, field as usize, idx.plus(i)),
            FormGen::Dx(_) => Self::zero(ctx),
        }));
        out
    }

    /// All θ^α_J occurring in the form.
    pub fn contact_generators(&self) -> Vec<(usize, MultiIndex)> {
        let mut set = std::collections::BTreeSet::new();
        for w in self.terms.keys() {
            for (g, _) in w.factors() {
                if let FormGen::Theta { field, idx } = g {
                    set.insert((*field as usize, *idx));
                }
            }
        }
        set.into_iter().collect()
    }

    /// Pullback along the prolongation of a section u^α = s^α(x): contact forms
    /// vanish and u^α_J becomes ∂_J s^α.
    pub fn pullback(&self, section: &[MultiPoly]) -> Result<JetForm> {
        if section.len() != self.ctx.m() {
            return Err(Error::Precondition(format!("section needs {} components", self.ctx.m())));
        }
        let sub = |v: Var| match v {
            Var::U { field, idx } => {
                let mut p = section[field as usize].clone();
                for i in idx.directions() {
                    p = p.derivative(Var::x(i));
                }
                Some(p)
            }
            _ => None,
        };
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            if w.factors().iter().all(|(g, _)| !g.is_contact()) {
                out.add_term(w.clone(), c.substitute(&sub)?);
            }
        }
        Ok(out)
    }

    /// Highest jet order among coefficients and contact generators.
    pub fn jet_order(&self) -> u32 {
        let mut k = 0;
        for (w, c) in &self.terms {
            k = k.max(self.ctx.jet_order(c));
            for (g, _) in w.factors() {
                if let FormGen::Theta { idx, .. } = g {
                    k = k.max(idx.order());
                }
            }
        }
        k
    }

    /// Canonical text: words in canonical order, coefficients expanded into monomials.
    pub fn fmt_with(&self, f: &mut dyn fmt::Write, name: &dyn Fn(Var) -> String) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in terms {
            let word = if w.is_one() {
                None
            } else {
                Some(w.factors().iter().map(|(g, _)| g.name_with(&self.ctx)).collect::<Vec<_>>().join(" ^ "))
            };
            let mut pieces: Vec<(bool, String)> = Vec::new();
            match c.as_polynomial() {
                Some(p) => {
                    for (m, s) in p.sorted_terms() {
                        let mut body = String::new();
                        let mag = s.abs();
                        let mono = if m.is_one() {
                            None
                        } else {
                            let mut t = String::new();
                            m.fmt_with(&mut t, name)?;
                            Some(t)
                        };
                        let parts: Vec<String> = [
                            (!mag.is_one() || (mono.is_none() && word.is_none())).then(|| mag.to_string()),
                            mono,
                            word.clone(),
                        ]
                        .into_iter()
                        .flatten()
                        .collect();
                        if parts.is_empty() {
                            body.push('1');
                        } else {
                            body.push_str(&parts.join(" * "));
                        }
                        pieces.push((s.is_negative(), body));
                    }
                }
                None => {
                    let mut t = String::new();
                    c.fmt_with(&mut t, name)?;
                    if let Some(wd) = &word {
                        t.push_str(" * ");
                        t.push_str(wd);
                    }
                    pieces.push((false, t));
                }
            }
            for (neg, body) in pieces {
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                    first = false;
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                f.write_str(&body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for JetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.ctx;
        self.fmt_with(f, &|v| ctx.var_name(v))
    }
}

impl fmt::Debug for JetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&JetForm> for &JetForm {
    type Output = JetForm;
    fn add(self, rhs: &JetForm) -> JetForm {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&JetForm> for &JetForm {
    type Output = JetForm;
    fn sub(self, rhs: &JetForm) -> JetForm {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &JetForm {
    type Output = JetForm;
    fn neg(self) -> JetForm {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&JetForm> for &JetForm {
    type Output = JetForm;
    fn mul(self, rhs: &JetForm) -> JetForm {
        self.wedge(rhs)
    }
}

impl Add for JetForm {
    type Output = JetForm;
    fn add(mut self, rhs: JetForm) -> JetForm {
        self.add_assign(&rhs);
        self
    }
}

impl Sub for JetForm {
    type Output = JetForm;
    fn sub(self, rhs: JetForm) -> JetForm {
        &self - &rhs
    }
}

impl Neg for JetForm {
    type Output = JetForm;
    fn neg(self) -> JetForm {
        -&self
    }
}

impl Mul for JetForm {
    type Output = JetForm;
    fn mul(self, rhs: JetForm) -> JetForm {
        self.wedge(&rhs)
    }
}
