use std::sync::Mutex;

use rustc_hash::FxHashMap;

use super::context::JetContext;
use crate::error::{Error, Result};
use crate::exact_algebra::{MultiIndex, RationalFunction, Var};

/// A vector field on J^∞E given lazily by its components on x^i and u^α_J.
pub trait JetVectorField: Send + Sync {
    fn context(&self) -> JetContext;
    fn base(&self, i: usize) -> RationalFunction;
    fn fiber(&self, field: usize, idx: &MultiIndex) -> RationalFunction;

    fn component(&self, v: Var) -> Option<RationalFunction> {
        match v {
            Var::X(i) => Some(self.base(i as usize)),
            Var::U { field, idx } => Some(self.fiber(field as usize, &idx)),
            _ => None,
        }
    }

    /// Derivative of a function along the field.
    fn apply(&self, f: &RationalFunction) -> RationalFunction {
        f.derive_along_rational(&|v| self.component(v))
    }
}

/// [V, W] evaluated on one coordinate function.
pub fn commutator_on(v: &dyn JetVectorField, w: &dyn JetVectorField, coordinate: Var) -> RationalFunction {
    let wv = w.component(coordinate).unwrap_or_else(RationalFunction::zero);
    let vw = v.component(coordinate).unwrap_or_else(RationalFunction::zero);
    &v.apply(&wv) - &w.apply(&vw)
}

/// X = f^i ∂/∂x^i + g^α ∂/∂u^α with f independent of the fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectableField {
    ctx: JetContext,
    base: Vec<RationalFunction>,
    vertical: Vec<RationalFunction>,
}

impl ProjectableField {
    pub fn new(ctx: JetContext, base: Vec<RationalFunction>, vertical: Vec<RationalFunction>) -> Result<Self> {
        if base.len() != ctx.n() || vertical.len() != ctx.m() {
            return Err(Error::Precondition(format!(
                "field needs {} base and {} fiber components, got {} and {}",
                ctx.n(),
                ctx.m(),
                base.len(),
                vertical.len()
            )));
        }
        for f in &base {
            if f.vars().iter().any(|v| v.is_jet()) {
                return Err(Error::Precondition(format!("base component {f} depends on the fiber")));
            }
        }
        for g in &vertical {
            if f_has_derivatives(g) {
                return Err(Error::Precondition(format!("fiber component {g} depends on jet coordinates")));
            }
        }
        Ok(ProjectableField { ctx, base, vertical })
    }

    pub fn zero(ctx: JetContext) -> Self {
        ProjectableField {
            ctx,
            base: vec![RationalFunction::zero(); ctx.n()],
            vertical: vec![RationalFunction::zero(); ctx.m()],
        }
    }

    pub fn context(&self) -> JetContext {
        self.ctx
    }

    pub fn base_components(&self) -> &[RationalFunction] {
        &self.base
    }

    pub fn vertical_components(&self) -> &[RationalFunction] {
        &self.vertical
    }

    /// ev X = (g^α − u^α_i f^i) ∂/∂u^α.
    pub fn evolutionary(&self) -> EvolutionaryField {
        let q = (0..self.ctx.m())
            .map(|a| {
                let mut q = self.vertical[a].clone();
                for (i, f) in self.base.iter().enumerate() {
                    q = &q - &(f * &RationalFunction::var(Var::u(a, MultiIndex::unit(i))));
                }
                q
            })
            .collect();
        EvolutionaryField { ctx: self.ctx, characteristic: q }
    }

    /// tot X = f^i D_i.
    pub fn total_part(&self) -> ProlongedField {
        ProlongedField::new(self.ctx, self.base.clone(), vec![RationalFunction::zero(); self.ctx.m()])
    }

    pub fn prolong(&self) -> ProlongedField {
        ProlongedField::new(self.ctx, self.base.clone(), self.evolutionary().characteristic)
    }

    /// (pr(ev X), tot X) with pr X = pr(ev X) + tot X.
    pub fn split(&self) -> (ProlongedField, ProlongedField) {
        (self.evolutionary().prolong(), self.total_part())
    }

    /// Action on functions of (x, u).
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        f.derive_along_rational(&|v| match v {
            Var::X(i) => Some(self.base[i as usize].clone()),
            Var::U { field, idx } if idx.is_empty() => Some(self.vertical[field as usize].clone()),
            _ => None,
        })
    }

    /// Lie bracket on E.
    pub fn bracket(&self, other: &ProjectableField) -> ProjectableField {
        let base = (0..self.ctx.n()).map(|i| &self.apply(&other.base[i]) - &other.apply(&self.base[i])).collect();
        let vertical =
            (0..self.ctx.m()).map(|a| &self.apply(&other.vertical[a]) - &other.apply(&self.vertical[a])).collect();
        ProjectableField { ctx: self.ctx, base, vertical }
    }
}

fn f_has_derivatives(f: &RationalFunction) -> bool {
    f.vars().iter().any(|v| matches!(v, Var::U { idx, .. } if !idx.is_empty()))
}

/// Q^α ∂/∂u^α with Q a jet function.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionaryField {
    ctx: JetContext,
    characteristic: Vec<RationalFunction>,
}

impl EvolutionaryField {
    pub fn new(ctx: JetContext, characteristic: Vec<RationalFunction>) -> Result<Self> {
        if characteristic.len() != ctx.m() {
            return Err(Error::Precondition(format!("need {} components", ctx.m())));
        }
        Ok(EvolutionaryField { ctx, characteristic })
    }

    pub fn characteristic(&self) -> &[RationalFunction] {
        &self.characteristic
    }

    pub fn prolong(&self) -> ProlongedField {
        ProlongedField::new(self.ctx, vec![RationalFunction::zero(); self.ctx.n()], self.characteristic.clone())
    }
}

/// Prolongation with base part f^i and characteristic Q^α: the component on
/// u^α_J is D_J Q^α + f^i u^α_{J+i}. Components are computed on demand.
pub struct ProlongedField {
    ctx: JetContext,
    base: Vec<RationalFunction>,
    characteristic: Vec<RationalFunction>,
    cache: Mutex<FxHashMap<(usize, MultiIndex), RationalFunction>>,
}

impl Clone for ProlongedField {
    fn clone(&self) -> Self {
        ProlongedField::new(self.ctx, self.base.clone(), self.characteristic.clone())
    }
}

impl std::fmt::Debug for ProlongedField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProlongedField").field("base", &self.base).field("characteristic", &self.characteristic).finish()
    }
}

impl ProlongedField {
    pub fn new(ctx: JetContext, base: Vec<RationalFunction>, characteristic: Vec<RationalFunction>) -> Self {
        ProlongedField { ctx, base, characteristic, cache: Mutex::new(FxHashMap::default()) }
    }

    /// The total derivative D_i as a vector field.
    pub fn total(ctx: JetContext, i: usize) -> Self {
        let base = (0..ctx.n()).map(|k| RationalFunction::int((k == i) as i64)).collect();
        Self::new(ctx, base, vec![RationalFunction::zero(); ctx.m()])
    }

    pub fn characteristic(&self) -> &[RationalFunction] {
        &self.characteristic
    }

    /// D_J Q^α, memoized.
    pub fn characteristic_derivative(&self, field: usize, idx: &MultiIndex) -> RationalFunction {
        if idx.is_empty() {
            return self.characteristic[field].clone();
        }
        if let Some(v) = self.cache.lock().expect("cache lock").get(&(field, *idx)) {
            return v.clone();
        }
        let dirs = idx.directions();
        let last = *dirs.last().expect("nonempty");
        let prev = idx.minus(last).expect("direction present");
        let lower = self.characteristic_derivative(field, &prev);
        let v = self.ctx.total_derivative(&lower, last);
        self.cache.lock().expect("cache lock").insert((field, *idx), v.clone());
        v
    }
}

impl JetVectorField for ProlongedField {
    fn context(&self) -> JetContext {
        self.ctx
    }

    fn base(&self, i: usize) -> RationalFunction {
        self.base[i].clone()
    }

    fn fiber(&self, field: usize, idx: &MultiIndex) -> RationalFunction {
        let mut v = self.characteristic_derivative(field, idx);
        for (i, f) in self.base.iter().enumerate() {
            if !f.is_zero() {
                v = &v + &(f * &RationalFunction::var(Var::u(field, idx.plus(i))));
            }
        }
        v
    }
}

/// Sum of two jet vector fields.
pub struct SumField<'a>(pub &'a dyn JetVectorField, pub &'a dyn JetVectorField);

impl JetVectorField for SumField<'_> {
    fn context(&self) -> JetContext {
        self.0.context()
    }

    fn base(&self, i: usize) -> RationalFunction {
        &self.0.base(i) + &self.1.base(i)
    }

    fn fiber(&self, field: usize, idx: &MultiIndex) -> RationalFunction {
        &self.0.fiber(field, idx) + &self.1.fiber(field, idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(v: Var) -> RationalFunction {
        RationalFunction::var(v)
    }

    #[test]
    fn translation_prolongs_trivially() {
        let ctx = JetContext::new(1, 1).unwrap();
        let x = ProjectableField::new(ctx, vec![RationalFunction::one()], vec![RationalFunction::zero()]).unwrap();
        let pr = x.prolong();
        for k in 0..4 {
            let idx = MultiIndex::from_directions(&vec![0; k]);
            assert!(pr.fiber(0, &idx).is_zero());
        }
        let ev = x.evolutionary();
        assert_eq!(ev.characteristic()[0], -rf(Var::u(0, MultiIndex::unit(0))));
    }

    #[test]
    fn scaling_prolongs_to_scaling() {
        let ctx = JetContext::new(2, 1).unwrap();
        let x = ProjectableField::new(ctx, vec![RationalFunction::zero(); 2], vec![rf(Var::u(0, MultiIndex::EMPTY))]).unwrap();
        let pr = x.prolong();
        for idx in MultiIndex::all_up_to(2, 3) {
            assert_eq!(pr.fiber(0, &idx), rf(Var::u(0, idx)));
        }
    }

    #[test]
    fn projectability_is_checked() {
        let ctx = JetContext::new(1, 1).unwrap();
        let u = rf(Var::u(0, MultiIndex::EMPTY));
        assert!(ProjectableField::new(ctx, vec![u.clone()], vec![RationalFunction::zero()]).is_err());
        let ux = rf(Var::u(0, MultiIndex::unit(0)));
        assert!(ProjectableField::new(ctx, vec![RationalFunction::zero()], vec![ux]).is_err());
    }

    #[test]
    fn euler_scaling_evolutionary_part() {
        let ctx = JetContext::new(1, 1).unwrap();
        let x = rf(Var::x(0));
        let u = rf(Var::u(0, MultiIndex::EMPTY));
        let ux = rf(Var::u(0, MultiIndex::unit(0)));
        let f = ProjectableField::new(ctx, vec![x.clone()], vec![u.clone()]).unwrap();
        assert_eq!(f.evolutionary().characteristic()[0], &u - &(&x * &ux));
    }
}
