use super::context::JetContext;
use super::field::{JetVectorField, ProjectableField};
use super::form::JetForm;
use crate::error::{Error, Result};
use crate::exact_algebra::{RationalFunction, Scalar};

fn only_bidegree(alpha: &JetForm) -> Option<(u32, u32)> {
    let b = alpha.bidegrees();
    (b.len() == 1).then(|| *b.iter().next().expect("one element"))
}

/// Interior Euler operator on Ω^{n,k}, k ≥ 1:
/// I(ω) = (1/k) θ^α ∧ Σ_J (−D)_J (∂/∂u^α_J ⌟ ω).
pub fn interior_euler(omega: &JetForm) -> Result<JetForm> {
    let ctx = omega.context();
    let n = ctx.n() as u32;
    if omega.is_zero() {
        return Ok(omega.clone());
    }
    let (p, k) = only_bidegree(omega).ok_or_else(|| {
        let found = *omega.bidegrees().iter().next().expect("nonzero");
        Error::Bidegree { expected: (n, found.1.max(1)), found }
    })?;
    if p != n || k == 0 {
        return Err(Error::Bidegree { expected: (n, k.max(1)), found: (p, k) });
    }
    let mut per_field: Vec<JetForm> = vec![JetForm::zero(ctx); ctx.m()];
    for (field, idx) in omega.contact_generators() {
        let mut eta = omega.contract_vertical(field, idx);
        for dir in idx.directions() {
            eta = -eta.total_derivative(dir);
        }
        per_field[field].add_assign(&eta);
    }
    let mut out = JetForm::zero(ctx);
    for (field, eta) in per_field.iter().enumerate() {
        if !eta.is_zero() {
            out.add_assign(&JetForm::theta(ctx, field, crate::exact_algebra::MultiIndex::EMPTY).wedge(eta));
        }
    }
    Ok(out.scale(&Scalar::new(1, k as i64)))
}

/// Euler-Lagrange source form δ_V λ = I(d_V λ) of a Lagrangian λ ∈ Ω^{n,0}.
pub fn euler_lagrange(lagrangian: &JetForm) -> Result<JetForm> {
    let n = lagrangian.context().n() as u32;
    lagrangian.require_bidegree(n, 0)?;
    interior_euler(&lagrangian.d_v())
}

/// Euler-Lagrange expressions Δ_α with δ_V λ = Δ_α θ^α ∧ vol.
pub fn euler_lagrange_expressions(lagrangian: &JetForm) -> Result<Vec<RationalFunction>> {
    let ctx = lagrangian.context();
    let source = euler_lagrange(lagrangian)?;
    source_coefficients(ctx, &source)
}

/// Coefficients Δ_α of a source form Δ_α θ^α ∧ vol.
pub fn source_coefficients(ctx: JetContext, source: &JetForm) -> Result<Vec<RationalFunction>> {
    let mut out = vec![RationalFunction::zero(); ctx.m()];
    let vol = JetForm::volume(ctx);
    for (field, slot) in out.iter_mut().enumerate() {
        let basis = JetForm::theta(ctx, field, crate::exact_algebra::MultiIndex::EMPTY).wedge(&vol);
        let (w, c) = basis.terms().next().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero basis form");
        *slot = (&source.coefficient(&w) / &c)?;
    }
    let rebuilt = out.iter().enumerate().fold(JetForm::zero(ctx), |acc, (field, c)| {
        acc + JetForm::theta(ctx, field, crate::exact_algebra::MultiIndex::EMPTY).wedge(&vol).mul_function(c)
    });
    if &rebuilt != source {
        return Err(Error::Precondition("form is not of source type Δ_α θ^α ∧ vol".into()));
    }
    Ok(out)
}

/// Helmholtz map δ_V Δ = I(d_V Δ) on functional (n,1)-forms; zero iff Δ is locally variational.
pub fn helmholtz(source: &JetForm) -> Result<JetForm> {
    let n = source.context().n() as u32;
    source.require_bidegree(n, 1)?;
    if &interior_euler(source)? != source {
        return Err(Error::Precondition("input is not a functional form (I(Δ) ≠ Δ)".into()));
    }
    interior_euler(&source.d_v())
}

/// Whether α and β have the same functional, tested as I((α − β)_{n,k}) = 0.
pub fn functional_equiv(alpha: &JetForm, beta: &JetForm, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("functional equivalence is tested for k ≥ 1 only".into()));
    }
    let n = alpha.context().n() as u32;
    for form in [alpha, beta] {
        if let Some(d) = form.degrees().into_iter().find(|&d| d != n + k) {
            return Err(Error::DegreeMismatch(format!("expected total degree {}, found {d}", n + k)));
        }
    }
    let diff = (alpha - beta).component(n, k);
    Ok(interior_euler(&diff)?.is_zero())
}

/// L_{pr X} α.
pub fn lie_derivative_pr(field: &ProjectableField, alpha: &JetForm) -> JetForm {
    alpha.lie_derivative(&field.prolong())
}

/// ι_{pr X} α.
pub fn contract_pr(field: &ProjectableField, alpha: &JetForm) -> JetForm {
    alpha.interior(&field.prolong())
}

/// Necessary condition for weak invariance: the Euler-Lagrange form of L_{pr X} λ vanishes.
pub fn weak_invariance_check(lagrangian: &JetForm, field: &ProjectableField) -> Result<bool> {
    Ok(euler_lagrange(&lie_derivative_pr(field, lagrangian))?.is_zero())
}

/// Cartan-formula Lie derivative d ι_V α + ι_V dα.
pub fn cartan_lie_derivative(field: &dyn JetVectorField, alpha: &JetForm) -> JetForm {
    alpha.interior(field).d() + alpha.d().interior(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{MultiIndex, Var};

    fn ctx1() -> JetContext {
        JetContext::new(1, 1).unwrap()
    }

    fn u(k: usize) -> RationalFunction {
        RationalFunction::var(Var::u(0, MultiIndex::from_directions(&vec![0; k])))
    }

    #[test]
    fn free_particle_source_form() {
        let ctx = ctx1();
        let lag = JetForm::volume(ctx).mul_function(&(&u(1) * &u(1)).scale(&Scalar::new(1, 2)));
        let el = euler_lagrange(&lag).unwrap();
        assert_eq!(el.to_string(), "-u1_11 * th(u1) ^ d(x1)");
        assert_eq!(euler_lagrange_expressions(&lag).unwrap(), vec![-u(2)]);
    }

    #[test]
    fn lagrangians_differing_by_divergence() {
        let ctx = ctx1();
        let vol = JetForm::volume(ctx);
        let l1 = vol.mul_function(&(&u(0) * &u(2)));
        let l2 = vol.mul_function(&(&u(1) * &u(1)).scale(&Scalar::from_int(-1)));
        let e1 = euler_lagrange_expressions(&l1).unwrap();
        let e2 = euler_lagrange_expressions(&l2).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1[0], u(2).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn wrong_bidegree_rejected() {
        let ctx = ctx1();
        let theta = JetForm::theta(ctx, 0, MultiIndex::EMPTY);
        assert!(matches!(euler_lagrange(&theta), Err(Error::Bidegree { .. })));
        let vol = JetForm::volume(ctx);
        assert!(functional_equiv(&vol, &vol, 0).is_err());
    }

    #[test]
    fn helmholtz_detects_non_variational() {
        let ctx = ctx1();
        let source = JetForm::theta(ctx, 0, MultiIndex::EMPTY).wedge(&JetForm::volume(ctx)).mul_function(&u(1));
        assert!(!helmholtz(&source).unwrap().is_zero());
        assert!(helmholtz(&JetForm::zero(ctx)).unwrap().is_zero());
    }

    #[test]
    fn weak_invariance_example() {
        let ctx = ctx1();
        let lag = JetForm::volume(ctx).mul_function(&(&u(0) * &u(0)));
        let shift = ProjectableField::new(ctx, vec![RationalFunction::zero()], vec![RationalFunction::one()]).unwrap();
        assert!(!weak_invariance_check(&lag, &shift).unwrap());
        let translation = ProjectableField::new(ctx, vec![RationalFunction::one()], vec![RationalFunction::zero()]).unwrap();
        assert!(weak_invariance_check(&lag, &translation).unwrap());
    }
}
