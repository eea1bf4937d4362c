use super::field::{parameter_degree, AutField, FormalParameter};
use super::matrix::{MatrixOfForms, TracePolynomial};
use crate::error::{Error, Result};
use crate::exact_algebra::{MultiPoly, Scalar, Var};
use crate::jet_calculus::{JetContext, JetForm, ProjectableField};

/// A natural bundle model: a jet space with a lift of infinitesimal automorphisms
/// and a normal point σ where ν_σ and ψ_σ are evaluated.
pub trait LiftModel: Sync {
    fn context(&self) -> JetContext;
    fn gauge_dim(&self) -> usize;
    fn lift(&self, x: &AutField) -> Result<ProjectableField>;
    /// Value of a jet or base coordinate at σ; `None` for other symbols.
    fn normal_value(&self, v: Var) -> Option<Scalar>;

    fn parameter(&self, set: usize, truncation: u32) -> Result<FormalParameter> {
        FormalParameter::new(self.context().n(), self.gauge_dim(), set, truncation)
    }

    fn at_normal_point(&self, form: &JetForm) -> Result<JetForm> {
        form.evaluate(&|v| self.normal_value(v))
    }
}

/// Part of a form whose coefficients are homogeneous of the given degree in the
/// parameter symbols.
pub fn parameter_component(form: &JetForm, degree: u32) -> JetForm {
    form.map_coefficients(|c| {
        Ok(c.map_numerator(|p| {
            MultiPoly::from_terms(
                p.terms()
                    .filter(|(m, _)| m.factors().iter().filter(|(v, _)| matches!(v, Var::Param { .. })).map(|(_, e)| *e).sum::<u32>() == degree)
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        }))
    })
    .expect("numerator filtering cannot fail")
}

/// Highest parameter degree among the coefficients.
pub fn max_parameter_degree(form: &JetForm) -> u32 {
    form.terms().map(|(_, c)| parameter_degree(c)).max().unwrap_or(0)
}

/// Element of the Cartan model: a form whose coefficients are polynomial in the
/// Taylor symbols of one formal parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantJetForm {
    form: JetForm,
    parameter: FormalParameter,
}

impl EquivariantJetForm {
    pub fn new(form: JetForm, parameter: FormalParameter) -> Self {
        EquivariantJetForm { form, parameter }
    }

    pub fn form(&self) -> &JetForm {
        &self.form
    }

    pub fn parameter(&self) -> FormalParameter {
        self.parameter
    }

    /// Form degree plus twice the parameter degree, per monomial.
    pub fn equivariant_degrees(&self) -> std::collections::BTreeSet<u32> {
        let mut out = std::collections::BTreeSet::new();
        for (w, c) in self.form.terms() {
            for (m, _) in c.numerator().terms() {
                let pd: u32 = m.factors().iter().filter(|(v, _)| matches!(v, Var::Param { .. })).map(|(_, e)| *e).sum();
                out.insert(w.degree() + 2 * pd);
            }
        }
        out
    }

    pub fn component(&self, degree: u32) -> JetForm {
        parameter_component(&self.form, degree)
    }

    /// Substitutes a concrete polynomial field for the parameter.
    pub fn evaluate_at(&self, x: &AutField) -> Result<JetForm> {
        let val = self.parameter.values_for(x)?;
        self.form.evaluate(&val)
    }

    /// d_c = d − ι_{pr X̃} with X̃ the lift of the parameter field.
    pub fn cartan_d(&self, model: &dyn LiftModel) -> Result<EquivariantJetForm> {
        Ok(EquivariantJetForm { form: cartan_d(&self.form, &self.parameter, model)?, parameter: self.parameter })
    }
}

/// d α − ι_{pr X̃} α for the generic field of the parameter.
pub fn cartan_d(alpha: &JetForm, parameter: &FormalParameter, model: &dyn LiftModel) -> Result<JetForm> {
    let pr = model.lift(&parameter.field())?.prolong();
    Ok(&alpha.d() - &alpha.interior(&pr))
}

/// Chern-Simons transgression T p(ω₀, ω₁) = ∫₀¹ (d/ds) p(F_t + sη)|_{s=0} dt with
/// η = ω₁ − ω₀, ω_t = ω₀ + tη and F_t = dω_t + ω_t ∧ ω_t; d T p = p(F₁) − p(F₀).
pub fn transgression(p: &TracePolynomial, conn0: &MatrixOfForms, conn1: &MatrixOfForms) -> Result<JetForm> {
    if conn0.size() != conn1.size() {
        return Err(Error::Precondition(format!("connections of sizes {} and {}", conn0.size(), conn1.size())));
    }
    let eta = conn1.sub(conn0)?;
    let t = crate::exact_algebra::RationalFunction::var(Var::T);
    let wt = conn0.add(&eta.mul_function(&t))?;
    let ft = wt.d().add(&wt.wedge(&wt)?)?;
    let integrand = p.polarized(&eta, &ft)?;
    integrand.map_coefficients(|c| {
        c.integrate_unit(Var::T).ok_or_else(|| Error::Unsupported("path parameter in a denominator".into()))
    })
}

/// Curvature F = dω + ω ∧ ω of a matrix of 1-forms.
pub fn curvature_of(conn: &MatrixOfForms) -> Result<MatrixOfForms> {
    conn.d().add(&conn.wedge(conn)?)
}
