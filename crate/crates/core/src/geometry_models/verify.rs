use std::collections::BTreeMap;
use std::fmt;

use super::connection::ConnectionJetModel;
use super::equivariant::{cartan_d, LiftModel};
use super::field::FormalParameter;
use super::matrix::{MatrixOfForms, TracePolynomial};
use super::metric::MetricJetModel;
use crate::error::{Error, Result};
use crate::exact_algebra::{rank, MultiIndex, RationalFunction, Scalar, SparseMatrix, Var};
use crate::formal_vf::{CeCochain, CeGenerator, FormalVFModel};
use crate::jet_calculus::{JetContext, JetForm, JetVectorField};
use crate::superalgebra::SuperElement;
use crate::weil_cohomology::{matrix_product, LieAlgebraData};

/// One compared identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display, holds: bool) -> Self {
        IdentityCheck { name: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), holds }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {} = {}", if c.holds { "ok  " } else { "FAIL" }, c.name, c.lhs, c.rhs)?;
        }
        write!(f, "{}: {}/{} identities hold", self.suite, self.checks.iter().filter(|c| c.holds).count(), self.checks.len())
    }
}

/// A jet vector field with its components evaluated at σ. Interior products are
/// pointwise, so contracting σ-values is exact.
struct PointField<'a> {
    inner: &'a dyn JetVectorField,
    model: &'a dyn LiftModel,
}

impl PointField<'_> {
    fn at(&self, f: RationalFunction) -> RationalFunction {
        f.evaluate(&|v| self.model.normal_value(v)).expect("normal point avoids poles")
    }
}

impl JetVectorField for PointField<'_> {
    fn context(&self) -> JetContext {
        self.inner.context()
    }

    fn base(&self, i: usize) -> RationalFunction {
        self.at(self.inner.base(i))
    }

    fn fiber(&self, field: usize, idx: &MultiIndex) -> RationalFunction {
        self.at(self.inner.fiber(field, idx))
    }
}

fn at_sigma(model: &dyn LiftModel, f: &RationalFunction) -> Result<RationalFunction> {
    Ok(f.evaluate(&|v| model.normal_value(v))?)
}

/// Components of ν_σ(X) = pr X̃(σ) on x^i and on u^α_J with |J| < truncation,
/// linear in the Taylor symbols of the generic field.
pub fn nu_sigma(model: &dyn LiftModel, truncation: u32) -> Result<Vec<(Var, RationalFunction)>> {
    let param = model.parameter(0, truncation)?;
    let pr = model.lift(&param.field())?.prolong();
    let ctx = model.context();
    let mut out = Vec::new();
    for i in 0..ctx.n() {
        out.push((Var::x(i), at_sigma(model, &pr.base(i))?));
    }
    for idx in MultiIndex::all_up_to(ctx.n(), truncation.saturating_sub(1)) {
        for field in 0..ctx.m() {
            out.push((Var::u(field, idx), at_sigma(model, &pr.fiber(field, &idx))?));
        }
    }
    Ok(out)
}

/// Dimension of the kernel of the stacked maps ν_σ on fields truncated at the given
/// order; the columns are the Taylor symbols shared by the models.
pub fn nu_sigma_kernel_dimension(models: &[&dyn LiftModel], truncation: u32) -> Result<usize> {
    let mut columns: BTreeMap<Var, usize> = BTreeMap::new();
    for m in models {
        for v in m.parameter(0, truncation)?.vars() {
            let next = columns.len();
            columns.entry(v).or_insert(next);
        }
    }
    let mut triplets = Vec::new();
    let mut row = 0;
    for m in models {
        for (_, comp) in nu_sigma(*m, truncation)? {
            let p = comp.as_polynomial().ok_or_else(|| Error::Precondition("ν_σ component is not polynomial".into()))?;
            for (mono, c) in p.terms() {
                let [(v, 1)] = mono.factors() else {
                    return Err(Error::Precondition(format!("ν_σ component {comp} is not linear in the field")));
                };
                triplets.push((row, columns[v], c.clone()));
            }
            row += 1;
        }
    }
    let mat = SparseMatrix::from_triplets(row, columns.len(), triplets);
    Ok(columns.len() - rank(&mat))
}

/// ψ_σ(α)(Y_1, …, Y_k) = (−1)^k α_σ(ν_σ Y_1, …, ν_σ Y_k), as a Chevalley-Eilenberg
/// cochain in θ^i_J, σ^α_J.
pub fn psi_sigma(model: &dyn LiftModel, alpha: &JetForm, truncation: u32) -> Result<CeCochain> {
    let degrees = alpha.degrees();
    if degrees.len() > 1 {
        return Err(Error::DegreeMismatch(format!("ψ_σ needs a homogeneous form, found degrees {degrees:?}")));
    }
    let k = degrees.into_iter().next().unwrap_or(0) as usize;
    let needed = alpha.jet_order() + 1;
    if truncation < needed {
        return Err(Error::Truncation(format!("ψ_σ needs truncation {needed}, got {truncation}")));
    }
    let mut value = model.at_normal_point(alpha)?;
    for set in 0..k {
        let param = model.parameter(set, truncation)?;
        let pr = model.lift(&param.field())?.prolong();
        value = value.interior(&PointField { inner: &pr, model });
    }
    let value = model.at_normal_point(&value)?;
    let f = value.as_function().unwrap_or_else(RationalFunction::zero);
    let p = f.as_polynomial().ok_or_else(|| Error::Precondition("contracted form is not polynomial at σ".into()))?;
    let mut out = CeCochain::zero();
    for (mono, c) in p.terms() {
        let mut gens = Vec::with_capacity(k);
        let mut sign = 1i64;
        for (r, (v, e)) in mono.factors().iter().enumerate() {
            match *v {
                Var::Param { set, gauge, comp, idx } if set as usize == r && *e == 1 => {
                    if idx.order() % 2 == 1 {
                        sign = -sign;
                    }
                    gens.push(if gauge { CeGenerator::sigma(comp as usize, idx) } else { CeGenerator::theta(comp as usize, idx) });
                }
                _ => return Err(Error::Precondition(format!("contracted form is not multilinear in the fields: {v}"))),
            }
        }
        if gens.len() != k {
            return Err(Error::Precondition("contracted form is not multilinear in the fields".into()));
        }
        let coeff = if k % 2 == 1 { -(c * &Scalar::from_int(sign)) } else { c * &Scalar::from_int(sign) };
        out.add_scaled(&SuperElement::product(&gens), &coeff);
    }
    Ok(out.scale(&Scalar::factorial(k as u32).recip()))
}

/// Low-degree invariant polynomials in a connection-type matrix λ and a
/// curvature-type matrix Λ.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeilProbe {
    /// tr Λ
    Trace,
    /// tr(λ Λ)
    MixedTrace,
    /// tr Λ²
    TraceOfSquare,
    /// (tr Λ)²
    SquareOfTrace,
}

impl WeilProbe {
    pub const ALL: [WeilProbe; 4] = [WeilProbe::Trace, WeilProbe::MixedTrace, WeilProbe::TraceOfSquare, WeilProbe::SquareOfTrace];

    pub fn label(self) -> &'static str {
        match self {
            WeilProbe::Trace => "tr L",
            WeilProbe::MixedTrace => "tr(l L)",
            WeilProbe::TraceOfSquare => "tr L^2",
            WeilProbe::SquareOfTrace => "(tr L)^2",
        }
    }

    pub fn on_forms(self, lambda: &MatrixOfForms, big: &MatrixOfForms) -> Result<JetForm> {
        Ok(match self {
            WeilProbe::Trace => big.trace(),
            WeilProbe::MixedTrace => lambda.wedge(big)?.trace(),
            WeilProbe::TraceOfSquare => big.wedge(big)?.trace(),
            WeilProbe::SquareOfTrace => big.trace().wedge(&big.trace()),
        })
    }

    pub fn on_cochains(self, lambda: &[Vec<CeCochain>], big: &[Vec<CeCochain>]) -> CeCochain {
        let trace = |m: &[Vec<CeCochain>]| (0..m.len()).fold(CeCochain::zero(), |acc, i| &acc + &m[i][i]);
        match self {
            WeilProbe::Trace => trace(big),
            WeilProbe::MixedTrace => trace(&matrix_product(lambda, big)),
            WeilProbe::TraceOfSquare => trace(&matrix_product(big, big)),
            WeilProbe::SquareOfTrace => &trace(big) * &trace(big),
        }
    }
}

/// Symmetric part θ^S of the linear CE generators, θ^S_ij = ½(θ^i_j + θ^j_i).
pub fn ce_symmetric_theta(n: usize) -> Vec<Vec<CeCochain>> {
    let half = Scalar::new(1, 2);
    let th = |i: usize, j: usize| SuperElement::generator(CeGenerator::theta(i, MultiIndex::unit(j)));
    (0..n).map(|i| (0..n).map(|j| (&th(i, j) + &th(j, i)).scale(&half)).collect()).collect()
}

pub fn ce_curvature(n: usize) -> Result<Vec<Vec<CeCochain>>> {
    let a = FormalVFModel::new(n, None)?;
    (0..n).map(|i| (0..n).map(|j| a.curvature(i, j)).collect()).collect()
}

/// Identities at the normal point for the metric lift: the action on Γ, the value
/// of Ω_hor on two lifts and the symmetric part of the connection on one lift.
pub fn verify_lemma15(n: usize) -> Result<VerificationReport> {
    let model = MetricJetModel::new(n)?;
    let mut report = VerificationReport::new(format!("metric lift at the normal point, n = {n}"));
    let px = model.parameter(0, 3)?;
    let py = model.parameter(1, 3)?;
    let prx = model.lift(&px.field())?.prolong();
    let pry = model.lift(&py.field())?.prolong();
    let a = |p: &FormalParameter, i: usize, idx: MultiIndex| RationalFunction::var(p.coefficient(false, i, idx));
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let lhs = at_sigma(&model, &prx.apply(model.christoffel(i, j, k)))?;
                let rhs = -a(&px, i, MultiIndex::unit(j).plus(k));
                let holds = lhs == rhs;
                report.push(IdentityCheck::new(format!("prX(G^{}_{}{})", i + 1, j + 1, k + 1), lhs, rhs, holds));
            }
        }
    }
    let omega = model.omega_hor_curvature().clone();
    let pfx = PointField { inner: &prx, model: &model };
    let pfy = PointField { inner: &pry, model: &model };
    for i in 0..n {
        for j in 0..n {
            let value = model.at_normal_point(omega.entry(i, j))?.interior(&pfx).interior(&pfy);
            let lhs = at_sigma(&model, &value.as_function().unwrap_or_else(RationalFunction::zero))?;
            let mut rhs = RationalFunction::zero();
            for k in 0..n {
                let jk = MultiIndex::unit(j).plus(k);
                rhs = &rhs + &(&a(&px, k, MultiIndex::EMPTY) * &a(&py, i, jk));
                rhs = &rhs - &(&a(&py, k, MultiIndex::EMPTY) * &a(&px, i, jk));
            }
            let holds = lhs == rhs;
            report.push(IdentityCheck::new(format!("Omega_hor^{}_{}(prX, prY)", i + 1, j + 1), lhs, rhs, holds));
        }
    }
    let sym = model.theta_form().scale(&Scalar::new(-1, 2));
    let half = Scalar::new(1, 2);
    for i in 0..n {
        for j in 0..n {
            let value = model.at_normal_point(sym.entry(i, j))?.interior(&pfx);
            let lhs = at_sigma(&model, &value.as_function().unwrap_or_else(RationalFunction::zero))?;
            let rhs = (&a(&px, j, MultiIndex::unit(i)) + &a(&px, i, MultiIndex::unit(j))).scale(&half);
            let holds = lhs == rhs;
            report.push(IdentityCheck::new(format!("-1/2 vartheta^{}_{}(prX)", i + 1, j + 1), lhs, rhs, holds));
        }
    }
    Ok(report)
}

/// 𝔽(X_C, Y_C) at A = 0 equals f₁(g₂) − f₂(g₁) at the origin.
pub fn verify_lemma20(n: usize, lie: &LieAlgebraData) -> Result<VerificationReport> {
    let model = ConnectionJetModel::new(n, lie.clone())?;
    let mut report = VerificationReport::new(format!("connection lift at A = 0, n = {n}, g = {}", lie.names().join(",")));
    let px = model.parameter(0, 2)?;
    let py = model.parameter(1, 2)?;
    let prx = model.lift(&px.field())?.prolong();
    let pry = model.lift(&py.field())?.prolong();
    let pfx = PointField { inner: &prx, model: &model };
    let pfy = PointField { inner: &pry, model: &model };
    let curv = model.curvature();
    for alpha in 0..lie.dim() {
        let value = model.at_normal_point(curv.component(alpha))?.interior(&pfx).interior(&pfy);
        let lhs = at_sigma(&model, &value.as_function().unwrap_or_else(RationalFunction::zero))?;
        let mut rhs = RationalFunction::zero();
        for i in 0..n {
            let f1 = RationalFunction::var(px.coefficient(false, i, MultiIndex::EMPTY));
            let f2 = RationalFunction::var(py.coefficient(false, i, MultiIndex::EMPTY));
            let g1 = RationalFunction::var(px.coefficient(true, alpha, MultiIndex::unit(i)));
            let g2 = RationalFunction::var(py.coefficient(true, alpha, MultiIndex::unit(i)));
            rhs = &rhs + &(&f1 * &g2);
            rhs = &rhs - &(&f2 * &g1);
        }
        let holds = lhs == rhs;
        report.push(IdentityCheck::new(format!("F^{}(X_C, Y_C)", alpha + 1), lhs, rhs, holds));
    }
    Ok(report)
}

/// ψ_σ q(−½ϑ, Ω_hor) = q(θ^S, R) for each probe polynomial q.
pub fn verify_prop14(n: usize) -> Result<VerificationReport> {
    let model = MetricJetModel::new(n)?;
    let mut report = VerificationReport::new(format!("psi_sigma on curvature polynomials, n = {n}"));
    let lambda = model.theta_form().scale(&Scalar::new(-1, 2));
    let big = model.omega_hor_curvature();
    let ce_lambda = ce_symmetric_theta(n);
    let ce_big = ce_curvature(n)?;
    for q in WeilProbe::ALL {
        let form = q.on_forms(&lambda, big)?;
        let lhs = psi_sigma(&model, &form, form.jet_order() + 1)?;
        let rhs = q.on_cochains(&ce_lambda, &ce_big);
        let holds = lhs == rhs;
        report.push(IdentityCheck::new(format!("psi_sigma {}", q.label()), lhs, rhs, holds));
    }
    Ok(report)
}

/// dΩ + ω ∧ Ω − Ω ∧ ω = 0 for the metric and connection models.
pub fn verify_bianchi(n: usize, lie: &LieAlgebraData) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("Bianchi identities, n = {n}"));
    let metric = MetricJetModel::new(n)?;
    let w = metric.connection();
    let big = metric.curvature();
    let defect = big.d().add(&w.wedge(big)?)?.sub(&big.wedge(&w)?)?;
    for i in 0..n {
        for j in 0..n {
            let e = defect.entry(i, j);
            report.push(IdentityCheck::new(format!("metric (D Omega)^{}_{}", i + 1, j + 1), e, 0, e.is_zero()));
        }
    }
    let conn = ConnectionJetModel::new(n, lie.clone())?;
    let a = conn.connection_form().adjoint_matrix(lie)?;
    let f = conn.curvature().adjoint_matrix(lie)?;
    let defect = f.d().add(&a.wedge(&f)?)?.sub(&f.wedge(&a)?)?;
    for i in 0..lie.dim() {
        for j in 0..lie.dim() {
            let e = defect.entry(i, j);
            report.push(IdentityCheck::new(format!("gauge ad(D F)^{}_{}", i + 1, j + 1), e, 0, e.is_zero()));
        }
    }
    Ok(report)
}

/// d_c of equivariant characteristic forms: the gauge curvature and tr of its square
/// (diagonal for abelian algebras, adjoint otherwise), and tr Ω_𝒢², p_1(Ω_𝒢) for
/// metrics. The parameter is truncated at `truncation`.
pub fn verify_cartan(n: usize, lie: &LieAlgebraData, truncation: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("Cartan closedness, n = {n}, truncation {truncation}"));
    let conn = ConnectionJetModel::new(n, lie.clone())?;
    let par = conn.parameter(0, truncation)?;
    let fg = conn.equivariant_curvature(&par)?;
    if lie.is_abelian() {
        for alpha in 0..lie.dim() {
            let e = cartan_d(fg.component(alpha), &par, &conn)?;
            report.push(IdentityCheck::new(format!("d_c F_G^{}", alpha + 1), &e, 0, e.is_zero()));
        }
    }
    let matrix = if lie.is_abelian() { fg.diagonal_matrix() } else { fg.adjoint_matrix(lie)? };
    let e = cartan_d(&TracePolynomial::power_trace(2).evaluate(&matrix)?, &par, &conn)?;
    report.push(IdentityCheck::new("d_c tr(F_G^2)", &e, 0, e.is_zero()));
    let metric = MetricJetModel::new(n)?;
    let par = metric.parameter(0, truncation)?;
    let og = metric.equivariant_curvature(&par)?;
    for (label, p) in [("tr(Omega_G^2)", TracePolynomial::power_trace(2)), ("p1(Omega_G)", TracePolynomial::pontryagin(1))] {
        let e = cartan_d(&p.evaluate(&og)?, &par, &metric)?;
        report.push(IdentityCheck::new(format!("d_c {label}"), &e, 0, e.is_zero()));
    }
    Ok(report)
}
