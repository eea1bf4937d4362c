use super::equivariant::LiftModel;
use super::field::{AutField, FormalParameter};
use super::matrix::MatrixOfForms;
use crate::error::{Error, Result};
use crate::exact_algebra::{MultiIndex, MultiPoly, RationalFunction, Scalar, Var};
use crate::jet_calculus::{JetContext, JetForm, ProjectableField};
use crate::weil_cohomology::LieAlgebraData;

/// Coefficient of c^α_{βγ} A^β_j A^γ_k dx^j ∧ dx^k in 𝔽, calibrated once against
/// the pullback oracle dA + ½[A, A] (see [`calibrate_quadratic_factor`]).
pub fn gauge_quadratic_factor() -> Scalar {
    Scalar::new(1, 2)
}

/// 𝔤-valued form Σ_α F^α ⊗ B_α.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeForm {
    ctx: JetContext,
    components: Vec<JetForm>,
}

impl GaugeForm {
    pub fn new(ctx: JetContext, components: Vec<JetForm>) -> Self {
        GaugeForm { ctx, components }
    }

    pub fn context(&self) -> JetContext {
        self.ctx
    }

    pub fn components(&self) -> &[JetForm] {
        &self.components
    }

    pub fn component(&self, alpha: usize) -> &JetForm {
        &self.components[alpha]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(JetForm::is_zero)
    }

    pub fn map(&self, f: impl Fn(&JetForm) -> JetForm) -> Self {
        GaugeForm { ctx: self.ctx, components: self.components.iter().map(f).collect() }
    }

    pub fn sub(&self, other: &GaugeForm) -> Result<Self> {
        if self.components.len() != other.components.len() {
            return Err(Error::Precondition("gauge forms over different algebras".into()));
        }
        Ok(GaugeForm { ctx: self.ctx, components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() })
    }

    /// diag(F^1, …, F^d): the sum of the one-dimensional representations,
    /// meaningful for abelian algebras.
    pub fn diagonal_matrix(&self) -> MatrixOfForms {
        let d = self.components.len();
        MatrixOfForms::from_fn(self.ctx, d, |i, j| if i == j { self.components[i].clone() } else { JetForm::zero(self.ctx) })
    }

    /// Σ_α F^α ρ(B_α) for matrices ρ(B_α).
    pub fn matrix_in(&self, rep: &[Vec<Vec<Scalar>>]) -> Result<MatrixOfForms> {
        if rep.len() != self.components.len() {
            return Err(Error::Precondition(format!("representation has {} matrices, algebra has dimension {}", rep.len(), self.components.len())));
        }
        let size = rep.first().map_or(0, Vec::len);
        Ok(MatrixOfForms::from_fn(self.ctx, size, |i, j| {
            let mut e = JetForm::zero(self.ctx);
            for (alpha, m) in rep.iter().enumerate() {
                if !m[i][j].is_zero() {
                    e.add_assign(&self.components[alpha].scale(&m[i][j]));
                }
            }
            e
        }))
    }

    /// Adjoint representation ad(B_α)^β_γ = c^β_{αγ}.
    pub fn adjoint_matrix(&self, lie: &LieAlgebraData) -> Result<MatrixOfForms> {
        let d = lie.dim();
        let rep: Vec<Vec<Vec<Scalar>>> = (0..d).map(|a| (0..d).map(|b| (0..d).map(|c| lie.c(b, a, c)).collect()).collect()).collect();
        self.matrix_in(&rep)
    }

    pub fn evaluate(&self, val: &dyn Fn(Var) -> Option<Scalar>) -> Result<Self> {
        Ok(GaugeForm { ctx: self.ctx, components: self.components.iter().map(|c| c.evaluate(val)).collect::<Result<_>>()? })
    }
}

/// Jets of principal connections: fiber coordinates A^α_i and their jets.
#[derive(Clone, Debug)]
pub struct ConnectionJetModel {
    ctx: JetContext,
    lie: LieAlgebraData,
}

impl ConnectionJetModel {
    pub fn new(n: usize, lie: LieAlgebraData) -> Result<Self> {
        let ctx = JetContext::connections(n, lie.dim())?;
        Ok(ConnectionJetModel { ctx, lie })
    }

    pub fn context(&self) -> JetContext {
        self.ctx
    }

    pub fn lie(&self) -> &LieAlgebraData {
        &self.lie
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn a(&self, alpha: usize, i: usize) -> RationalFunction {
        RationalFunction::var(Var::u(self.ctx.connection_field(alpha, i), MultiIndex::EMPTY))
    }

    /// 𝔸 = A^α_j dx^j ⊗ B_α.
    pub fn connection_form(&self) -> GaugeForm {
        let comps = (0..self.dim())
            .map(|alpha| {
                let mut e = JetForm::zero(self.ctx);
                for j in 0..self.n() {
                    e.add_assign(&JetForm::dx(self.ctx, j).mul_function(&self.a(alpha, j)));
                }
                e
            })
            .collect();
        GaugeForm::new(self.ctx, comps)
    }

    /// 𝔽 with the calibrated quadratic factor.
    pub fn curvature(&self) -> GaugeForm {
        self.curvature_with_factor(&gauge_quadratic_factor())
    }

    /// (dA^α_j ∧ dx^j + κ c^α_{βγ} A^β_j A^γ_k dx^j ∧ dx^k) ⊗ B_α.
    pub fn curvature_with_factor(&self, kappa: &Scalar) -> GaugeForm {
        let n = self.n();
        let d = self.dim();
        let comps = (0..d)
            .map(|alpha| {
                let mut e = JetForm::zero(self.ctx);
                for j in 0..n {
                    let f = self.ctx.connection_field(alpha, j);
                    e.add_assign(&JetForm::du(self.ctx, f, MultiIndex::EMPTY).wedge(&JetForm::dx(self.ctx, j)));
                }
                for b in 0..d {
                    for c in 0..d {
                        let k = self.lie.c(alpha, b, c);
                        if k.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            for l in 0..n {
                                if j == l {
                                    continue;
                                }
                                let coeff = (&self.a(b, j) * &self.a(c, l)).scale(&(&k * kappa));
                                e.add_assign(&JetForm::dx(self.ctx, j).wedge(&JetForm::dx(self.ctx, l)).mul_function(&coeff));
                            }
                        }
                    }
                }
                e
            })
            .collect();
        GaugeForm::new(self.ctx, comps)
    }

    /// 𝔸(X_ℙ) = (A^α_i f^i + g^α) ⊗ B_α.
    pub fn moment_term(&self, x: &AutField) -> GaugeForm {
        let comps = (0..self.dim())
            .map(|alpha| {
                let mut f = x.gauge()[alpha].clone();
                for i in 0..self.n() {
                    f = &f + &(&self.a(alpha, i) * &x.vector()[i]);
                }
                JetForm::function(self.ctx, f)
            })
            .collect();
        GaugeForm::new(self.ctx, comps)
    }

    /// 𝔽_𝒢(X) = 𝔽 − 𝔸(X_ℙ).
    pub fn equivariant_curvature(&self, parameter: &FormalParameter) -> Result<GaugeForm> {
        parameter.require_truncation(2)?;
        let x = parameter.field();
        self.check_field(&x)?;
        self.curvature().sub(&self.moment_term(&x))
    }

    fn check_field(&self, x: &AutField) -> Result<()> {
        if x.n() != self.n() || x.gauge().len() != self.dim() {
            return Err(Error::Precondition(format!(
                "connection lift needs {} base and {} gauge components",
                self.n(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Pullback of 𝔽 (with factor κ) along the section A^α_i = potential[α][i].
    pub fn pullback_curvature(&self, kappa: &Scalar, potential: &[Vec<MultiPoly>]) -> Result<GaugeForm> {
        let section = self.section(potential)?;
        let f = self.curvature_with_factor(kappa);
        Ok(GaugeForm::new(self.ctx, f.components().iter().map(|c| c.pullback(&section)).collect::<Result<_>>()?))
    }

    fn section(&self, potential: &[Vec<MultiPoly>]) -> Result<Vec<MultiPoly>> {
        if potential.len() != self.dim() || potential.iter().any(|p| p.len() != self.n()) {
            return Err(Error::Precondition("potential has the wrong shape".into()));
        }
        let mut section = vec![MultiPoly::zero(); self.ctx.m()];
        for (alpha, row) in potential.iter().enumerate() {
            for (i, p) in row.iter().enumerate() {
                section[self.ctx.connection_field(alpha, i)] = p.clone();
            }
        }
        Ok(section)
    }

    /// dA + ½[A, A] for A = potential[α][i] dx^i ⊗ B_α, computed on the base.
    pub fn classical_curvature(&self, potential: &[Vec<MultiPoly>]) -> Result<GaugeForm> {
        self.section(potential)?;
        let n = self.n();
        let d = self.dim();
        let half = Scalar::new(1, 2);
        let comps = (0..d)
            .map(|alpha| {
                let mut e = JetForm::zero(self.ctx);
                for k in 0..n {
                    for j in 0..n {
                        let c = potential[alpha][j].derivative(Var::x(k));
                        e.add_assign(&JetForm::dx(self.ctx, k).wedge(&JetForm::dx(self.ctx, j)).mul_function(&c.into()));
                    }
                }
                for b in 0..d {
                    for c in 0..d {
                        let s = self.lie.c(alpha, b, c);
                        if s.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            for k in 0..n {
                                let coeff: RationalFunction = (&potential[b][j] * &potential[c][k]).scale(&(&s * &half)).into();
                                e.add_assign(&JetForm::dx(self.ctx, j).wedge(&JetForm::dx(self.ctx, k)).mul_function(&coeff));
                            }
                        }
                    }
                }
                e
            })
            .collect();
        Ok(GaugeForm::new(self.ctx, comps))
    }
}

/// Finds κ with pullback(𝔽_κ) = dA + ½[A, A] along the given potential.
/// Returns `None` when the potential has no quadratic term, or when no single κ fits.
pub fn calibrate_quadratic_factor(model: &ConnectionJetModel, potential: &[Vec<MultiPoly>]) -> Result<Option<Scalar>> {
    let base = model.pullback_curvature(&Scalar::zero(), potential)?;
    let unit = model.pullback_curvature(&Scalar::one(), potential)?;
    let oracle = model.classical_curvature(potential)?;
    let quad = unit.sub(&base)?;
    let target = oracle.sub(&base)?;
    let mut kappa: Option<Scalar> = None;
    for (q, t) in quad.components().iter().zip(target.components()) {
        for (w, c) in q.terms() {
            let tc = t.coefficient(w);
            let (Some(qc), Some(tv)) = (c.as_polynomial(), tc.as_polynomial()) else {
                return Ok(None);
            };
            // tv = κ qc for polynomials: compare one leading coefficient, then verify.
            let Some((m, lead)) = qc.leading_term() else { continue };
            let k = &tv.coefficient(m) / lead;
            match &kappa {
                Some(prev) if *prev != k => return Ok(None),
                _ => kappa = Some(k),
            }
        }
    }
    let Some(k) = kappa else { return Ok(None) };
    let fitted = base.components().iter().zip(quad.components()).map(|(b, q)| b + &q.scale(&k)).collect();
    Ok((GaugeForm::new(model.ctx, fitted) == oracle).then_some(k))
}

impl LiftModel for ConnectionJetModel {
    fn context(&self) -> JetContext {
        self.ctx
    }

    fn gauge_dim(&self) -> usize {
        self.dim()
    }

    /// X_{C(P)} = f^j ∂/∂x^j − (∂_j f^i A^α_i + ∂_j g^α − c^α_{βγ} g^β A^γ_j) ∂/∂A^α_j.
    fn lift(&self, x: &AutField) -> Result<ProjectableField> {
        self.check_field(x)?;
        let n = self.n();
        let d = self.dim();
        let mut vertical = vec![RationalFunction::zero(); self.ctx.m()];
        for alpha in 0..d {
            for j in 0..n {
                let mut v = AutField::dx(&x.gauge()[alpha], j);
                for i in 0..n {
                    v = &v + &(&AutField::dx(&x.vector()[i], j) * &self.a(alpha, i));
                }
                for b in 0..d {
                    for c in 0..d {
                        let k = self.lie.c(alpha, b, c);
                        if !k.is_zero() {
                            v = &v - &(&x.gauge()[b] * &self.a(c, j)).scale(&k);
                        }
                    }
                }
                vertical[self.ctx.connection_field(alpha, j)] = -v;
            }
        }
        ProjectableField::new(self.ctx, x.vector().to_vec(), vertical)
    }

    /// All A-jets 0, x = 0.
    fn normal_value(&self, v: Var) -> Option<Scalar> {
        match v {
            Var::X(_) | Var::U { .. } => Some(Scalar::zero()),
            _ => None,
        }
    }
}
