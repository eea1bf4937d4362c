use std::sync::OnceLock;

use super::equivariant::{parameter_component, LiftModel};
use super::field::{AutField, FormalParameter};
use super::matrix::{determinant, minor, MatrixOfForms, TracePolynomial};
use crate::error::{Error, Result};
use crate::exact_algebra::{MultiIndex, MultiPoly, RationalFunction, Scalar, Var};
use crate::jet_calculus::{JetContext, JetForm, ProjectableField};

/// Jets of Riemannian metrics: fiber coordinates y_ij (i ≤ j) and their jets.
#[derive(Clone, Debug)]
pub struct MetricJetModel {
    ctx: JetContext,
    det: MultiPoly,
    inverse: Vec<Vec<RationalFunction>>,
    christoffel: Vec<Vec<Vec<RationalFunction>>>,
    omega_hor_curvature: OnceLock<MatrixOfForms>,
    curvature: OnceLock<MatrixOfForms>,
}

impl MetricJetModel {
    pub fn new(n: usize) -> Result<Self> {
        let ctx = JetContext::metrics(n)?;
        let ymat: Vec<Vec<MultiPoly>> =
            (0..n).map(|i| (0..n).map(|j| MultiPoly::var(Var::u(ctx.metric_field(i, j), MultiIndex::EMPTY))).collect()).collect();
        let det = determinant(&ymat, &MultiPoly::zero(), &MultiPoly::one());
        let mut inverse = vec![vec![RationalFunction::zero(); n]; n];
        for (i, row) in inverse.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let cof = determinant(&minor(&ymat, j, i), &MultiPoly::zero(), &MultiPoly::one());
                let cof = if (i + j) % 2 == 1 { -&cof } else { cof };
                *slot = RationalFunction::new(cof, det.clone())?;
            }
        }
        let dy = |a: usize, b: usize, k: usize| RationalFunction::var(Var::u(ctx.metric_field(a, b), MultiIndex::unit(k)));
        let half = Scalar::new(1, 2);
        let mut christoffel = vec![vec![vec![RationalFunction::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let mut g = RationalFunction::zero();
                    for (a, inv) in inverse[i].iter().enumerate() {
                        let s = &(&dy(a, j, k) + &dy(a, k, j)) - &dy(j, k, a);
                        g = &g + &(inv * &s);
                    }
                    let g = g.scale(&half);
                    christoffel[i][k][j] = g.clone();
                    christoffel[i][j][k] = g;
                }
            }
        }
        Ok(MetricJetModel {
            ctx,
            det,
            inverse,
            christoffel,
            omega_hor_curvature: OnceLock::new(),
            curvature: OnceLock::new(),
        })
    }

    pub fn context(&self) -> JetContext {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    /// y_ij as a function.
    pub fn y(&self, i: usize, j: usize) -> RationalFunction {
        RationalFunction::var(Var::u(self.ctx.metric_field(i, j), MultiIndex::EMPTY))
    }

    pub fn y_jet(&self, i: usize, j: usize, idx: MultiIndex) -> RationalFunction {
        RationalFunction::var(Var::u(self.ctx.metric_field(i, j), idx))
    }

    pub fn determinant(&self) -> &MultiPoly {
        &self.det
    }

    /// y^{ij} = adj(y)_{ij} / det y.
    pub fn inverse(&self, i: usize, j: usize) -> &RationalFunction {
        &self.inverse[i][j]
    }

    /// Γ^i_{jk} = ½ y^{ia}(y_{aj,k} + y_{ak,j} − y_{jk,a}).
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &RationalFunction {
        &self.christoffel[i][j][k]
    }

    fn dx(&self, k: usize) -> JetForm {
        JetForm::dx(self.ctx, k)
    }

    /// ω_hor = Γ^i_{jk} dx^k.
    pub fn omega_hor(&self) -> MatrixOfForms {
        let n = self.n();
        MatrixOfForms::from_fn(self.ctx, n, |i, j| {
            let mut e = JetForm::zero(self.ctx);
            for k in 0..n {
                e.add_assign(&self.dx(k).mul_function(&self.christoffel[i][j][k]));
            }
            e
        })
    }

    /// (Ω_hor)^i_j = dΓ^i_{jk} ∧ dx^k + Γ^i_{as} Γ^a_{jr} dx^s ∧ dx^r.
    pub fn omega_hor_curvature(&self) -> &MatrixOfForms {
        self.omega_hor_curvature.get_or_init(|| {
            let n = self.n();
            let ctx = self.ctx;
            MatrixOfForms::from_fn(ctx, n, |i, j| {
                let mut e = JetForm::zero(ctx);
                for k in 0..n {
                    e.add_assign(&JetForm::d_function(ctx, &self.christoffel[i][j][k]).wedge(&self.dx(k)));
                }
                for a in 0..n {
                    for s in 0..n {
                        for r in 0..n {
                            let c = &self.christoffel[i][a][s] * &self.christoffel[a][j][r];
                            if !c.is_zero() {
                                e.add_assign(&self.dx(s).wedge(&self.dx(r)).mul_function(&c));
                            }
                        }
                    }
                }
                e
            })
        })
    }

    /// ϑ^i_j = y^{ia}(dy_{aj} − y_{aj,k} dx^k) = y^{ia} θ_{aj}.
    pub fn theta_form(&self) -> MatrixOfForms {
        let n = self.n();
        MatrixOfForms::from_fn(self.ctx, n, |i, j| {
            let mut e = JetForm::zero(self.ctx);
            for a in 0..n {
                let th = JetForm::theta(self.ctx, self.ctx.metric_field(a, j), MultiIndex::EMPTY);
                e.add_assign(&th.mul_function(&self.inverse[i][a]));
            }
            e
        })
    }

    /// ω = ω_hor + ½ϑ.
    pub fn connection(&self) -> MatrixOfForms {
        self.omega_hor().add(&self.theta_form().scale(&Scalar::new(1, 2))).expect("same size")
    }

    /// Ω = dω + ω ∧ ω.
    pub fn curvature(&self) -> &MatrixOfForms {
        self.curvature.get_or_init(|| {
            let w = self.connection();
            w.d().add(&w.wedge(&w).expect("same size")).expect("same size")
        })
    }

    /// y · M, lowering the upper index with the metric.
    pub fn lower(&self, m: &MatrixOfForms) -> MatrixOfForms {
        let n = self.n();
        MatrixOfForms::from_fn(self.ctx, n, |i, j| {
            let mut e = JetForm::zero(self.ctx);
            for a in 0..n {
                e.add_assign(&m.entry(a, j).mul_function(&self.y(i, a)));
            }
            e
        })
    }

    /// Matrix of 0-forms ∂_j X^i.
    pub fn frame_term(&self, x: &AutField) -> MatrixOfForms {
        MatrixOfForms::from_fn(self.ctx, self.n(), |i, j| JetForm::function(self.ctx, AutField::dx(&x.vector()[i], j)))
    }

    /// (∇X)^i_j = ∂_j X^i + Γ^i_{jk} X^k.
    pub fn covariant_derivative(&self, x: &AutField) -> MatrixOfForms {
        let n = self.n();
        MatrixOfForms::from_fn(self.ctx, n, |i, j| {
            let mut f = AutField::dx(&x.vector()[i], j);
            for k in 0..n {
                f = &f + &(&self.christoffel[i][j][k] * &x.vector()[k]);
            }
            JetForm::function(self.ctx, f)
        })
    }

    /// Part of ∇X that is skew with respect to y: ½(∇X − y⁻¹(∇X)ᵀy).
    pub fn covariant_derivative_skew(&self, x: &AutField) -> MatrixOfForms {
        let n = self.n();
        let nabla = self.covariant_derivative(x);
        let half = Scalar::new(1, 2);
        MatrixOfForms::from_fn(self.ctx, n, |i, j| {
            let mut adj = JetForm::zero(self.ctx);
            for a in 0..n {
                for l in 0..n {
                    let c = &self.inverse[i][a] * &self.y(l, j);
                    adj.add_assign(&nabla.entry(l, a).mul_function(&c));
                }
            }
            (nabla.entry(i, j) - &adj).scale(&half)
        })
    }

    /// ω evaluated on the natural lift of X to frames: ω(pr X̄) + ∂X.
    pub fn vertical_term(&self, x: &AutField) -> Result<MatrixOfForms> {
        let pr = self.lift(x)?.prolong();
        let w = self.connection().map(|e| e.interior(&pr));
        w.add(&self.frame_term(x))
    }

    /// Ω_𝒢(X) = Ω − ω(X̃) with X the parameter field.
    pub fn equivariant_curvature(&self, parameter: &FormalParameter) -> Result<MatrixOfForms> {
        parameter.require_truncation(2)?;
        self.curvature().sub(&self.vertical_term(&parameter.field())?)
    }

    /// Moment-map integrand: the parameter-linear part of p(Ω_𝒢), which equals
    /// −deg(p) · p((∇X)_A, Ω, …, Ω).
    pub fn moment_integrand(&self, p: &TracePolynomial, parameter: &FormalParameter) -> Result<JetForm> {
        let value = p.evaluate(&self.equivariant_curvature(parameter)?)?;
        Ok(parameter_component(&value, 1))
    }

    /// −deg(p) · p((∇X)_A, Ω, …, Ω) from the Levi-Civita formula for ∇X.
    pub fn moment_from_nabla(&self, p: &TracePolynomial, x: &AutField) -> Result<JetForm> {
        Ok(-p.polarized(&self.covariant_derivative_skew(x), self.curvature())?)
    }
}

impl LiftModel for MetricJetModel {
    fn context(&self) -> JetContext {
        self.ctx
    }

    fn gauge_dim(&self) -> usize {
        0
    }

    /// X̄ = X^i ∂/∂x^i − Σ_{i≤j}(∂_i X^k y_kj + ∂_j X^k y_ki) ∂/∂y_ij.
    fn lift(&self, x: &AutField) -> Result<ProjectableField> {
        if x.n() != self.n() || !x.gauge().is_empty() {
            return Err(Error::Precondition("metric lift needs a plain vector field on the base".into()));
        }
        let n = self.n();
        let mut vertical = Vec::with_capacity(self.ctx.m());
        for f in 0..self.ctx.m() {
            let (i, j) = self.ctx.metric_pair(f);
            let mut v = RationalFunction::zero();
            for k in 0..n {
                v = &v - &(&AutField::dx(&x.vector()[k], i) * &self.y(k, j));
                v = &v - &(&AutField::dx(&x.vector()[k], j) * &self.y(k, i));
            }
            vertical.push(v);
        }
        ProjectableField::new(self.ctx, x.vector().to_vec(), vertical)
    }

    /// y_ij = δ_ij, all jets 0, x = 0.
    fn normal_value(&self, v: Var) -> Option<Scalar> {
        match v {
            Var::X(_) => Some(Scalar::zero()),
            Var::U { field, idx } => {
                let (i, j) = self.ctx.metric_pair(field as usize);
                Some(Scalar::from_int((idx.is_empty() && i == j) as i64))
            }
            _ => None,
        }
    }
}
