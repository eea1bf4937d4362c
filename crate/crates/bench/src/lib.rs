//! Fixed inputs shared by the benches.

use jetvar::exact_algebra::{Monomial, MultiIndex, MultiPoly, RationalFunction, Scalar, Var};
use jetvar::jet_calculus::{JetContext, JetForm, ProjectableField};

/// Σ_α ½ |∇u^α|² + (u^1)³ in n base dimensions, as a top-degree horizontal form.
pub fn dirichlet_lagrangian(n: usize, m: usize) -> JetForm {
    let ctx = JetContext::new(n, m).expect("context within limits");
    let mut p = MultiPoly::zero();
    for a in 0..m {
        for i in 0..n {
            p.add_term(Monomial::from_pairs(vec![(Var::u(a, MultiIndex::unit(i)), 2)]), Scalar::new(1, 2));
        }
    }
    p.add_term(Monomial::from_pairs(vec![(Var::u(0, MultiIndex::EMPTY), 3)]), Scalar::one());
    JetForm::volume(ctx).mul_function(&RationalFunction::from(p))
}

/// Projectable field with quadratic base and fiber components.
pub fn quadratic_field(ctx: JetContext, shift: usize) -> ProjectableField {
    let x = |i: usize| RationalFunction::var(Var::x(i % ctx.n()));
    let u = |a: usize| RationalFunction::var(Var::u(a % ctx.m(), MultiIndex::EMPTY));
    let base = (0..ctx.n()).map(|i| &x(i + shift) * &x(i + 1)).collect();
    let vertical = (0..ctx.m()).map(|a| &(&u(a) * &x(a + shift)) + &u(a + 1).pow(2)).collect();
    ProjectableField::new(ctx, base, vertical).expect("projectable by construction")
}
