use jetvar::exact_algebra::{Monomial, MultiIndex, MultiPoly, RationalFunction, Scalar, Var};
use jetvar::formal_vf::FormalVFModel;
use jetvar::geometry_models::*;
use jetvar::jet_calculus::{JetContext, JetForm};
use jetvar::weil_cohomology::LieAlgebraData;
use jetvar::Error;
use proptest::prelude::*;

fn x(i: usize) -> MultiPoly {
    MultiPoly::var(Var::x(i))
}

fn int(c: i64) -> MultiPoly {
    MultiPoly::int(c)
}

fn zero_form(ctx: JetContext) -> JetForm {
    JetForm::zero(ctx)
}

/// Quadratic polynomial in x^1..x^n from a list of (coefficient, i, j) with
/// out-of-range indices meaning "no factor".
fn quadratic(n: usize, spec: &[(i64, usize, usize)]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for &(c, i, j) in spec {
        let pairs: Vec<(Var, u32)> = [i, j].iter().filter(|&&k| k < n).map(|&k| (Var::x(k), 1)).collect();
        p.add_term(Monomial::from_pairs(pairs), Scalar::from_int(c));
    }
    p
}

fn quad_spec() -> impl Strategy<Value = Vec<(i64, usize, usize)>> {
    prop::collection::vec((-3i64..=3, 0usize..4, 0usize..4), 1..4)
}

// ---------------------------------------------------------------- metrics

#[test]
fn christoffel_vanishes_at_normal_point_and_matches_one_dimensional_formula() {
    let m = MetricJetModel::new(2).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let g = m.christoffel(i, j, k).evaluate(&|v| m.normal_value(v)).unwrap();
                assert!(g.is_zero());
                assert_eq!(m.christoffel(i, j, k), m.christoffel(i, k, j));
            }
        }
    }
    // n = 1: Γ = y' / (2y)
    let m1 = MetricJetModel::new(1).unwrap();
    let y = m1.y(0, 0);
    let y1 = m1.y_jet(0, 0, MultiIndex::unit(0));
    let expected = (&y1 / &y.scale(&Scalar::from_int(2))).unwrap();
    assert_eq!(m1.christoffel(0, 0, 0), &expected);
}

#[test]
fn inverse_metric_is_an_inverse() {
    for n in 1..=3 {
        let m = MetricJetModel::new(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let mut s = RationalFunction::zero();
                for a in 0..n {
                    s = &s + &(m.inverse(i, a) * &m.y(a, j));
                }
                assert_eq!(s, RationalFunction::int((i == j) as i64));
            }
        }
    }
}

#[test]
fn theta_form_is_purely_contact() {
    let m = MetricJetModel::new(2).unwrap();
    let th = m.theta_form();
    for i in 0..2 {
        for j in 0..2 {
            for (p, q) in th.entry(i, j).bidegrees() {
                assert_eq!((p, q), (0, 1));
            }
        }
    }
}

#[test]
fn omega_hor_curvature_formula_is_the_structure_equation() {
    for n in 1..=2 {
        let m = MetricJetModel::new(n).unwrap();
        let w = m.omega_hor();
        assert_eq!(m.omega_hor_curvature(), &curvature_of(&w).unwrap());
    }
}

#[test]
fn curvature_is_traceless_and_lowered_curvature_is_skew() {
    let m = MetricJetModel::new(2).unwrap();
    assert!(m.curvature().trace().is_zero());
    let low = m.lower(m.curvature());
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(low.entry(i, j), &-low.entry(j, i));
        }
    }
}

#[test]
fn one_dimensional_curvature_has_only_contact_components() {
    let m = MetricJetModel::new(1).unwrap();
    let om = m.omega_hor_curvature().entry(0, 0).clone();
    assert!(!om.is_zero());
    let section = vec![&int(1) + &(&x(0) * &x(0))];
    assert!(om.pullback(&section).unwrap().is_zero());
    assert!(m.curvature().entry(0, 0).is_zero());
}

#[test]
fn pontryagin_type_form_is_closed() {
    let m = MetricJetModel::new(2).unwrap();
    let f = TracePolynomial::power_trace(2).evaluate(m.curvature()).unwrap();
    assert!(!f.is_zero());
    assert!(f.d().is_zero());
}

/// Classical Levi-Civita curvature Ω^i_j = ½ R^i_{jkl} dx^k ∧ dx^l of a metric
/// given on the base, computed directly from its Christoffel symbols.
fn classical_riemann(ctx: JetContext, g: &[Vec<MultiPoly>]) -> Vec<Vec<JetForm>> {
    let n = g.len();
    assert_eq!(n, 2);
    let det = &(&g[0][0] * &g[1][1]) - &(&g[0][1] * &g[1][0]);
    let inv = |i: usize, j: usize| {
        let num = match (i, j) {
            (0, 0) => g[1][1].clone(),
            (1, 1) => g[0][0].clone(),
            _ => -&g[i][j],
        };
        RationalFunction::new(num, det.clone()).unwrap()
    };
    let dg = |a: usize, b: usize, k: usize| RationalFunction::from(g[a][b].derivative(Var::x(k)));
    let gamma = |i: usize, j: usize, k: usize| {
        let mut s = RationalFunction::zero();
        for a in 0..n {
            s = &s + &(&inv(i, a) * &(&(&dg(a, j, k) + &dg(a, k, j)) - &dg(j, k, a)));
        }
        s.scale(&Scalar::new(1, 2))
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = zero_form(ctx);
                    for k in 0..n {
                        for l in 0..n {
                            let mut r = &gamma(i, l, j).partial(Var::x(k)) - &gamma(i, k, j).partial(Var::x(l));
                            for s in 0..n {
                                r = &r + &(&gamma(i, k, s) * &gamma(s, l, j));
                                r = &r - &(&gamma(i, l, s) * &gamma(s, k, j));
                            }
                            let w = JetForm::dx(ctx, k).wedge(&JetForm::dx(ctx, l));
                            e.add_assign(&w.mul_function(&r.scale(&Scalar::new(1, 2))));
                        }
                    }
                    e
                })
                .collect()
        })
        .collect()
}

#[test]
fn pullback_along_a_metric_is_the_riemann_curvature() {
    let m = MetricJetModel::new(2).unwrap();
    let ctx = m.context();
    let g = vec![vec![&int(1) + &(&x(1) * &x(1)), x(0)], vec![x(0), &int(2) + &(&x(0) * &x(0))]];
    let mut section = vec![MultiPoly::zero(); ctx.m()];
    for i in 0..2 {
        for j in i..2 {
            section[ctx.metric_field(i, j)] = g[i][j].clone();
        }
    }
    let oracle = classical_riemann(ctx, &g);
    for i in 0..2 {
        for j in 0..2 {
            let hor = m.omega_hor_curvature().entry(i, j).pullback(&section).unwrap();
            let full = m.curvature().entry(i, j).pullback(&section).unwrap();
            assert_eq!(hor, oracle[i][j], "Omega_hor^{i}_{j}");
            assert_eq!(full, oracle[i][j], "Omega^{i}_{j}");
        }
    }
}

#[test]
fn euler_pfaffian_squares_to_determinants() {
    let m = MetricJetModel::new(2).unwrap();
    let low = m.lower(m.curvature());
    let pf = low.pfaffian().unwrap();
    let det_y = JetForm::function(m.context(), m.determinant().clone().into());
    let det_omega = m.curvature().determinant().unwrap();
    assert_eq!(pf.wedge(&pf), det_y.wedge(&det_omega));
}

#[test]
fn symbolic_pfaffian_squares_to_determinant() {
    let ctx = JetContext::new(1, 1).unwrap();
    for size in [2usize, 4] {
        let mut k = 0u16;
        let mut sym = vec![vec![RationalFunction::zero(); size]; size];
        for i in 0..size {
            for j in i + 1..size {
                sym[i][j] = RationalFunction::var(Var::Sym(k));
                sym[j][i] = -&sym[i][j];
                k += 1;
            }
        }
        let a = MatrixOfForms::from_fn(ctx, size, |i, j| JetForm::function(ctx, sym[i][j].clone()));
        let pf = a.pfaffian().unwrap();
        assert_eq!(pf.wedge(&pf), a.determinant().unwrap());
    }
}

#[test]
fn pfaffian_rejects_non_skew_matrices() {
    let ctx = JetContext::new(1, 1).unwrap();
    let a = MatrixOfForms::identity(ctx, 2);
    assert!(a.pfaffian().is_err());
}

#[test]
fn trace_polynomial_pontryagin_is_second_elementary_symmetric() {
    let p1 = TracePolynomial::pontryagin(1);
    let expected = TracePolynomial::power_trace(1)
        .mul(&TracePolynomial::power_trace(1))
        .scale(&Scalar::new(1, 2))
        .add(&TracePolynomial::power_trace(2).scale(&Scalar::new(-1, 2)));
    assert_eq!(p1, expected);
}

// ---------------------------------------------------------------- lifts

fn random_metric_field(spec: &[Vec<(i64, usize, usize)>]) -> AutField {
    AutField::from_polys(&[quadratic(2, &spec[0]), quadratic(2, &spec[1])], &[]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn metric_lift_preserves_brackets(a in prop::collection::vec(quad_spec(), 2), b in prop::collection::vec(quad_spec(), 2)) {
        let m = MetricJetModel::new(2).unwrap();
        let (fx, fy) = (random_metric_field(&a), random_metric_field(&b));
        let lhs = m.lift(&fx).unwrap().bracket(&m.lift(&fy).unwrap());
        let rhs = m.lift(&fx.bracket(&fy, None).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn connection_lift_preserves_brackets(
        a in prop::collection::vec(quad_spec(), 5),
        b in prop::collection::vec(quad_spec(), 5),
    ) {
        let lie = LieAlgebraData::so3();
        let c = ConnectionJetModel::new(2, lie.clone()).unwrap();
        let field = |s: &[Vec<(i64, usize, usize)>]| {
            let polys: Vec<MultiPoly> = s.iter().map(|q| quadratic(2, q)).collect();
            AutField::from_polys(&polys[..2], &polys[2..]).unwrap()
        };
        let (fx, fy) = (field(&a), field(&b));
        let lhs = c.lift(&fx).unwrap().bracket(&c.lift(&fy).unwrap());
        let rhs = c.lift(&fx.bracket(&fy, Some(&lie)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_pfaffian_squares_to_determinant_on_random_skew_matrices(
        entries in prop::collection::vec(-5i64..=5, 6),
    ) {
        let ctx = JetContext::new(1, 1).unwrap();
        let mut m = vec![vec![Scalar::zero(); 4]; 4];
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                m[i][j] = Scalar::from_int(entries[k]);
                m[j][i] = -m[i][j].clone();
                k += 1;
            }
        }
        let a = MatrixOfForms::from_fn(ctx, 4, |i, j| JetForm::constant(ctx, m[i][j].clone()));
        let pf = a.pfaffian().unwrap();
        prop_assert_eq!(pf.wedge(&pf), a.determinant().unwrap());
    }
}

#[test]
fn lift_rejects_mismatched_fields() {
    let m = MetricJetModel::new(2).unwrap();
    let f = AutField::from_polys(&[x(0)], &[]).unwrap();
    assert!(matches!(m.lift(&f), Err(Error::Precondition(_))));
    let c = ConnectionJetModel::new(2, LieAlgebraData::abelian(1)).unwrap();
    let g = AutField::from_polys(&[x(0), x(1)], &[]).unwrap();
    assert!(c.lift(&g).is_err());
    assert!(AutField::from_polys(&[x(2)], &[]).is_err());
}

#[test]
fn lift_identities_at_the_normal_point() {
    for n in 1..=3 {
        let r = verify_lemma15(n).unwrap();
        assert!(r.passed(), "{r}");
    }
    for lie in [LieAlgebraData::abelian(1), LieAlgebraData::so3()] {
        let r = verify_lemma20(2, &lie).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn curvature_on_a_field_with_itself_vanishes() {
    let m = MetricJetModel::new(2).unwrap();
    let f = AutField::from_polys(&[&x(0) * &x(1), &x(0) * &x(0)], &[]).unwrap();
    let pr = m.lift(&f).unwrap().prolong();
    for i in 0..2 {
        for j in 0..2 {
            let v = m.omega_hor_curvature().entry(i, j).interior(&pr).interior(&pr);
            assert!(v.is_zero());
        }
    }
}

#[test]
fn bianchi_identities_hold() {
    let r = verify_bianchi(2, &LieAlgebraData::so3()).unwrap();
    assert!(r.passed(), "{r}");
}

// ---------------------------------------------------------------- ν_σ, ψ_σ

#[test]
fn nu_sigma_kernels_are_isotropy_algebras() {
    for n in 2..=3 {
        let so = n * (n - 1) / 2;
        let lie = LieAlgebraData::so3();
        let m = MetricJetModel::new(n).unwrap();
        let c = ConnectionJetModel::new(n, lie.clone()).unwrap();
        for t in 1..=3 {
            assert_eq!(nu_sigma_kernel_dimension(&[&m], t).unwrap(), so);
            assert_eq!(nu_sigma_kernel_dimension(&[&m, &c], t).unwrap(), so + lie.dim());
        }
        // connections alone leave the linear part of the base field free
        assert!(nu_sigma_kernel_dimension(&[&c], 2).unwrap() > so + lie.dim());
    }
}

#[test]
fn psi_sigma_maps_curvature_polynomials_to_ce_cochains() {
    let r = verify_prop14(2).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn psi_sigma_is_a_cochain_map() {
    let m = MetricJetModel::new(2).unwrap();
    let a = FormalVFModel::new(2, None).unwrap();
    let lambda = m.theta_form().scale(&Scalar::new(-1, 2));
    // invariant forms only: single matrix entries do not commute with the lifts
    let forms = [
        lambda.trace(),
        lambda.wedge(&lambda).unwrap().wedge(&lambda).unwrap().trace(),
        m.omega_hor_curvature().trace(),
        WeilProbe::MixedTrace.on_forms(&lambda, m.omega_hor_curvature()).unwrap(),
    ];
    for alpha in forms {
        let d_alpha = alpha.d();
        let t = d_alpha.jet_order().max(alpha.jet_order()) + 1;
        let lhs = psi_sigma(&m, &d_alpha, t).unwrap();
        let rhs = a.apply(&psi_sigma(&m, &alpha, t).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "alpha = {alpha}");
    }
}

#[test]
fn psi_sigma_rejects_small_truncation() {
    let m = MetricJetModel::new(2).unwrap();
    let om = m.omega_hor_curvature().trace();
    assert!(matches!(psi_sigma(&m, &om, 1), Err(Error::Truncation(_))));
}

// ---------------------------------------------------------------- connections

fn so3_potential() -> Vec<Vec<MultiPoly>> {
    vec![vec![x(1), &x(0) * &x(0)], vec![x(0), int(2)], vec![&x(0) * &x(1), x(1)]]
}

#[test]
fn quadratic_factor_is_calibrated_against_classical_curvature() {
    let c = ConnectionJetModel::new(2, LieAlgebraData::so3()).unwrap();
    let k = calibrate_quadratic_factor(&c, &so3_potential()).unwrap();
    assert_eq!(k, Some(gauge_quadratic_factor()));
    assert_eq!(c.pullback_curvature(&gauge_quadratic_factor(), &so3_potential()).unwrap(), c.classical_curvature(&so3_potential()).unwrap());
    let abelian = ConnectionJetModel::new(2, LieAlgebraData::abelian(1)).unwrap();
    assert_eq!(calibrate_quadratic_factor(&abelian, &[vec![x(1), x(0)]]).unwrap(), None);
}

#[test]
fn gauge_curvature_forms_are_closed() {
    let lie = LieAlgebraData::so3();
    let c = ConnectionJetModel::new(2, lie.clone()).unwrap();
    let f = c.curvature().adjoint_matrix(&lie).unwrap();
    let p = TracePolynomial::power_trace(2).evaluate(&f).unwrap();
    assert!(!p.is_zero());
    assert!(p.d().is_zero());
    let ab = ConnectionJetModel::new(3, LieAlgebraData::abelian(1)).unwrap();
    let f = ab.curvature().component(0).clone();
    assert!(f.d().is_zero());
}

// ---------------------------------------------------------------- transgression

#[test]
fn transgression_differential_is_the_difference_of_characteristic_forms() {
    let m = MetricJetModel::new(2).unwrap();
    let p = TracePolynomial::power_trace(2);
    let tp = transgression(&p, &m.omega_hor(), &m.connection()).unwrap();
    let rhs = &p.evaluate(m.curvature()).unwrap() - &p.evaluate(m.omega_hor_curvature()).unwrap();
    assert_eq!(tp.d(), rhs);
    assert!(transgression(&p, &m.connection(), &m.connection()).unwrap().is_zero());
}

#[test]
fn abelian_transgression_is_chern_simons() {
    let c = ConnectionJetModel::new(3, LieAlgebraData::abelian(1)).unwrap();
    let ctx = c.context();
    let a = c.connection_form().diagonal_matrix();
    let zero = MatrixOfForms::zero(ctx, 1);
    let p = TracePolynomial::power_trace(2);
    let cs = transgression(&p, &zero, &a).unwrap();
    let aa = a.entry(0, 0);
    assert_eq!(cs, aa.wedge(&aa.d()));
    assert!(transgression(&p, &zero, &MatrixOfForms::zero(ctx, 2)).is_err());
}

// ---------------------------------------------------------------- equivariant forms

#[test]
fn abelian_equivariant_curvature_is_cartan_closed_and_sign_is_pinned() {
    let c = ConnectionJetModel::new(2, LieAlgebraData::abelian(1)).unwrap();
    let par = c.parameter(0, 2).unwrap();
    let fg = c.equivariant_curvature(&par).unwrap();
    assert!(cartan_d(fg.component(0), &par, &c).unwrap().is_zero());
    let sq = fg.component(0).wedge(fg.component(0));
    assert!(cartan_d(&sq, &par, &c).unwrap().is_zero());
    let wrong = c.curvature().component(0) + c.moment_term(&par.field()).component(0);
    assert!(!cartan_d(&wrong, &par, &c).unwrap().is_zero());
}

#[test]
fn nonabelian_equivariant_characteristic_form_is_cartan_closed() {
    let lie = LieAlgebraData::so3();
    let c = ConnectionJetModel::new(2, lie.clone()).unwrap();
    let par = c.parameter(0, 2).unwrap();
    let fg = c.equivariant_curvature(&par).unwrap().adjoint_matrix(&lie).unwrap();
    let e = TracePolynomial::power_trace(2).evaluate(&fg).unwrap();
    let eq = EquivariantJetForm::new(e, par);
    assert_eq!(eq.equivariant_degrees().into_iter().collect::<Vec<_>>(), vec![4]);
    assert!(eq.cartan_d(&c).unwrap().form().is_zero());
}

#[test]
fn metric_equivariant_characteristic_form_is_cartan_closed() {
    let m = MetricJetModel::new(2).unwrap();
    let par = m.parameter(0, 3).unwrap();
    let og = m.equivariant_curvature(&par).unwrap();
    for p in [TracePolynomial::power_trace(2), TracePolynomial::pontryagin(1)] {
        let e = p.evaluate(&og).unwrap();
        assert!(cartan_d(&e, &par, &m).unwrap().is_zero());
    }
    // Ω + ω(X̃) is not closed
    let wrong = m.curvature().add(&m.vertical_term(&par.field()).unwrap()).unwrap();
    let e = TracePolynomial::power_trace(2).evaluate(&wrong).unwrap();
    assert!(!cartan_d(&e, &par, &m).unwrap().is_zero());
}

#[test]
fn equivariant_curvature_requires_truncation_two() {
    let m = MetricJetModel::new(2).unwrap();
    let par = m.parameter(0, 1).unwrap();
    assert!(matches!(m.equivariant_curvature(&par), Err(Error::Truncation(_))));
}

#[test]
fn moment_map_is_the_covariant_derivative_term() {
    let m = MetricJetModel::new(2).unwrap();
    let par = m.parameter(0, 2).unwrap();
    for p in [TracePolynomial::power_trace(2), TracePolynomial::pontryagin(1)] {
        let mu = m.moment_integrand(&p, &par).unwrap();
        assert_eq!(mu, m.moment_from_nabla(&p, &par.field()).unwrap());
        let zero = AutField::from_polys(&[MultiPoly::zero(), MultiPoly::zero()], &[]).unwrap();
        let at_zero = EquivariantJetForm::new(mu, par).evaluate_at(&zero).unwrap();
        assert!(at_zero.is_zero());
    }
    // for tr² the moment integrand is −2 tr(W Ω)
    let p = TracePolynomial::power_trace(2);
    let w = m.covariant_derivative_skew(&par.field());
    let expected = w.wedge(m.curvature()).unwrap().trace().scale(&Scalar::from_int(-2));
    assert_eq!(m.moment_integrand(&p, &par).unwrap(), expected);
}

/// α(X + sZ) at s = ±1 and the exact derivative at s = 0 of a quadratic in s.
fn polarized_derivative(form: &EquivariantJetForm, x: &AutField, z: &AutField) -> JetForm {
    let plus = form.evaluate_at(&x.add(z)).unwrap();
    let minus = form.evaluate_at(&x.add(&z.scale(&Scalar::from_int(-1)))).unwrap();
    (&plus - &minus).scale(&Scalar::new(1, 2))
}

#[test]
fn equivariant_forms_satisfy_the_invariance_condition() {
    // L_{Y_N}(α(X)) = d/ds α(X + s[Y, X]) for α quadratic in X
    let lie = LieAlgebraData::so3();
    let c = ConnectionJetModel::new(2, lie.clone()).unwrap();
    let par = c.parameter(0, 3).unwrap();
    let fg = c.equivariant_curvature(&par).unwrap().adjoint_matrix(&lie).unwrap();
    let alpha = EquivariantJetForm::new(TracePolynomial::power_trace(2).evaluate(&fg).unwrap(), par);
    let fx = AutField::from_polys(&[x(1), &x(0) * &x(1)], &[x(0), int(1), x(1)]).unwrap();
    let fy = AutField::from_polys(&[int(1), x(0)], &[int(0), x(1), int(2)]).unwrap();
    let z = fy.bracket(&fx, Some(&lie)).unwrap();
    let pry = c.lift(&fy).unwrap().prolong();
    let lhs = alpha.evaluate_at(&fx).unwrap().lie_derivative(&pry);
    assert_eq!(lhs, polarized_derivative(&alpha, &fx, &z));

    let m = MetricJetModel::new(2).unwrap();
    let par = m.parameter(0, 3).unwrap();
    let og = m.equivariant_curvature(&par).unwrap();
    let alpha = EquivariantJetForm::new(TracePolynomial::power_trace(2).evaluate(&og).unwrap(), par);
    let fx = AutField::from_polys(&[&x(0) * &x(1), x(0)], &[]).unwrap();
    let fy = AutField::from_polys(&[x(1), int(1)], &[]).unwrap();
    let z = fy.bracket(&fx, None).unwrap();
    let pry = m.lift(&fy).unwrap().prolong();
    let lhs = alpha.evaluate_at(&fx).unwrap().lie_derivative(&pry);
    assert_eq!(lhs, polarized_derivative(&alpha, &fx, &z));
}

#[test]
fn parameter_components_split_by_degree() {
    let m = MetricJetModel::new(2).unwrap();
    let par = m.parameter(0, 2).unwrap();
    let og = m.equivariant_curvature(&par).unwrap();
    let e = TracePolynomial::power_trace(2).evaluate(&og).unwrap();
    let parts: Vec<JetForm> = (0..=2).map(|k| parameter_component(&e, k)).collect();
    assert_eq!(&(&parts[0] + &parts[1]) + &parts[2], e);
    assert_eq!(parts[0], TracePolynomial::power_trace(2).evaluate(m.curvature()).unwrap());
    assert_eq!(max_parameter_degree(&e), 2);
    assert_eq!(parts[1].degrees().into_iter().collect::<Vec<_>>(), vec![2]);
}

#[test]
fn cartan_suite_passes_for_both_gauge_algebras() {
    for lie in [LieAlgebraData::abelian(1), LieAlgebraData::so3()] {
        let r = verify_cartan(2, &lie, 3).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.len() >= 3);
    }
}
