use jetvar::exact_algebra::{Monomial, MultiIndex, MultiPoly, RationalFunction, Scalar, Var};
use jetvar::jet_calculus::{
    cartan_lie_derivative, commutator_on, euler_lagrange, euler_lagrange_expressions, functional_equiv, helmholtz,
    interior_euler, FormGen, FormWord, JetContext, JetForm, JetVectorField, ProjectableField,
};
use proptest::prelude::*;

fn pool(ctx: JetContext, max_order: u32) -> Vec<Var> {
    let mut v: Vec<Var> = (0..ctx.n()).map(Var::x).collect();
    for idx in MultiIndex::all_up_to(ctx.n(), max_order) {
        for a in 0..ctx.m() {
            v.push(Var::u(a, idx));
        }
    }
    v
}

/// Polynomial of degree ≤ 2 from (coefficient, first variable, second variable) triples;
/// an out-of-range index means "no variable".
fn poly_from(vars: &[Var], spec: &[(i64, usize, usize)]) -> RationalFunction {
    let mut p = MultiPoly::zero();
    for &(c, i, j) in spec {
        let mut pairs = Vec::new();
        for k in [i, j] {
            if k < vars.len() {
                pairs.push((vars[k], 1));
            }
        }
        p.add_term(Monomial::from_pairs(pairs), Scalar::from_int(c));
    }
    RationalFunction::from(p)
}

fn poly_spec() -> impl Strategy<Value = Vec<(i64, usize, usize)>> {
    prop::collection::vec((-3i64..=3, 0usize..24, 0usize..24), 1..4)
}

fn contexts() -> impl Strategy<Value = JetContext> {
    (1usize..=2, 1usize..=2).prop_map(|(n, m)| JetContext::new(n, m).unwrap())
}

/// Random form: a few words from {dx^i, θ^α_J (|J| ≤ 1)} of length ≤ 3 with polynomial coefficients.
fn form_from(ctx: JetContext, spec: &[(Vec<(i64, usize, usize)>, Vec<usize>)]) -> JetForm {
    let vars = pool(ctx, 2);
    let mut gens: Vec<FormGen> = (0..ctx.n()).map(FormGen::dx).collect();
    for idx in MultiIndex::all_up_to(ctx.n(), 1) {
        for a in 0..ctx.m() {
            gens.push(FormGen::theta(a, idx));
        }
    }
    let mut out = JetForm::zero(ctx);
    for (coef, word) in spec {
        let factors: Vec<FormGen> = word.iter().map(|&k| gens[k % gens.len()]).collect();
        if let Some((s, w)) = FormWord::from_product(&factors) {
            out.add_term(w, poly_from(&vars, coef).scale(&Scalar::from_int(s as i64)));
        }
    }
    out
}

fn form_spec() -> impl Strategy<Value = Vec<(Vec<(i64, usize, usize)>, Vec<usize>)>> {
    prop::collection::vec((poly_spec(), prop::collection::vec(0usize..16, 0..=3)), 1..4)
}

/// Σ_J (−1)^{|J|} D_J (∂L/∂u^α_J), written independently of the form machinery.
fn classical_euler_lagrange(ctx: JetContext, lagrangian: &RationalFunction) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::zero(); ctx.m()];
    for v in lagrangian.vars() {
        if let Var::U { field, idx } = v {
            let mut term = lagrangian.partial(v);
            for dir in idx.directions() {
                term = term.derive_along(&|w| match w {
                    Var::X(k) if k as usize == dir => Some(MultiPoly::one()),
                    Var::U { field, idx } => Some(MultiPoly::var(Var::U { field, idx: idx.plus(dir) })),
                    _ => None,
                });
            }
            if idx.order() % 2 == 1 {
                term = -term;
            }
            out[field as usize] = &out[field as usize] + &term;
        }
    }
    out
}

fn projectable_from(ctx: JetContext, base: &[Vec<(i64, usize, usize)>], vert: &[Vec<(i64, usize, usize)>]) -> ProjectableField {
    let xs: Vec<Var> = (0..ctx.n()).map(Var::x).collect();
    let mut xu = xs.clone();
    xu.extend((0..ctx.m()).map(|a| Var::u(a, MultiIndex::EMPTY)));
    let f = (0..ctx.n()).map(|i| poly_from(&xs, &base[i % base.len()])).collect();
    let g = (0..ctx.m()).map(|a| poly_from(&xu, &vert[a % vert.len()])).collect();
    ProjectableField::new(ctx, f, g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, .. ProptestConfig::default() })]

    #[test]
    fn euler_lagrange_matches_classical_sum(ctx in contexts(), spec in poly_spec()) {
        let lag = poly_from(&pool(ctx, 2), &spec);
        let form = JetForm::volume(ctx).mul_function(&lag);
        let got = euler_lagrange_expressions(&form).unwrap();
        prop_assert_eq!(got, classical_euler_lagrange(ctx, &lag));
    }

    #[test]
    fn bicomplex_identities(ctx in contexts(), spec in form_spec()) {
        let alpha = form_from(ctx, &spec);
        prop_assert!(alpha.d_h().d_h().is_zero());
        prop_assert!(alpha.d_v().d_v().is_zero());
        prop_assert!((alpha.d_h().d_v() + alpha.d_v().d_h()).is_zero());
        prop_assert!(alpha.d().d().is_zero());
    }

    #[test]
    fn interior_euler_is_a_projection(ctx in contexts(), spec in form_spec()) {
        let alpha = form_from(ctx, &spec);
        let n = ctx.n() as u32;
        for k in 1..=2 {
            let top = alpha.d_v().component(n, k);
            let once = interior_euler(&top).unwrap();
            prop_assert_eq!(&interior_euler(&once).unwrap(), &once);
            let lower = alpha.component(n - 1, k);
            prop_assert!(interior_euler(&lower.d_h()).unwrap().is_zero());
        }
    }

    #[test]
    fn helmholtz_kills_euler_lagrange(ctx in contexts(), spec in poly_spec()) {
        let lag = JetForm::volume(ctx).mul_function(&poly_from(&pool(ctx, 2), &spec));
        let el = euler_lagrange(&lag).unwrap();
        prop_assert!(helmholtz(&el).unwrap().is_zero());
    }

    #[test]
    fn prolongation_is_a_bracket_morphism(
        ctx in contexts(),
        fx in prop::collection::vec(poly_spec(), 2), gx in prop::collection::vec(poly_spec(), 2),
        fy in prop::collection::vec(poly_spec(), 2), gy in prop::collection::vec(poly_spec(), 2),
    ) {
        let x = projectable_from(ctx, &fx, &gx);
        let y = projectable_from(ctx, &fy, &gy);
        let (px, py, pxy) = (x.prolong(), y.prolong(), x.bracket(&y).prolong());
        for i in 0..ctx.n() {
            prop_assert_eq!(commutator_on(&px, &py, Var::x(i)), pxy.base(i));
        }
        for idx in MultiIndex::all_up_to(ctx.n(), 3) {
            for a in 0..ctx.m() {
                prop_assert_eq!(commutator_on(&px, &py, Var::u(a, idx)), pxy.fiber(a, &idx));
            }
        }
    }

    #[test]
    fn prolongation_matches_recursive_formula(ctx in contexts(), f in prop::collection::vec(poly_spec(), 2), g in prop::collection::vec(poly_spec(), 2)) {
        // φ_{J+i} = D_i φ_J − Σ_k u_{J+k} D_i f^k
        let x = projectable_from(ctx, &f, &g);
        let pr = x.prolong();
        for idx in MultiIndex::all_up_to(ctx.n(), 2) {
            for a in 0..ctx.m() {
                for i in 0..ctx.n() {
                    let mut expected = ctx.total_derivative(&pr.fiber(a, &idx), i);
                    for k in 0..ctx.n() {
                        let dfk = ctx.total_derivative(&x.base_components()[k], i);
                        expected = &expected - &(&dfk * &RationalFunction::var(Var::u(a, idx.plus(k))));
                    }
                    prop_assert_eq!(pr.fiber(a, &idx.plus(i)), expected);
                }
            }
        }
    }

    #[test]
    fn cartan_formula(ctx in contexts(), f in prop::collection::vec(poly_spec(), 2), g in prop::collection::vec(poly_spec(), 2), spec in form_spec()) {
        let x = projectable_from(ctx, &f, &g);
        let alpha = form_from(ctx, &spec);
        let pr = x.prolong();
        prop_assert_eq!(alpha.lie_derivative(&pr), cartan_lie_derivative(&pr, &alpha));
    }

    #[test]
    fn functional_equivalence_ignores_exact_and_lower_terms(ctx in contexts(), a in form_spec(), b in form_spec(), c in form_spec()) {
        let n = ctx.n() as u32;
        let alpha = form_from(ctx, &a).d_v().component(n, 1);
        let eta = form_from(ctx, &b).component(n - 1, 1);
        let lower = form_from(ctx, &c).d_v().d_v().component(n - 1, 2);
        let beta = &(&alpha + &eta.d_h()) + &lower;
        prop_assert!(functional_equiv(&alpha, &alpha, 1).unwrap());
        prop_assert!(functional_equiv(&alpha, &beta, 1).unwrap());
        prop_assert!(functional_equiv(&beta, &alpha, 1).unwrap());
    }
}

#[test]
fn total_derivatives_commute() {
    let ctx = JetContext::new(2, 1).unwrap();
    let f = &RationalFunction::var(Var::u(0, MultiIndex::unit(0))) * &RationalFunction::var(Var::x(1));
    let g = &f * &RationalFunction::var(Var::u(0, MultiIndex::from_directions(&[0, 1])));
    let d01 = ctx.total_derivative(&ctx.total_derivative(&g, 0), 1);
    let d10 = ctx.total_derivative(&ctx.total_derivative(&g, 1), 0);
    assert_eq!(d01, d10);
}

#[test]
fn bigrade_of_coordinate_differentials() {
    let ctx = JetContext::new(1, 1).unwrap();
    let dy = JetForm::du(ctx, 0, MultiIndex::EMPTY);
    let parts = dy.bigrade();
    assert_eq!(parts[&(1, 0)], JetForm::dx(ctx, 0).mul_function(&RationalFunction::var(Var::u(0, MultiIndex::unit(0)))));
    assert_eq!(parts[&(0, 1)], JetForm::theta(ctx, 0, MultiIndex::EMPTY));
    let prod = dy.wedge(&JetForm::du(ctx, 0, MultiIndex::unit(0)));
    let parts = prod.bigrade();
    assert!(parts.contains_key(&(0, 2)) && parts.contains_key(&(1, 1)));
    let sum = parts.values().fold(JetForm::zero(ctx), |acc, f| acc + f.clone());
    assert_eq!(sum, prod);
    assert_eq!(JetForm::dx(ctx, 0).bigrade().keys().copied().collect::<Vec<_>>(), vec![(1, 0)]);
}

#[test]
fn differentials_of_coordinates() {
    let ctx = JetContext::new(1, 1).unwrap();
    let y = RationalFunction::var(Var::u(0, MultiIndex::EMPTY));
    let f = JetForm::function(ctx, y);
    assert_eq!(f.d_h().to_string(), "u1_1 * d(x1)");
    assert_eq!(f.d_v().to_string(), "th(u1)");
    let top = JetForm::dx(ctx, 0).mul_function(&RationalFunction::var(Var::u(0, MultiIndex::unit(0))));
    assert!(top.d_h().is_zero());
    // d of a coordinate differential vanishes
    assert!(JetForm::du(ctx, 0, MultiIndex::unit(0)).d().is_zero());
}

#[test]
fn lie_derivative_examples() {
    let ctx = JetContext::new(1, 1).unwrap();
    let translation = ProjectableField::new(ctx, vec![RationalFunction::one()], vec![RationalFunction::zero()]).unwrap();
    assert!(JetForm::dx(ctx, 0).lie_derivative(&translation.prolong()).is_zero());
    let fx = &RationalFunction::var(Var::x(0)) * &RationalFunction::var(Var::x(0));
    let x = ProjectableField::new(ctx, vec![fx.clone()], vec![RationalFunction::zero()]).unwrap();
    assert_eq!(JetForm::dx(ctx, 0).interior(&x.prolong()).as_function(), Some(fx));
}

#[test]
fn split_reassembles_prolongation() {
    let ctx = JetContext::new(2, 1).unwrap();
    let x = RationalFunction::var(Var::x(0));
    let u = RationalFunction::var(Var::u(0, MultiIndex::EMPTY));
    let field = ProjectableField::new(ctx, vec![x.clone(), RationalFunction::one()], vec![&u * &x]).unwrap();
    let pr = field.prolong();
    let (ev, tot) = field.split();
    for idx in MultiIndex::all_up_to(2, 3) {
        assert_eq!(pr.fiber(0, &idx), &ev.fiber(0, &idx) + &tot.fiber(0, &idx));
    }
}

#[test]
fn functional_equiv_rejects_degree_mismatch() {
    let ctx = JetContext::new(1, 1).unwrap();
    let vol = JetForm::volume(ctx);
    let theta = JetForm::theta(ctx, 0, MultiIndex::EMPTY);
    assert!(functional_equiv(&theta.wedge(&vol), &vol, 1).is_err());
}
