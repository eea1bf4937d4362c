use jetvar::exact_algebra::Scalar;
use jetvar::weil_cohomology::{check_even_euler_extension, dimensions, LieAlgebraData, SubalgebraEmbedding, WeilAlgebra};

#[test]
fn weil_algebras_are_acyclic() {
    for g in [LieAlgebraData::gl(1), LieAlgebraData::gl(2), LieAlgebraData::so3(), LieAlgebraData::abelian(3)] {
        let w = WeilAlgebra::build(&g, None).unwrap();
        let t = w.relative_cohomology(&SubalgebraEmbedding::trivial(&g), 0..=6).unwrap();
        assert_eq!(dimensions(&t), [1, 0, 0, 0, 0, 0, 0], "{}", g.label);
    }
}

#[test]
fn even_euler_extension_n2() {
    let r = check_even_euler_extension(2, 4).unwrap();
    assert_eq!(r.relative_dims, [1, 0, 1, 0, 1]);
    assert_eq!(r.expected_dims, r.relative_dims);
    assert!(r.holds(), "{r:?}");
    assert!(r.ratio.is_some_and(|x| !x.is_zero()));
    let _ = Scalar::zero();
}

#[test]
fn invariant_polynomial_dimensions() {
    // I^{SO(2)}: one generator in degree 2; I^{SO(3)}: p1 in degree 4.
    let so2 = LieAlgebraData::so(2);
    let w = WeilAlgebra::build(&so2, None).unwrap();
    assert_eq!(dimensions(&w.relative_cohomology(&SubalgebraEmbedding::full(&so2), 0..=4).unwrap()), [1, 0, 1, 0, 1]);
    let so3 = LieAlgebraData::so3();
    let w = WeilAlgebra::build(&so3, None).unwrap();
    assert_eq!(dimensions(&w.relative_cohomology(&SubalgebraEmbedding::full(&so3), 0..=4).unwrap()), [1, 0, 0, 0, 1]);
}

#[test]
fn truncation_stability() {
    let so2 = LieAlgebraData::so(2);
    let h = SubalgebraEmbedding::full(&so2);
    let a = WeilAlgebra::build(&so2, Some(3)).unwrap().relative_cohomology(&h, 0..=5).unwrap();
    let b = WeilAlgebra::build(&so2, Some(4)).unwrap().relative_cohomology(&h, 0..=5).unwrap();
    assert_eq!(dimensions(&a), dimensions(&b));
}
