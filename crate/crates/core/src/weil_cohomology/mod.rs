//! Weil algebras, their truncations, relative cohomology and WO_n.

mod lie;
mod weil;

pub use lie::{LieAlgebraData, SubalgebraEmbedding};
pub use weil::{
    check_even_euler_extension, determinant, dimensions, matrix_product, pfaffian, DegreeCohomology, EulerExtensionReport, WeilAlgebra,
    WoAlgebra,
};
#[allow(unused_imports)]
pub(crate) use weil::{degree_cohomology, table_from};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Scalar;
    use crate::superalgebra::{SuperElement, SuperWord};

    #[test]
    fn abelian_differential() {
        let w = WeilAlgebra::build(&LieAlgebraData::gl(1), None).unwrap();
        let d = w.differential();
        let l = SuperElement::generator(w.lambda(0).clone());
        assert_eq!(w.algebra().apply(d, &l).unwrap(), SuperElement::generator(w.curvature(0).clone()));
        assert!(w.algebra().apply(d, &SuperElement::generator(w.curvature(0).clone())).unwrap().is_zero());
    }

    #[test]
    fn so3_curvature_differential_uses_epsilon() {
        let w = WeilAlgebra::build(&LieAlgebraData::so3(), None).unwrap();
        let dl = w.algebra().apply(w.differential(), &SuperElement::generator(w.curvature(0).clone())).unwrap();
        // dΛ^1 = c^1_{23}Λ^2λ^3 + c^1_{32}Λ^3λ^2
        let expected = SuperElement::product(&[w.curvature(1).clone(), w.lambda(2).clone()])
            - SuperElement::product(&[w.curvature(2).clone(), w.lambda(1).clone()]);
        assert_eq!(dl, expected);
    }

    #[test]
    fn interior_and_lie_derivative() {
        let w = WeilAlgebra::build(&LieAlgebraData::so3(), None).unwrap();
        let i1 = w.interior_basis(0).unwrap();
        assert_eq!(i1.apply(&SuperElement::generator(w.lambda(0).clone())).unwrap(), SuperElement::one());
        assert!(i1.apply(&SuperElement::generator(w.curvature(0).clone())).unwrap().is_zero());
        let v = [Scalar::one(), Scalar::zero(), Scalar::zero()];
        assert!(w.lie_derivative(&v).unwrap().apply(&SuperElement::one()).unwrap().is_zero());
        assert!(w.interior_basis(7).is_err());
    }

    #[test]
    fn lie_derivative_is_cartan_formula_on_words() {
        let w = WeilAlgebra::build(&LieAlgebraData::gl(2), None).unwrap();
        let d = w.differential();
        for i in 0..4 {
            let iota = w.interior_basis(i).unwrap();
            let v: Vec<Scalar> = (0..4).map(|j| Scalar::from_int((i == j) as i64)).collect();
            let lie = w.lie_derivative(&v).unwrap();
            for deg in 0..=5 {
                for word in w.algebra().basis(deg, None) {
                    let e = SuperElement::word(word);
                    let lhs = lie.apply(&e).unwrap();
                    let rhs = d.apply(&iota.apply(&e).unwrap()).unwrap() + iota.apply(&d.apply(&e).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn truncated_gl1_and_wo1() {
        let gl1 = LieAlgebraData::gl(1);
        let w = WeilAlgebra::build(&gl1, Some(1)).unwrap();
        let t = w.relative_cohomology(&SubalgebraEmbedding::trivial(&gl1), 0..=3).unwrap();
        assert_eq!(dimensions(&t), [1, 0, 0, 1]);
        let wo = WoAlgebra::build(1).unwrap();
        assert_eq!(dimensions(&wo.cohomology(0..=3).unwrap()), [1, 0, 0, 1]);
        let b3 = wo.algebra().basis(3, None);
        assert_eq!(b3.len(), 1);
        assert_eq!(b3[0].to_string(), "U1 C1");
        assert_eq!(wo.algebra().basis(2, None), vec![SuperWord::generator(wo.c(1).unwrap())]);
    }

    #[test]
    fn truncation_zero_is_exterior_algebra() {
        let w = WeilAlgebra::build(&LieAlgebraData::so3(), Some(0)).unwrap();
        assert_eq!(w.algebra().basis(2, None).len(), 3);
        assert!(w.algebra().basis(6, None).is_empty() || w.algebra().basis(6, None).len() == 0);
    }

    #[test]
    fn wo2_generators_and_cohomology() {
        let wo = WoAlgebra::build(2).unwrap();
        let names: Vec<String> = wo.algebra().generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["U1", "C1", "C2"]);
        assert_eq!(dimensions(&wo.cohomology(0..=4).unwrap()), [1, 0, 0, 0, 1]);
    }

    #[test]
    fn so2_invariants() {
        let so2 = LieAlgebraData::so(2);
        let w = WeilAlgebra::build(&so2, None).unwrap();
        let t = w.relative_cohomology(&SubalgebraEmbedding::full(&so2), 0..=4).unwrap();
        assert_eq!(dimensions(&t), [1, 0, 1, 0, 1]);
    }

    #[test]
    fn pfaffian_of_two_by_two() {
        let w = WeilAlgebra::build(&LieAlgebraData::gl(2), None).unwrap();
        let m = w.curvature_matrix().unwrap();
        let skew: Vec<Vec<_>> = (0..2).map(|a| (0..2).map(|b| &m[a][b] - &m[b][a]).collect()).collect();
        assert_eq!(pfaffian(&skew), skew[0][1].clone());
    }
}
