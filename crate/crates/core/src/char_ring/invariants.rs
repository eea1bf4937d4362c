use super::ring::{GeneratorKind, InvariantPolynomial, Presentation};
use crate::error::{Error, Result};
use crate::exact_algebra::{rank, Monomial, MultiPoly, Scalar, SparseMatrix, Var};
use crate::geometry_models::{MatrixOfForms, TracePolynomial};
use crate::jet_calculus::JetForm;
use crate::weil_cohomology::LieAlgebraData;

fn monomials_of_degree(vars: usize, degree: u32) -> Vec<Monomial> {
    fn go(i: usize, vars: usize, left: u32, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        if i == vars {
            if left == 0 {
                out.push(Monomial::from_pairs(acc.clone()));
            }
            return;
        }
        for e in (0..=left).rev() {
            if e > 0 {
                acc.push((Var::Sym(i as u16), e));
            }
            go(i + 1, vars, left - e, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, vars, degree, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the adjoint-invariant polynomials of degree r on a Lie algebra,
/// as the joint kernel of the derivations z ↦ [e_a, z] on degree-r polynomials.
pub fn invariant_polynomial_dimension(lie: &LieAlgebraData, r: u32) -> usize {
    let d = lie.dim();
    let basis = monomials_of_degree(d, r);
    if basis.is_empty() {
        return 0;
    }
    let index: std::collections::HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: std::collections::HashMap<(usize, Monomial), usize> = std::collections::HashMap::new();
    let mut triplets = Vec::new();
    for a in 0..d {
        // Velocity of z_i along [e_a, z]: Σ_j c^i_{aj} z_j.
        let velocity: Vec<MultiPoly> = (0..d)
            .map(|i| MultiPoly::from_terms((0..d).map(|j| (Monomial::var(Var::Sym(j as u16)), lie.c(i, a, j)))))
            .collect();
        for m in &basis {
            let f = MultiPoly::term(m.clone(), Scalar::one());
            let image = f.derive_along(&|v| match v {
                Var::Sym(i) if (i as usize) < d => Some(velocity[i as usize].clone()),
                _ => None,
            });
            for (mono, c) in image.terms() {
                let next = rows.len();
                let row = *rows.entry((a, mono.clone())).or_insert(next);
                triplets.push((row, index[m], c.clone()));
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(rows.len(), basis.len(), triplets);
    basis.len() - rank(&matrix)
}

fn generator_form(kind: GeneratorKind, m: &MatrixOfForms) -> Result<JetForm> {
    match kind {
        GeneratorKind::Pontryagin(k) => TracePolynomial::pontryagin(k).evaluate(m),
        GeneratorKind::Chern(k) => TracePolynomial::elementary(k).evaluate(m),
        GeneratorKind::Euler => m.pfaffian(),
    }
}

/// Characteristic form of an invariant polynomial: generators go to p_k = e_{2k},
/// e = Pf and c_k = e_k of the curvature matrix of their side.
pub fn characteristic_form(poly: &InvariantPolynomial, curvatures: &[&MatrixOfForms]) -> Result<JetForm> {
    let pres = poly.presentation();
    let sides = if pres.is_tensor() { 2 } else { 1 };
    if curvatures.len() != sides {
        return Err(Error::Precondition(format!("{pres} needs {sides} curvature matrices, got {}", curvatures.len())));
    }
    for (side, m) in curvatures.iter().enumerate() {
        let factor = pres.factor(side as u8).expect("side within presentation");
        let expected = match factor {
            Presentation::SpecialOrthogonal(n) | Presentation::Unitary(n) => *n as usize,
            Presentation::Tensor(..) => unreachable!("nested tensor presentations are rejected"),
        };
        if m.size() != expected {
            return Err(Error::Precondition(format!("{factor} needs a {expected}x{expected} curvature, got size {}", m.size())));
        }
    }
    let ctx = curvatures[0].context();
    let gens = pres.generators();
    let values = gens
        .iter()
        .map(|g| generator_form(g.kind, curvatures[g.side as usize]))
        .collect::<Result<Vec<JetForm>>>()?;
    let mut out = JetForm::zero(ctx);
    for (m, c) in poly.poly().terms() {
        let mut term = JetForm::constant(ctx, c.clone());
        for (v, e) in m.factors() {
            let Var::Sym(i) = v else { unreachable!("ring elements only use generator symbols") };
            for _ in 0..*e {
                term = term.wedge(&values[*i as usize]);
            }
        }
        out = &out + &term;
    }
    Ok(out)
}
