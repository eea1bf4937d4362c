//! Root-expansion oracle for characteristic series: symmetric functions of
//! formal roots reduced to elementary symmetric polynomials by leading terms.

use jetvar::char_ring::{InvariantPolynomial, Presentation};
use jetvar::exact_algebra::{Monomial, MultiPoly, Scalar, Var};

pub fn root(j: usize) -> Var {
    Var::Sym(200 + j as u16)
}

/// 1/a by the recurrence b_k = −Σ_{i≥1} a_i b_{k−i}.
pub fn reciprocal(a: &[Scalar]) -> Vec<Scalar> {
    let mut b = vec![a[0].recip()];
    for k in 1..a.len() {
        let s: Scalar = (1..=k).map(|i| &a[i] * &b[k - i]).sum();
        b.push(-(s * a[0].recip()));
    }
    b
}

fn truncate(p: &MultiPoly, max: u32) -> MultiPoly {
    MultiPoly::from_terms(p.terms().filter(|(m, _)| m.degree() <= max).map(|(m, c)| (m.clone(), c.clone())))
}

/// Π_j f(r_j) with f given by coefficients, truncated at root degree `max`.
pub fn product(f: &[Scalar], roots: usize, max: u32) -> MultiPoly {
    let mut out = MultiPoly::one();
    for j in 0..roots {
        let fj = MultiPoly::from_terms(f.iter().enumerate().map(|(k, c)| (Monomial::from_pairs(vec![(root(j), k as u32)]), c.clone())));
        out = truncate(&(&out * &fj), max);
    }
    out
}

/// Σ_j f(r_j) with f(0) dropped, plus a constant.
pub fn sum(f: &[Scalar], roots: usize, constant: Scalar) -> MultiPoly {
    let mut out = MultiPoly::constant(constant);
    for j in 0..roots {
        for (k, c) in f.iter().enumerate().skip(1) {
            out.add_term(Monomial::from_pairs(vec![(root(j), k as u32)]), c.clone());
        }
    }
    out
}

fn elementary(k: usize, roots: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for mask in 0u32..(1 << roots) {
        if mask.count_ones() as usize == k {
            let pairs = (0..roots).filter(|j| mask & (1 << j) != 0).map(|j| (root(j), 1)).collect();
            out.add_term(Monomial::from_pairs(pairs), Scalar::one());
        }
    }
    out
}

/// Symmetric polynomial in the roots as Σ c·Π e_k^{a_k}; keys are exponent vectors.
pub fn reduce(mut p: MultiPoly, roots: usize) -> Vec<(Scalar, Vec<u32>)> {
    let e: Vec<MultiPoly> = (1..=roots).map(|k| elementary(k, roots)).collect();
    let mut out = Vec::new();
    while !p.is_zero() {
        let (lead, c) = p
            .terms()
            .map(|(m, c)| ((0..roots).map(|j| m.exponent(root(j))).collect::<Vec<u32>>(), c.clone()))
            .max_by(|a, b| a.0.cmp(&b.0))
            .unwrap();
        let mut exps = Vec::new();
        let mut term = MultiPoly::constant(c.clone());
        for k in 0..roots {
            let a = lead[k] - if k + 1 < roots { lead[k + 1] } else { 0 };
            exps.push(a);
            term = &term * &e[k].pow(a);
        }
        p = &p - &term;
        out.push((c, exps));
    }
    out
}

/// Builds the ring element from a reduction, naming e_k by `prefix{k}`.
pub fn to_ring(pres: &Presentation, reduced: &[(Scalar, Vec<u32>)], prefix: &str) -> InvariantPolynomial {
    let names: Vec<String> = (1..=reduced.first().map_or(0, |r| r.1.len())).map(|k| format!("{prefix}{k}")).collect();
    let terms: Vec<(Scalar, Vec<(&str, u32)>)> = reduced
        .iter()
        .map(|(c, exps)| (c.clone(), exps.iter().enumerate().filter(|(_, &a)| a > 0).map(|(k, &a)| (names[k].as_str(), a)).collect()))
        .collect();
    InvariantPolynomial::from_named_terms(pres, &terms).unwrap()
}

pub fn factorial(k: u32) -> Scalar {
    (1..=k).map(|i| Scalar::from(i)).product()
}

pub fn four_pow(k: u32) -> Scalar {
    Scalar::from(4u32).pow(k)
}
