use crate::error::{Error, Result};
use crate::exact_algebra::{solve, Scalar, SparseMatrix};

/// Finite-dimensional Lie algebra given by structure constants
/// `[e_j, e_k] = c^i_{jk} e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub label: String,
    names: Vec<String>,
    /// `constants[i][j][k] = c^i_{jk}`.
    constants: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebraData {
    pub fn new(label: impl Into<String>, names: Vec<String>, constants: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = names.len();
        let shape_ok = constants.len() == n && constants.iter().all(|m| m.len() == n && m.iter().all(|r| r.len() == n));
        if !shape_ok {
            return Err(Error::StructureConstants(format!("expected a {n}x{n}x{n} array")));
        }
        let g = LieAlgebraData { label: label.into(), names, constants };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != -self.c(i, k, j) {
                        return Err(Error::StructureConstants(format!("c^{i}_{{{j}{k}}} is not antisymmetric")));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = Scalar::zero();
                        for l in 0..n {
                            s += self.c(l, j, k) * self.c(m, i, l);
                            s += self.c(l, k, i) * self.c(m, j, l);
                            s += self.c(l, i, j) * self.c(m, k, l);
                        }
                        if !s.is_zero() {
                            return Err(Error::StructureConstants(format!(
                                "Jacobi identity fails for ({}, {}, {})",
                                self.names[i], self.names[j], self.names[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.constants[i][j][k].clone()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().flatten().flatten().all(|c| c.is_zero())
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for j in 0..n {
            if x[j].is_zero() {
                continue;
            }
            for k in 0..n {
                if y[k].is_zero() {
                    continue;
                }
                let xy = &x[j] * &y[k];
                for (i, o) in out.iter_mut().enumerate() {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        *o += c * &xy;
                    }
                }
            }
        }
        out
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| i.to_string()).collect();
        let constants = vec![vec![vec![Scalar::zero(); n]; n]; n];
        LieAlgebraData { label: format!("u1^{n}"), names, constants }
    }

    /// gl(n) in the matrix-unit basis `E_ab`, named `a_b` and indexed `a*n + b`.
    pub fn gl(n: usize) -> Self {
        let d = n * n;
        let idx = |a: usize, b: usize| a * n + b;
        let mut constants = vec![vec![vec![Scalar::zero(); d]; d]; d];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        // [E_ab, E_ce] = δ_bc E_ae − δ_ea E_cb
                        if b == c {
                            constants[idx(a, e)][idx(a, b)][idx(c, e)] += Scalar::one();
                        }
                        if e == a {
                            constants[idx(c, b)][idx(a, b)][idx(c, e)] -= Scalar::one();
                        }
                    }
                }
            }
        }
        let names = (0..d).map(|i| format!("{}_{}", i / n + 1, i % n + 1)).collect();
        LieAlgebraData { label: format!("gl{n}"), names, constants }
    }

    /// so(3) with `[e_j, e_k] = ε_{ijk} e_i`.
    pub fn so3() -> Self {
        let mut constants = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            constants[i][j][k] = Scalar::one();
            constants[i][k][j] = Scalar::from_int(-1);
        }
        LieAlgebraData { label: "so3".into(), names: vec!["1".into(), "2".into(), "3".into()], constants }
    }

    /// so(n) as the span of `E_ab − E_ba` (a < b) inside gl(n).
    pub fn so(n: usize) -> Self {
        SubalgebraEmbedding::so_in_gl(n).sub
    }

    /// Direct sum; the right summand's names get the prefix `g`.
    pub fn product(left: &LieAlgebraData, right: &LieAlgebraData) -> Self {
        let (p, q) = (left.dim(), right.dim());
        let d = p + q;
        let mut constants = vec![vec![vec![Scalar::zero(); d]; d]; d];
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    constants[i][j][k] = left.c(i, j, k);
                }
            }
        }
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    constants[p + i][p + j][p + k] = right.c(i, j, k);
                }
            }
        }
        let mut names = left.names.clone();
        names.extend(right.names.iter().map(|s| format!("g{s}")));
        LieAlgebraData { label: format!("{}x{}", left.label, right.label), names, constants }
    }
}

/// Lie subalgebra given by the images of its basis vectors.
#[derive(Clone, Debug)]
pub struct SubalgebraEmbedding {
    pub ambient: LieAlgebraData,
    pub sub: LieAlgebraData,
    /// `inclusion[a]` is the ambient coordinate vector of the a-th sub basis vector.
    pub inclusion: Vec<Vec<Scalar>>,
}

impl SubalgebraEmbedding {
    /// Derives the sub structure constants from the ambient bracket; fails if the
    /// span is not closed or the images are dependent.
    pub fn from_inclusion(ambient: &LieAlgebraData, label: &str, names: Vec<String>, inclusion: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = ambient.dim();
        let r = inclusion.len();
        if names.len() != r || inclusion.iter().any(|v| v.len() != n) {
            return Err(Error::NotSubalgebra("inclusion shape mismatch".into()));
        }
        let m = SparseMatrix::from_columns(n, &inclusion);
        if crate::exact_algebra::rank(&m) != r {
            return Err(Error::NotSubalgebra("inclusion is not injective".into()));
        }
        let mut constants = vec![vec![vec![Scalar::zero(); r]; r]; r];
        for a in 0..r {
            for b in 0..r {
                let br = ambient.bracket(&inclusion[a], &inclusion[b]);
                let coeffs = solve(&m, &br)
                    .ok_or_else(|| Error::NotSubalgebra(format!("[{}, {}] leaves the span", names[a], names[b])))?;
                for (c, v) in coeffs.into_iter().enumerate() {
                    constants[c][a][b] = v;
                }
            }
        }
        let sub = LieAlgebraData::new(label, names, constants)?;
        Ok(SubalgebraEmbedding { ambient: ambient.clone(), sub, inclusion })
    }

    pub fn full(g: &LieAlgebraData) -> Self {
        let n = g.dim();
        let inclusion = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        SubalgebraEmbedding { ambient: g.clone(), sub: g.clone(), inclusion }
    }

    pub fn trivial(g: &LieAlgebraData) -> Self {
        let sub = LieAlgebraData { label: "0".into(), names: Vec::new(), constants: Vec::new() };
        SubalgebraEmbedding { ambient: g.clone(), sub, inclusion: Vec::new() }
    }

    pub fn so_in_gl(n: usize) -> Self {
        let gl = LieAlgebraData::gl(n);
        let mut names = Vec::new();
        let mut inclusion = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut v = vec![Scalar::zero(); n * n];
                v[a * n + b] = Scalar::one();
                v[b * n + a] = Scalar::from_int(-1);
                names.push(format!("{}{}", a + 1, b + 1));
                inclusion.push(v);
            }
        }
        Self::from_inclusion(&gl, &format!("so{n}"), names, inclusion).expect("so(n) is a subalgebra of gl(n)")
    }

    /// Block embedding of `h1 × h2` into `g1 × g2`.
    pub fn product(first: &SubalgebraEmbedding, second: &SubalgebraEmbedding) -> Self {
        let ambient = LieAlgebraData::product(&first.ambient, &second.ambient);
        let (p, q) = (first.ambient.dim(), second.ambient.dim());
        let mut inclusion = Vec::new();
        for v in &first.inclusion {
            let mut w = v.clone();
            w.extend(std::iter::repeat(Scalar::zero()).take(q));
            inclusion.push(w);
        }
        for v in &second.inclusion {
            let mut w = vec![Scalar::zero(); p];
            w.extend(v.iter().cloned());
            inclusion.push(w);
        }
        let sub = LieAlgebraData::product(&first.sub, &second.sub);
        SubalgebraEmbedding { ambient, sub, inclusion }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_rejects_bad_constants() {
        let mut c = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        // [e0, e1] = e1, [e1, e2] = e0
        c[1][0][1] = Scalar::one();
        c[1][1][0] = Scalar::from_int(-1);
        c[0][1][2] = Scalar::one();
        c[0][2][1] = Scalar::from_int(-1);
        assert!(LieAlgebraData::new("bad", vec!["a".into(), "b".into(), "c".into()], c).is_err());
        let mut c = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        c[0][0][1] = Scalar::one();
        assert!(LieAlgebraData::new("skew", vec!["a".into(), "b".into()], c).is_err());
    }

    #[test]
    fn builtins_validate() {
        for g in [LieAlgebraData::gl(2), LieAlgebraData::gl(3), LieAlgebraData::so3(), LieAlgebraData::abelian(4)] {
            LieAlgebraData::new(g.label.clone(), g.names.clone(), g.constants.clone()).unwrap();
        }
        assert_eq!(LieAlgebraData::so(3).dim(), 3);
        assert!(LieAlgebraData::so(2).is_abelian());
    }

    #[test]
    fn gl_commutator_of_matrix_units() {
        let g = LieAlgebraData::gl(2);
        // [E_12, E_21] = E_11 − E_22
        let e = |i: usize| (0..4).map(|j| Scalar::from_int((i == j) as i64)).collect::<Vec<_>>();
        let br = g.bracket(&e(1), &e(2));
        assert_eq!(br, vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::from_int(-1)]);
    }

    #[test]
    fn non_closed_span_rejected() {
        let g = LieAlgebraData::gl(2);
        let v = |i: usize| (0..4).map(|j| Scalar::from_int((i == j) as i64)).collect::<Vec<_>>();
        let err = SubalgebraEmbedding::from_inclusion(&g, "h", vec!["a".into(), "b".into()], vec![v(1), v(2)]);
        assert!(matches!(err, Err(Error::NotSubalgebra(_))));
    }
}
