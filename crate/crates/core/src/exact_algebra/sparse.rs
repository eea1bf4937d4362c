use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;

/// Sparse row of a matrix: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Exact sparse matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SliceError {
    #[error("shape mismatch: d_out is {out_rows}x{out_cols}, d_in is {in_rows}x{in_cols}, basis has {basis} labels")]
    Shape { out_rows: usize, out_cols: usize, in_rows: usize, in_cols: usize, basis: usize },
    #[error("d_out ∘ d_in is nonzero ({nonzero} entries); the differential is wrongly built")]
    NonzeroComposite { nonzero: usize },
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Scalar::one()));
        }
        m
    }

    /// Builds from (row, col, value) triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of bounds for {rows}x{cols}");
            let slot = acc[r].entry(c).or_default();
            *slot += &v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        SparseMatrix::from_triplets(rows.len(), cols, entries)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        SparseMatrix::from_dense(&dense)
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let entries = columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, v)| (i, j, v.clone())));
        SparseMatrix::from_triplets(rows, columns.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r]
            .binary_search_by(|e| e.0.cmp(&c))
            .map_or_else(|_| Scalar::zero(), |i| self.data[r][i].1.clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.entries().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    *acc.entry(*j).or_default() += &(a * b);
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        self.data
            .iter()
            .map(|row| row.iter().fold(Scalar::zero(), |acc, (j, a)| acc + a * &v[*j]))
            .collect()
    }

    /// Permutes rows and columns: entry (r, c) moves to (row_perm[r], col_perm[c]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries().map(|(i, j, v)| (row_perm[i], col_perm[j], v.clone())),
        )
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Columns restricted to `keep`, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in keep.iter().enumerate() {
            pos[c] = k;
        }
        SparseMatrix::from_triplets(
            self.rows,
            keep.len(),
            self.entries().filter(|(_, j, _)| pos[*j] != usize::MAX).map(|(i, j, v)| (i, pos[j], v.clone())),
        )
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn integer_row(row: &SparseRow) -> SparseRow {
    let l = row.iter().fold(Scalar::one(), |l, (_, v)| l.lcm_with_denom(v));
    row.iter().map(|(j, v)| (*j, v * &l)).collect()
}

/// a*x − b*y for sparse rows.
fn combine(a: &Scalar, x: &SparseRow, b: &Scalar, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &SparseRow, c: usize) -> Option<&Scalar> {
    row.binary_search_by(|e| e.0.cmp(&c)).ok().map(|i| &row[i].1)
}

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integer rows. At each step the pivot column is the
/// smallest column still occupied, and the pivot row is the sparsest candidate.
/// Every remaining row is updated as (p·r − r_c·pivot)/p_prev, which stays integral.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut rows: Vec<SparseRow> = m.data.iter().filter(|r| !r.is_empty()).map(integer_row).collect();
    let mut prev = Scalar::one();
    let mut rank = 0;
    loop {
        rows.retain(|r| !r.is_empty());
        if rows.is_empty() {
            return rank;
        }
        let col = rows.iter().map(|r| r[0].0).min().expect("nonempty");
        let piv_idx = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .expect("pivot exists");
        let pivot = rows.swap_remove(piv_idx);
        let p = pivot[0].1.clone();
        for r in rows.iter_mut() {
            let updated = match entry(r, col) {
                Some(rc) => {
                    let rc = rc.clone();
                    combine(&p, r, &rc, &pivot)
                }
                None => r.iter().map(|(j, v)| (*j, v * &p)).collect(),
            };
            *r = updated
                .into_iter()
                .filter(|(j, _)| *j != col)
                .map(|(j, v)| {
                    let q = &v / &prev;
                    debug_assert!(q.is_integer(), "Bareiss division must be exact");
                    (j, q)
                })
                .collect();
        }
        prev = p;
        rank += 1;
    }
}

/// Reduced row echelon form over ℚ: returns the nonzero rows and their pivot columns.
pub fn rref(m: &SparseMatrix) -> (Vec<SparseRow>, Vec<usize>) {
    let mut pending: Vec<SparseRow> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut done: Vec<SparseRow> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        pending.retain(|r| !r.is_empty());
        if pending.is_empty() {
            break;
        }
        let col = pending.iter().map(|r| r[0].0).min().expect("nonempty");
        let piv_idx = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .expect("pivot exists");
        let raw = pending.swap_remove(piv_idx);
        let inv = raw[0].1.recip();
        let pivot: SparseRow = raw.iter().map(|(j, v)| (*j, v * &inv)).collect();
        for r in pending.iter_mut().chain(done.iter_mut()) {
            if let Some(c) = entry(r, col) {
                let c = c.clone();
                *r = combine(&Scalar::one(), r, &c, &pivot);
            }
        }
        done.push(pivot);
        pivots.push(col);
    }
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let rows = order.iter().map(|&i| done[i].clone()).collect();
    let piv = order.iter().map(|&i| pivots[i]).collect();
    (rows, piv)
}

/// Null-space basis from the reduced echelon form.
///
/// The k-th vector has a 1 in the k-th free column and 0 in every other free
/// column, so a vector in the span has coordinates equal to its free entries.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    kernel_with_free_columns(m).0
}

/// Kernel basis together with the free columns giving coordinates on it.
pub fn kernel_with_free_columns(m: &SparseMatrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let (rows, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Scalar::zero(); m.cols];
        v[f] = Scalar::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Some(c) = entry(row, f) {
                v[p] = -c;
            }
        }
        basis.push(v);
    }
    (basis, free)
}

/// Solves m·x = b exactly, if solvable.
pub fn solve(m: &SparseMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, b.len(), "right-hand side length mismatch");
    let aug_entries = m
        .entries()
        .map(|(i, j, v)| (i, j, v.clone()))
        .chain(b.iter().enumerate().map(|(i, v)| (i, m.cols, v.clone())));
    let aug = SparseMatrix::from_triplets(m.rows, m.cols + 1, aug_entries);
    let (rows, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        if let Some(c) = entry(row, m.cols) {
            x[p] = c.clone();
        }
    }
    Some(x)
}

/// Incrementally maintained echelon basis, used to test membership in a span.
#[derive(Default)]
pub struct EchelonSpan {
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        EchelonSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> SparseRow {
        let mut r: SparseRow = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = entry(&r, p) {
                let c = c.clone();
                r = combine(&Scalar::one(), &r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.recip();
        let p = r[0].0;
        self.rows.push(r.iter().map(|(j, x)| (*j, x * &inv)).collect());
        self.pivots.push(p);
        true
    }
}

/// Two consecutive maps of a cochain complex around one degree.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    d_in: SparseMatrix,
    d_out: SparseMatrix,
    labels: Vec<String>,
}

/// Cohomology of one slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCohomology {
    pub dimension: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

impl ComplexSlice {
    /// `d_in`: (basis × previous), `d_out`: (next × basis).
    pub fn new(d_in: SparseMatrix, d_out: SparseMatrix, labels: Vec<String>) -> Result<Self, SliceError> {
        if d_out.cols() != labels.len() || d_in.rows() != labels.len() {
            return Err(SliceError::Shape {
                out_rows: d_out.rows(),
                out_cols: d_out.cols(),
                in_rows: d_in.rows(),
                in_cols: d_in.cols(),
                basis: labels.len(),
            });
        }
        let comp = d_out.mul(&d_in);
        if !comp.is_zero() {
            return Err(SliceError::NonzeroComposite { nonzero: comp.nnz() });
        }
        Ok(ComplexSlice { d_in, d_out, labels })
    }

    pub fn d_in(&self) -> &SparseMatrix {
        &self.d_in
    }

    pub fn d_out(&self) -> &SparseMatrix {
        &self.d_out
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Class coordinates of a cocycle `z` relative to the representatives, or
    /// `None` if `z` is not a cocycle.
    pub fn class_of(&self, coh: &SliceCohomology, z: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.d_out.mul_vec(z).iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut cols: Vec<Vec<Scalar>> = coh.representatives.clone();
        cols.extend((0..self.d_in.cols()).map(|j| self.d_in.column(j)));
        let m = SparseMatrix::from_columns(self.dim(), &cols);
        let x = solve(&m, z)?;
        Some(x[..coh.representatives.len()].to_vec())
    }
}

/// dim ker(d_out) − rank(d_in), with representatives completing im(d_in) to ker(d_out).
pub fn cohomology(slice: &ComplexSlice) -> SliceCohomology {
    let kernel = kernel_basis(&slice.d_out);
    let mut span = EchelonSpan::new();
    for j in 0..slice.d_in.cols() {
        span.insert(&slice.d_in.column(j));
    }
    let image_rank = span.dim();
    let mut reps = Vec::new();
    for v in kernel.iter() {
        if span.insert(v) {
            reps.push(v.clone());
        }
    }
    debug_assert_eq!(reps.len(), kernel.len() - image_rank);
    SliceCohomology { dimension: reps.len(), representatives: reps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::from_ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&SparseMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::identity(4)), 4);
    }

    #[test]
    fn kernel_examples() {
        let m = SparseMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::from_int(-2), Scalar::one()]);
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        let m = SparseMatrix::from_ints(&[&[1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn cohomology_examples() {
        let s = ComplexSlice::new(SparseMatrix::zeros(3, 0), SparseMatrix::zeros(0, 3), vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(cohomology(&s).dimension, 3);
        let s = ComplexSlice::new(SparseMatrix::identity(2), SparseMatrix::zeros(0, 2), vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(cohomology(&s).dimension, 0);
    }

    #[test]
    fn nonzero_composite_rejected() {
        let err = ComplexSlice::new(SparseMatrix::identity(1), SparseMatrix::identity(1), vec!["a".into()]).unwrap_err();
        assert_eq!(err, SliceError::NonzeroComposite { nonzero: 1 });
    }

    #[test]
    fn solve_and_class() {
        let m = SparseMatrix::from_ints(&[&[1, 1], &[0, 2]]);
        let x = solve(&m, &[Scalar::from_int(3), Scalar::from_int(4)]).unwrap();
        assert_eq!(x, vec![Scalar::one(), Scalar::from_int(2)]);
        let singular = SparseMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(solve(&singular, &[Scalar::one(), Scalar::zero()]).is_none());
    }
}
