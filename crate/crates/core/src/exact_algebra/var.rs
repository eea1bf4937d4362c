use std::cmp::Ordering;
use std::fmt;

/// Largest supported base dimension.
pub const MAX_DIM: usize = 4;

/// Symmetric multi-index stored as per-direction counts.
///
/// Direction `i` (zero-based) is printed as digit `i + 1`; the canonical textual
/// form is the sorted digit list, so `[1, 0, 2, 0]` prints as `133`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex([u8; MAX_DIM]);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex([0; MAX_DIM]);

    pub fn unit(i: usize) -> Self {
        Self::EMPTY.plus(i)
    }

    /// Builds from a list of zero-based directions, in any order.
    pub fn from_directions(dirs: &[usize]) -> Self {
        dirs.iter().fold(Self::EMPTY, |m, &i| m.plus(i))
    }

    pub fn from_counts(counts: [u8; MAX_DIM]) -> Self {
        MultiIndex(counts)
    }

    pub fn counts(&self) -> [u8; MAX_DIM] {
        self.0
    }

    pub fn count(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn order(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    pub fn plus(&self, i: usize) -> Self {
        assert!(i < MAX_DIM, "direction {i} exceeds supported dimension");
        let mut c = self.0;
        c[i] = c[i].checked_add(1).expect("multi-index overflow");
        MultiIndex(c)
    }

    pub fn minus(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut c = self.0;
        c[i] -= 1;
        Some(MultiIndex(c))
    }

    pub fn add(&self, other: &MultiIndex) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(other.0) {
            *a += b;
        }
        MultiIndex(c)
    }

    /// `self − other` when `other ≤ self` componentwise.
    pub fn sub(&self, other: &MultiIndex) -> Option<Self> {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(MultiIndex(c))
    }

    /// Zero-based directions in ascending order, with multiplicity.
    pub fn directions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order() as usize);
        for (i, &c) in self.0.iter().enumerate() {
            for _ in 0..c {
                out.push(i);
            }
        }
        out
    }

    /// Highest direction used, plus one (0 for the empty index).
    pub fn span(&self) -> usize {
        self.0.iter().rposition(|&c| c > 0).map_or(0, |p| p + 1)
    }

    /// All sub-indices `a ≤ self`, componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::EMPTY];
        for i in 0..MAX_DIM {
            let mut next = Vec::new();
            for m in &out {
                for k in 0..=self.0[i] {
                    let mut c = m.0;
                    c[i] = k;
                    next.push(MultiIndex(c));
                }
            }
            out = next;
        }
        out
    }

    /// Product of binomials Π_i C(self_i, sub_i).
    pub fn binomial(&self, sub: &MultiIndex) -> u64 {
        let mut acc = 1u64;
        for i in 0..MAX_DIM {
            let (n, k) = (self.0[i] as u64, sub.0[i] as u64);
            if k > n {
                return 0;
            }
            let mut b = 1u64;
            for j in 0..k {
                b = b * (n - j) / (j + 1);
            }
            acc *= b;
        }
        acc
    }

    /// Π_i (self_i)!
    pub fn factorial(&self) -> u64 {
        self.0
            .iter()
            .map(|&c| (1..=c as u64).product::<u64>())
            .product()
    }

    /// All multi-indices in `dim` directions with order exactly `order`, ascending.
    pub fn all_of_order(dim: usize, order: u32) -> Vec<MultiIndex> {
        fn rec(dim: usize, start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if left == 0 {
                out.push(MultiIndex::from_directions(cur));
                return;
            }
            for i in start..dim {
                cur.push(i);
                rec(dim, i, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, 0, order, &mut Vec::new(), &mut out);
        out
    }

    /// All multi-indices in `dim` directions with order at most `order`.
    pub fn all_up_to(dim: usize, order: u32) -> Vec<MultiIndex> {
        (0..=order).flat_map(|k| Self::all_of_order(dim, k)).collect()
    }

    /// Digit string, e.g. `12` for {1,2}; empty for the empty index.
    pub fn digits(&self) -> String {
        self.directions().iter().map(|i| char::from(b'1' + *i as u8)).collect()
    }

    pub fn parse_digits(s: &str) -> Option<Self> {
        let mut m = MultiIndex::EMPTY;
        for ch in s.chars() {
            let d = ch.to_digit(10)? as usize;
            if d == 0 || d > MAX_DIM {
                return None;
            }
            m = m.plus(d - 1);
        }
        Some(m)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        // Order first, then lexicographic on the sorted digit lists.
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J[{}]", self.digits())
    }
}

/// Polynomial variable.
///
/// Indices are zero-based; printing adds one. Field variables are printed with a
/// generic `u` name here, while jet contexts may rename them (metrics, connections).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Base coordinate x^{i}.
    X(u8),
    /// Jet coordinate y^{field}_{idx}.
    U { field: u8, idx: MultiIndex },
    /// Taylor coefficient of a formal vector field: set `set` distinguishes independent
    /// fields (X, Y, ...); `gauge` selects the gauge part b^α_J instead of a^i_J.
    Param { set: u8, gauge: bool, comp: u8, idx: MultiIndex },
    /// Free auxiliary symbol.
    Sym(u16),
    /// Path parameter for transgression integrals.
    T,
}

impl Var {
    pub fn x(i: usize) -> Var {
        Var::X(i as u8)
    }

    pub fn u(field: usize, idx: MultiIndex) -> Var {
        Var::U { field: field as u8, idx }
    }

    pub fn is_jet(&self) -> bool {
        matches!(self, Var::U { .. })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::U { field, idx } => {
                if idx.is_empty() {
                    write!(f, "u{}", field + 1)
                } else {
                    write!(f, "u{}_{}", field + 1, idx.digits())
                }
            }
            Var::Param { set, gauge, comp, idx } => {
                let letter = if *gauge { 'b' } else { 'a' };
                write!(f, "{letter}{}_{}", set + 1, comp + 1)?;
                if !idx.is_empty() {
                    write!(f, "_{}", idx.digits())?;
                }
                Ok(())
            }
            Var::Sym(k) => write!(f, "s{}", k + 1),
            Var::T => write!(f, "t"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_are_sorted() {
        let m = MultiIndex::from_directions(&[2, 0, 2]);
        assert_eq!(m.digits(), "133");
        assert_eq!(MultiIndex::parse_digits("313"), Some(m));
        assert_eq!(MultiIndex::parse_digits("0"), None);
    }

    #[test]
    fn ordering_is_order_then_digits() {
        let mut v = MultiIndex::all_up_to(2, 2);
        v.sort();
        let s: Vec<String> = v.iter().map(|m| m.digits()).collect();
        assert_eq!(s, ["", "1", "2", "11", "12", "22"]);
    }

    #[test]
    fn binomials_and_sub_indices() {
        let j = MultiIndex::from_directions(&[0, 0, 1]);
        assert_eq!(j.sub_indices().len(), 6);
        assert_eq!(j.binomial(&MultiIndex::unit(0)), 2);
        assert_eq!(j.factorial(), 2);
    }
}
