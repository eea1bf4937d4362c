use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::{Generator, Parity};

/// Sorted power product of generators; odd generators appear at most once.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperWord<G>(SmallVec<[(G, u32); 4]>);

impl<G: Generator> SuperWord<G> {
    pub fn one() -> Self {
        SuperWord(SmallVec::new())
    }

    pub fn generator(g: G) -> Self {
        SuperWord(smallvec::smallvec![(g, 1)])
    }

    /// Sorts an arbitrary product of generators. Returns the Koszul sign and the
    /// canonical word, or `None` when an odd generator repeats.
    pub fn from_product(factors: &[G]) -> Option<(i32, Self)> {
        let mut acc = (1, SuperWord::one());
        for g in factors {
            let (s, w) = acc.1.mul(&SuperWord::generator(g.clone()))?;
            acc = (acc.0 * s, w);
        }
        Some(acc)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(G, u32)] {
        &self.0
    }

    pub fn exponent(&self, g: &G) -> u32 {
        self.0.iter().find(|p| &p.0 == g).map_or(0, |p| p.1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.degree() * e).sum()
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|(g, e)| g.weight() * *e as i32).sum()
    }

    /// Number of factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn parity(&self) -> Parity {
        let odd = self.0.iter().filter(|(g, e)| g.parity().is_odd() && e % 2 == 1).count();
        Parity::from_count(odd)
    }

    /// Graded-commutative product `self · other`: sign and word, or `None` if zero.
    pub fn mul(&self, other: &Self) -> Option<(i32, Self)> {
        let (a, b) = (&self.0, &other.0);
        let mut odd_left: Vec<u32> = vec![0; a.len() + 1];
        for i in (0..a.len()).rev() {
            odd_left[i] = odd_left[i + 1] + u32::from(a[i].0.parity().is_odd());
        }
        let mut out: SmallVec<[(G, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let mut swaps = 0u32;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    if b[j].0.parity().is_odd() {
                        swaps += odd_left[i];
                    }
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].0.parity().is_odd() {
                        return None;
                    }
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, SuperWord(out)))
    }

    /// Splits the word at factor `k` as (prefix, generator, rest with one power of
    /// that generator removed).
    pub(crate) fn split_at_factor(&self, k: usize) -> (Self, G, u32, Self) {
        let (g, e) = self.0[k].clone();
        let prefix = SuperWord(self.0[..k].iter().cloned().collect());
        let mut rest: SmallVec<[(G, u32); 4]> = SmallVec::new();
        if e > 1 {
            rest.push((g.clone(), e - 1));
        }
        rest.extend(self.0[k + 1..].iter().cloned());
        (prefix, g, e, SuperWord(rest))
    }

    pub fn map_generators<H: Generator>(&self, f: &dyn Fn(&G) -> H) -> Option<(i32, SuperWord<H>)> {
        let mut seq = Vec::with_capacity(self.length() as usize);
        for (g, e) in &self.0 {
            for _ in 0..*e {
                seq.push(f(g));
            }
        }
        SuperWord::from_product(&seq)
    }
}

/// Degree first, then the factor list.
impl<G: Generator> Ord for SuperWord<G> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl<G: Generator> PartialOrd for SuperWord<G> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<G: Generator> fmt::Display for SuperWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
            if *e > 1 {
                write!(f, "**{e}")?;
            }
        }
        Ok(())
    }
}

impl<G: Generator> fmt::Debug for SuperWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
