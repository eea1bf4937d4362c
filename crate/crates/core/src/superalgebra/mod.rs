//! Free graded-commutative algebras with derivations, truncations and
//! per-degree complex slices.

mod algebra;
mod derivation;
mod element;
mod word;

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

pub use algebra::{GradedSlice, SliceFilter, SuperAlgebra, TruncationIdeal};
pub use derivation::Derivation;
pub use element::SuperElement;
pub use word::SuperWord;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_count(odd: usize) -> Parity {
        if odd % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// A generator of a free graded-commutative algebra. `Ord` must be the canonical
/// word order: by degree first.
pub trait Generator: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn parity(&self) -> Parity;
    fn degree(&self) -> u32;
    fn weight(&self) -> i32 {
        0
    }
}

/// Named generator with declared parity, degree and weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub name: String,
    pub parity: Parity,
    pub degree: u32,
    pub weight: i32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, parity: Parity, degree: u32) -> Self {
        GeneratorSpec { name: name.into(), parity, degree, weight: 0 }
    }

    pub fn odd(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, Parity::Odd, degree)
    }

    pub fn even(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, Parity::Even, degree)
    }

    pub fn with_weight(mut self, weight: i32) -> Self {
        self.weight = weight;
        self
    }
}

impl Ord for GeneratorSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree, &self.name).cmp(&(other.degree, &other.name))
    }
}

impl PartialOrd for GeneratorSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Generator for GeneratorSpec {
    fn parity(&self) -> Parity {
        self.parity
    }

    fn degree(&self) -> u32 {
        self.degree
    }

    fn weight(&self) -> i32 {
        self.weight
    }
}
