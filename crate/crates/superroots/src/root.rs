//! Root vectors in distinguished-base coordinates plus a δ-coefficient.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Integer coefficient vector over the distinguished finite simple base,
/// plus an integer δ-coefficient (0 for finite-system roots).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub delta: i64,
}

impl Root {
    pub fn finite(coeffs: Vec<i64>) -> Self {
        Root { coeffs, delta: 0 }
    }

    pub fn affine(coeffs: Vec<i64>, delta: i64) -> Self {
        Root { coeffs, delta }
    }

    /// kδ as a vector over a rank-`rank` base.
    pub fn imaginary(rank: usize, k: i64) -> Self {
        Root {
            coeffs: vec![0; rank],
            delta: k,
        }
    }

    pub fn zero(rank: usize) -> Self {
        Root::imaginary(rank, 0)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.delta == 0 && self.coeffs.iter().all(|&c| c == 0)
    }

    /// Finite part only (δ stripped).
    pub fn finite_part(&self) -> Root {
        Root::finite(self.coeffs.clone())
    }

    pub fn is_imaginary_vector(&self) -> bool {
        self.delta != 0 && self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Root) -> Root {
        debug_assert_eq!(self.rank(), other.rank());
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            delta: self.delta + other.delta,
        }
    }

    pub fn sub(&self, other: &Root) -> Root {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            delta: -self.delta,
        }
    }

    pub fn scale(&self, k: i64) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            delta: self.delta * k,
        }
    }

    pub fn add_delta(&self, k: i64) -> Root {
        Root {
            coeffs: self.coeffs.clone(),
            delta: self.delta + k,
        }
    }

    /// Full coordinate vector (coeffs followed by δ) for linear algebra.
    pub fn as_vec(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(self.delta);
        v
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum::<i64>() + self.delta
    }

    /// All coefficients (including δ) ≥ 0, not all zero.
    pub fn is_nonneg(&self) -> bool {
        self.delta >= 0 && self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpos(&self) -> bool {
        self.delta <= 0 && self.coeffs.iter().all(|&c| c <= 0)
    }
}

/// Deterministic order: lexicographic on (δ, coefficient vector).
impl Ord for Root {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.delta, &self.coeffs).cmp(&(other.delta, &other.coeffs))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_root(root: &Root, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in root.coeffs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    if root.delta != 0 {
        write!(f, "; {}δ", root.delta)?;
    }
    write!(f, ")")
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_root(self, f)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_root(self, f)
    }
}
