use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::{smith_normal_form, IntegerMatrix};

/// Finitely generated abelian group `Z/d_1 + ... + Z/d_k + Z^r` with
/// `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    /// `Z^dim / (row span of relations)`.
    pub fn quotient_by_rows(dim: usize, relations: &[Vec<BigInt>]) -> Self {
        let m = IntegerMatrix::from_rows(dim, relations);
        Self::cokernel(&m.transpose())
    }

    /// Cokernel of `m: Z^cols -> Z^rows`, i.e. `Z^rows / (column span)`.
    pub fn cokernel(m: &IntegerMatrix) -> Self {
        let inv = smith_normal_form(m).invariants();
        let free_rank = m.rows() - inv.len();
        let invariant_factors = inv.into_iter().filter(|d| !d.is_one()).collect();
        FinAbGroup {
            invariant_factors,
            free_rank,
        }
    }

    /// Direct sum of cyclic groups of the given orders (`0` means `Z`).
    pub fn from_cyclic_orders<T: Into<BigInt> + Clone>(orders: &[T]) -> Self {
        Self::cokernel(&IntegerMatrix::diagonal(orders))
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product::<BigInt>())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Default for FinAbGroup {
    fn default() -> Self {
        Self::trivial()
    }
}

pub(crate) fn product(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, x| acc * x)
}
