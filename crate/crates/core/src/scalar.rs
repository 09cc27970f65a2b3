//! Scalar abstraction for the linear-algebra layer.
//!
//! Row reduction and the feasibility oracle only need field operations, an
//! exact zero test and a pivot preference, so they are written against
//! [`Field`]. The cone engine itself is pinned to [`crate::Rat`]: canonical
//! primitive integer rays have no floating-point analogue.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    /// Preference weight for choosing a pivot; among nonzero candidates the
    /// smallest cost wins.
    fn pivot_cost(&self) -> u64;

    /// Inner product of equal-length slices.
    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter()
            .zip(b)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .fold(Self::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }
}

/// A field with a total order compatible with its arithmetic.
pub trait OrderedField: Field + PartialOrd + Signed {}

impl<T: Field + PartialOrd + Signed> OrderedField for T {}

impl Field for BigRational {
    fn pivot_cost(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    // integer vectors skip the gcd reductions of rational arithmetic
    fn dot(a: &[Self], b: &[Self]) -> Self {
        if a.iter().chain(b).all(|x| x.is_integer()) {
            let sum = a
                .iter()
                .zip(b)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(BigInt::from(0), |acc, (x, y)| acc + x.numer() * y.numer());
            return BigRational::from_integer(sum);
        }
        a.iter()
            .zip(b)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .fold(BigRational::from_integer(BigInt::from(0)), |acc, (x, y)| acc + x * y)
    }
}

impl Field for Ratio<i64> {
    fn pivot_cost(&self) -> u64 {
        let bits = |v: i64| u64::from(64 - v.unsigned_abs().leading_zeros());
        bits(*self.numer()) + bits(*self.denom())
    }
}

// Floats prefer the largest magnitude (partial pivoting). For non-negative
// IEEE values the bit pattern orders like the value itself.
impl Field for f64 {
    fn pivot_cost(&self) -> u64 {
        u64::MAX - self.abs().to_bits()
    }
}

impl Field for f32 {
    fn pivot_cost(&self) -> u64 {
        u64::from(u32::MAX - self.abs().to_bits())
    }
}

/// Builds an exact rational from a machine integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the exact rational `n / d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts a slice of machine integers into an exact rational vector.
pub fn qvec(entries: &[i64]) -> Vec<BigRational> {
    entries.iter().map(|&e| rat(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pivot_cost_prefers_short_rationals() {
        assert!(rat(1).pivot_cost() < ratio(1023, 1024).pivot_cost());
        assert!(Ratio::new(1i64, 2).pivot_cost() < Ratio::new(-1000i64, 3).pivot_cost());
    }

    #[test]
    fn integer_and_rational_dot_agree() {
        let a = qvec(&[3, 0, -7, 12]);
        let b = qvec(&[5, 9, 2, -1]);
        assert_eq!(BigRational::dot(&a, &b), rat(-11));
        let halves: Vec<BigRational> = b.iter().map(|x| x / rat(2)).collect();
        assert_eq!(BigRational::dot(&a, &halves), ratio(-11, 2));
        assert_eq!(f64::dot(&[1.5, 2.0], &[2.0, -1.0]), 1.0);
    }

    #[test]
    fn pivot_cost_prefers_large_floats() {
        assert!(10.0f64.pivot_cost() < 0.5f64.pivot_cost());
        assert!((-10.0f32).pivot_cost() < 0.5f32.pivot_cost());
    }

    #[test]
    fn sums_agree_with_common_denominator_route() {
        for (a, b, c, d) in [(1, 2, 1, 3), (-5, 6, 7, 10), (4, 8, -2, 4), (0, 1, 3, 9)] {
            let direct = ratio(a, b) + ratio(c, d);
            let common = ratio(a * d + c * b, b * d);
            assert_eq!(direct, common);
            // lowest terms
            let g = num_integer::Integer::gcd(direct.numer(), direct.denom());
            assert_eq!(g, BigInt::from(1));
            assert!(direct.denom() > &BigInt::from(0));
        }
    }
}
