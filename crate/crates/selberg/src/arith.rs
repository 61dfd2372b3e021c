//! Memoized exact integer helpers and a reduced exact fraction type.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{BigUint, One, Signed, Zero};
use std::cell::RefCell;
use std::fmt;

thread_local! {
    static FACTORIALS: RefCell<Vec<BigUint>> = RefCell::new(vec![BigUint::one()]);
}

/// n! as an exact big integer, memoized per thread.
pub fn factorial(n: usize) -> BigUint {
    FACTORIALS.with(|cell| {
        let mut cache = cell.borrow_mut();
        while cache.len() <= n {
            let next = cache.last().unwrap() * BigUint::from(cache.len());
            cache.push(next);
        }
        cache[n].clone()
    })
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Parity of a permutation given in one-line notation (1-based images).
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at] - 1;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// An exact rational number. Thin wrapper over a reduced big rational,
/// kept as its own type so reports can serialize it as a stable string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactFraction(BigRational);

impl ExactFraction {
    pub fn new(numer: BigInt, denom: BigInt) -> crate::Result<Self> {
        if denom.is_zero() {
            return Err(crate::Error::pre("fraction with zero denominator"));
        }
        Ok(ExactFraction(BigRational::new(numer, denom)))
    }

    pub fn from_biguint(n: BigUint) -> Self {
        ExactFraction(BigRational::from_integer(BigInt::from_biguint(
            Sign::Plus,
            n,
        )))
    }

    pub fn from_integer(n: BigInt) -> Self {
        ExactFraction(BigRational::from_integer(n))
    }

    pub fn one() -> Self {
        ExactFraction(BigRational::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactFraction(&self.0 * &other.0)
    }

    pub fn div(&self, other: &Self) -> crate::Result<Self> {
        if other.0.is_zero() {
            return Err(crate::Error::pre("division by zero fraction"));
        }
        Ok(ExactFraction(&self.0 / &other.0))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the fraction is integral and non-negative.
    pub fn to_biguint(&self) -> Option<BigUint> {
        if self.0.is_integer() && !self.0.is_negative() {
            self.0.to_integer().to_biguint()
        } else {
            None
        }
    }
}

impl fmt::Display for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.to_integer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(10), BigUint::from(3628800u32));
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..12usize {
            for k in 0..=n {
                let lhs = binomial(n + 1, k + 1);
                let rhs = binomial(n, k) + binomial(n, k + 1);
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(binomial(4, 7), BigUint::zero());
    }

    #[test]
    fn permutation_sign_basics() {
        assert_eq!(permutation_sign(&[1, 2, 3]), 1);
        assert_eq!(permutation_sign(&[2, 1, 3]), -1);
        assert_eq!(permutation_sign(&[2, 3, 1]), 1);
        assert_eq!(permutation_sign(&[]), 1);
    }

    #[test]
    fn fraction_reduction_and_display() {
        let f = ExactFraction::new(BigInt::from(6), BigInt::from(4)).unwrap();
        assert_eq!(f.to_string(), "3/2");
        let g = f.mul(&ExactFraction::new(BigInt::from(2), BigInt::from(3)).unwrap());
        assert_eq!(g.to_string(), "1");
        assert_eq!(g.to_biguint(), Some(BigUint::from(1u32)));
    }
}
