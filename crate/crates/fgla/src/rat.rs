//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals.
//! `Rat` is the one scalar type; the helpers below cut down on ceremony
//! when building constants and structure tables.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// The rational `v/1`.
pub fn q(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// The rational `num/den`.  Panics on a zero denominator.
pub fn qr(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_zero(v: &Rat) -> bool {
    v.is_zero()
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Size heuristic used for pivot selection: total bit length of the
/// numerator and denominator.
pub fn bit_size(v: &Rat) -> u64 {
    v.numer().bits() + v.denom().bits()
}

pub fn abs(v: &Rat) -> Rat {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(q(3) + q(-3), zero());
        assert_eq!(qr(1, 2) + qr(1, 2), one());
        assert!(bit_size(&qr(7, 3)) >= 4);
    }
}
