//! Exact rational scalars.
//!
//! Every coefficient in the engine is an arbitrary-precision rational,
//! kept in lowest terms with a positive denominator. No floating point
//! exists anywhere downstream of this module.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar. Canonical form (reduced, positive
/// denominator) is maintained by the underlying representation.
pub type Rat = num_rational::BigRational;

/// Shorthand constructor from machine integers.
///
/// # Panics
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a scalar.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `base^exp` with negative exponents inverting exactly.
///
/// # Panics
/// Panics when `base` is zero and `exp` is negative.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    assert!(
        !base.is_zero() || exp > 0,
        "zero cannot be raised to a negative power"
    );
    let mut acc = Rat::one();
    let positive = base.clone();
    let b = if exp < 0 { positive.recip() } else { positive };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Renders a scalar as `n` or `n/d`, the form used in all text and JSON output.
pub fn fmt_rat(value: &Rat) -> String {
    value.to_string()
}

/// True when the scalar is a (possibly negative) integer.
pub fn is_integer(value: &Rat) -> bool {
    value.denom().is_one()
}

/// Sign as -1, 0, or 1.
pub fn sign(value: &Rat) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_reduces_to_lowest_terms() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-3, -6), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
    }

    #[test]
    fn power_handles_negative_exponents() {
        assert_eq!(rat_pow(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(rat_pow(&rat(2, 3), -1), rat(3, 2));
        assert_eq!(rat_pow(&rat(5, 1), 0), rat_int(1));
        assert_eq!(rat_pow(&rat(-1, 2), 3), rat(-1, 8));
    }

    #[test]
    fn rendering_matches_expected_forms() {
        assert_eq!(fmt_rat(&rat(-23, 48)), "-23/48");
        assert_eq!(fmt_rat(&rat_int(7)), "7");
        assert_eq!(fmt_rat(&rat(4, 2)), "2");
        assert_eq!(fmt_rat(&Rat::zero()), "0");
    }

    #[test]
    fn integrality_and_sign_probes() {
        assert!(is_integer(&rat(4, 2)));
        assert!(!is_integer(&rat(1, 2)));
        assert_eq!(sign(&rat(-1, 2)), -1);
        assert_eq!(sign(&Rat::zero()), 0);
        assert_eq!(sign(&rat(7, 3)), 1);
    }
}
