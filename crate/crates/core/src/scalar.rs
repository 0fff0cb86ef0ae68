//! Scalar abstraction for the quantities that are ratios of small integers:
//! Euler contributions and the control-point inequality.
//!
//! Exact rationals are the default everywhere a verdict depends on equality
//! or a boundary comparison; the floating-point instances exist for quick
//! inspection and for demonstrating where rounding would change an answer.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Num;

pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync {
    fn from_int(value: i64) -> Self;

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl Scalar for f32 {
    fn from_int(value: i64) -> Self {
        value as f32
    }
}

impl Scalar for f64 {
    fn from_int(value: i64) -> Self {
        value as f64
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }
}

impl Scalar for Ratio<BigInt> {
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(BigInt::from(value))
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ratio_is_reduced() {
        assert_eq!(Ratio::<i64>::ratio(6, 4), Ratio::new(3, 2));
        assert_eq!(
            Ratio::<BigInt>::ratio(-2, 12),
            Ratio::<BigInt>::ratio(-1, 6)
        );
    }

    #[test]
    fn float_thirds_do_not_sum_exactly() {
        let third = f32::ratio(1, 3);
        let tenth = f64::ratio(1, 10);
        assert_ne!(tenth + tenth + tenth, f64::ratio(3, 10));
        assert!((third * 3.0 - 1.0).abs() < 1e-6);
        let exact = Ratio::<i64>::ratio(1, 10);
        assert_eq!(exact + exact + exact, Ratio::<i64>::ratio(3, 10));
    }
}
