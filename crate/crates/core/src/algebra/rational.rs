//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Field of coefficients. `BigRational` keeps itself in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
