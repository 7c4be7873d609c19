//! Big-integer and rational primitives.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub use num_bigint::BigInt;

/// Canonical rational: positive denominator, lowest terms.
pub type Rational = num_rational::BigRational;

/// Floor of the square root, by Newton iteration on exact integers.
pub fn isqrt(v: &BigInt) -> Result<BigInt> {
    if v.is_negative() {
        return Err(Error::Domain(format!("isqrt of negative value {v}")));
    }
    if v.is_zero() {
        return Ok(BigInt::zero());
    }
    // Start above the root: 2^ceil(bits/2) > sqrt(v).
    let bits = v.bits();
    let mut x = BigInt::one() << bits.div_ceil(2);
    loop {
        let y = (&x + v / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    // Newton from above lands on the floor; the correction keeps the
    // postcondition independent of that argument.
    while &x * &x > *v {
        x -= 1;
    }
    while (&x + 1u32) * (&x + 1u32) <= *v {
        x += 1;
    }
    Ok(x)
}

pub fn is_perfect_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    // Squares mod 16 are 0, 1, 4, 9; this only filters, isqrt decides.
    let low = (v % 16u32).to_u32().unwrap_or(0);
    if !matches!(low, 0 | 1 | 4 | 9) {
        return false;
    }
    let r = isqrt(v).expect("nonnegative");
    &r * &r == *v
}

/// Exact square root if `v` is a perfect square.
pub fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if !is_perfect_square(v) {
        return None;
    }
    isqrt(v).ok()
}

/// Positive gcd of the absolute values.
pub fn vec_gcd<'a, I>(values: I) -> Result<BigInt>
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let g = values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return Err(Error::Domain("gcd of all-zero values".into()));
    }
    Ok(g)
}

/// Exact square root of a canonical rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}
