//! Arbitrary-precision rational helpers.
//!
//! `Rational` is `num_rational::BigRational`: always reduced to lowest
//! terms with a positive denominator, which is exactly the invariant the
//! rest of the crate relies on.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Pochhammer symbol (a)_k = a(a+1)...(a+k-1); the empty product is 1.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// k! as a big integer.
pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient (sum parts)! / prod(parts!).
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

/// r^e for integer e (negative allowed). 0^0 = 1; 0^negative is an error.
pub fn rational_pow(r: &Rational, e: i64) -> Result<Rational> {
    if e == 0 {
        return Ok(Rational::one());
    }
    if r.is_zero() {
        if e < 0 {
            return Err(Error::InvalidParameter(
                "zero raised to a negative power".into(),
            ));
        }
        return Ok(Rational::zero());
    }
    let mut base = if e < 0 { r.recip() } else { r.clone() };
    let mut exp = e.unsigned_abs();
    let mut acc = Rational::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        exp >>= 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_spec_values() {
        assert_eq!(pochhammer(&rat(1, 2), 0), rat_int(1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&rat(3, 2), 2), rat(15, 4));
    }

    #[test]
    fn pochhammer_recurrence() {
        for (n, d) in [(1i64, 2i64), (3, 2), (-5, 3), (7, 1)] {
            let a = rat(n, d);
            for k in 0..=50u32 {
                let lhs = pochhammer(&a, k + 1);
                let rhs = pochhammer(&a, k) * (&a + rat_int(k as i64));
                assert_eq!(lhs, rhs, "a = {n}/{d}, k = {k}");
            }
        }
    }

    #[test]
    fn binomial_and_multinomial() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let r = rat(2, 3);
        assert_eq!(rational_pow(&r, -2).unwrap(), rat(9, 4));
        assert_eq!(rational_pow(&r, 0).unwrap(), rat_int(1));
        assert!(rational_pow(&Rational::zero(), -1).is_err());
    }
}
