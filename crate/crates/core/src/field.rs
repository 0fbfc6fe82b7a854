//! Exact scalar fields: prime fields `F_q` with `q < 2^32`, and the rationals.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default prime for the sampling oracle.
pub const DEFAULT_PRIME: u64 = 1_000_003;

pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Integers modulo a prime `q < 2^32`; elements are kept reduced in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q >= 1 << 32 || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.q;
            }
            base = base * base % self.q;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_u64(&self, v: u64) -> u64 {
        v % self.q
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.q - b) % self.q
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.q
    }

    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        self.pow(*a, self.q - 2)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// The rational numbers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_u64(&self, v: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Field selection as it appears in configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    /// Checks that the field is usable for matrices of size `n`
    /// (prime modulus, characteristic zero or above `n`).
    pub fn validate_for(&self, n: usize) -> Result<()> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(q) => {
                PrimeField::new(q)?;
                if q <= n as u64 {
                    return Err(Error::CharacteristicTooSmall { q, n });
                }
                Ok(())
            }
        }
    }
}

/// Trial division; enough for moduli below `2^32`.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q.is_multiple_of(2) {
        return q == 2;
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(1));
        assert!(is_prime(4_294_967_291));
        assert!(PrimeField::new(4_294_967_311).is_err());
        assert!(PrimeField::new(15).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        for a in [1u64, 2, 12345, DEFAULT_PRIME - 1] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.sub(&3, &5), DEFAULT_PRIME - 2);
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::Prime(11).validate_for(10).is_ok());
        assert_eq!(
            FieldSpec::Prime(7).validate_for(7),
            Err(Error::CharacteristicTooSmall { q: 7, n: 7 })
        );
        assert_eq!(FieldSpec::Prime(9).validate_for(3), Err(Error::NotPrime(9)));
        assert!(FieldSpec::Rational.validate_for(100).is_ok());
    }
}
