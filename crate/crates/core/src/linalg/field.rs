use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field given by a context object; elements are plain values.
///
/// The context carries the modulus (for prime fields) so that element values
/// stay small and `Copy`-like.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// GF(p) for a prime `p < 2^31`; elements are canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below 2^31.
    pub fn new(p: u32) -> Option<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return None;
        }
        Some(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add_u(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_u(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul_u(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg_u(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow_u(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_u(r, a);
            }
            a = self.mul_u(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv_u(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(self.pow_u(a, (self.p - 2) as u64))
    }

    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// A square root of `a`, if one exists in the field.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        (0..self.p).find(|&x| self.mul_u(x, x) == a % self.p)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_u(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.sub_u(*a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_u(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_u(*a)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_u(*a)
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.from_int(v)
    }
}

/// The rationals with reduced big-integer fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl RationalField {
    pub fn frac(&self, num: i64, den: i64) -> BigRational {
        assert!(den != 0, "zero denominator");
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        if r.denom().is_negative() {
            -(-r)
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(7).is_some());
        assert!(PrimeField::new(9).is_none());
        assert!(PrimeField::new(1).is_none());
    }

    #[test]
    fn inverses_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let b = f.inv_u(a).unwrap();
            assert_eq!(f.mul_u(a, b), 1);
        }
        assert_eq!(f.inv_u(0), None);
        assert_eq!(f.from_int(-1), 6);
        assert_eq!(f.signed(6), -1);
    }

    #[test]
    fn sqrt_of_minus_one_needs_p_1_mod_4() {
        let f5 = PrimeField::new(5).unwrap();
        let i = f5.sqrt(4).unwrap();
        assert_eq!(f5.mul_u(i, i), 4);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.sqrt(6), None);
    }

    #[test]
    fn rationals_are_reduced() {
        let q = RationalField;
        let a = q.frac(2, 4);
        assert_eq!(a, q.frac(1, 2));
        assert_eq!(q.mul(&a, &q.from_i64(2)), q.one());
    }
}
