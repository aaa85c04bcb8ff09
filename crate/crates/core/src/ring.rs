//! Ring abstractions shared by the polynomial and matrix layers.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity whose units can be recognised.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_integer(c: &BigInt) -> Self;

    /// Rough size of the element, used to pick cheap pivots.
    fn weight(&self) -> usize {
        1
    }

    /// Bit length of the largest integer coefficient.
    fn coeff_bits(&self) -> u64 {
        0
    }
}

/// A ring with exact division and unit-normal greatest common divisors.
pub trait GcdDomain: Ring {
    /// Greatest common divisor, already in unit-normal form.
    fn gcd(&self, other: &Self) -> Self;

    /// `self / divisor` when the quotient exists in the ring.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;

    /// The distinguished associate of `self`.
    fn normalized(&self) -> Self;
}

impl Ring for BigInt {
    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn from_integer(c: &BigInt) -> Self {
        c.clone()
    }

    fn weight(&self) -> usize {
        self.bits() as usize
    }

    fn coeff_bits(&self) -> u64 {
        self.bits()
    }
}

impl GcdDomain for BigInt {
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn normalized(&self) -> Self {
        self.abs()
    }
}

/// gcd of a collection; the empty collection has gcd 0.
pub fn gcd_all<'a, R: GcdDomain + 'a>(items: impl IntoIterator<Item = &'a R>) -> R {
    let mut acc = R::zero();
    for x in items {
        acc = acc.gcd(x);
        if acc.unit_inverse().is_some() {
            return acc.normalized();
        }
    }
    acc.normalized()
}

/// Residue modulo a runtime modulus `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        ModInt {
            value: v as u64,
            modulus,
        }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let r = value.mod_floor(&m);
        let v: u64 = r.try_into().expect("residue fits in u64");
        ModInt { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        ModInt {
            value: ((self.value as u128 + o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        ModInt {
            value: ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    pub fn inverse(self) -> Option<Self> {
        let (g, x) = ext_gcd(self.value as i128, self.modulus as i128);
        (g == 1).then(|| ModInt::new((x % self.modulus as i128) as i64, self.modulus))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}

/// Codomain of a specialization homomorphism. Elements carry enough context
/// (e.g. a modulus) to build the constants of their own ring.
pub trait SpecializationTarget: Clone {
    fn zero_like(&self) -> Self;
    fn integer_like(&self, c: &BigInt) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;

    fn power(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.integer_like(&BigInt::one());
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.times(&sq);
            }
            sq = sq.times(&sq);
            n >>= 1;
        }
        Some(acc)
    }
}

impl<R: Ring> SpecializationTarget for R {
    fn zero_like(&self) -> Self {
        R::zero()
    }
    fn integer_like(&self, c: &BigInt) -> Self {
        R::from_integer(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn times(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn inverse(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

impl SpecializationTarget for ModInt {
    fn zero_like(&self) -> Self {
        ModInt::new(0, self.modulus)
    }
    fn integer_like(&self, c: &BigInt) -> Self {
        ModInt::from_bigint(c, self.modulus)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(*other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(*other)
    }
    fn inverse(&self) -> Option<Self> {
        ModInt::inverse(*self)
    }
}
