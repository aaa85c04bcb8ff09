//! Dense univariate polynomials over a gcd domain.
//!
//! Nesting `UPoly<UPoly<BigInt>>` gives Z[u][v]; gcds are computed by the
//! primitive remainder sequence with recursive contents, after a modular
//! image has ruled out the common case of a gcd free of the outer variable.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::ring::{GcdDomain, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly<R> {
    coeffs: Vec<R>,
}

impl<R: GcdDomain> UPoly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> &R {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// `c * x^k * self`
    fn shifted_scale(&self, c: &R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().map(|x| x.clone() * c.clone()));
        Self::from_coeffs(coeffs)
    }

    pub fn content(&self) -> R {
        crate::ring::gcd_all(self.coeffs.iter())
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    /// A pseudo-remainder: `lc(b)^k * self mod b` for some k.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lead = r.lc().clone();
            r = r.scale(b.lc()) - b.shifted_scale(&lead, dr - db);
        }
        r
    }
}

impl<R: GcdDomain> Add for UPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Self::from_coeffs(long)
    }
}

impl<R: GcdDomain> Neg for UPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        UPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: GcdDomain> Sub for UPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: GcdDomain> Mul for UPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<R: GcdDomain> Zero for UPoly<R> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: GcdDomain> One for UPoly<R> {
    fn one() -> Self {
        UPoly {
            coeffs: vec![R::one()],
        }
    }
}

impl<R: GcdDomain> Ring for UPoly<R> {
    fn unit_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0]
                .unit_inverse()
                .map(|c| UPoly { coeffs: vec![c] }),
            _ => None,
        }
    }

    fn from_integer(c: &BigInt) -> Self {
        Self::from_coeffs(vec![R::from_integer(c)])
    }

    fn weight(&self) -> usize {
        self.coeffs.iter().map(Ring::weight).sum()
    }

    fn coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(Ring::coeff_bits).max().unwrap_or(0)
    }
}

const PRIME: u64 = 2_147_483_647;
const POINTS: [u64; 3] = [40_503, 1_299_709, 15_485_863];

/// Reduction modulo `PRIME`, with inner variables sent to `points`.
pub trait EvalMod {
    fn eval_mod(&self, points: &[u64]) -> u64;
}

impl EvalMod for BigInt {
    fn eval_mod(&self, _: &[u64]) -> u64 {
        self.mod_floor(&BigInt::from(PRIME))
            .to_u64()
            .expect("reduced")
    }
}

impl<R: GcdDomain + EvalMod> EvalMod for UPoly<R> {
    fn eval_mod(&self, points: &[u64]) -> u64 {
        let (x, rest) = points.split_first().expect("one point per variable");
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| (acc * x + c.eval_mod(rest)) % PRIME)
    }
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// Degree of the gcd of two polynomials over Z/PRIME.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let f = a[a.len() - 1] * pow_mod(b[b.len() - 1], PRIME - 2) % PRIME;
            let shift = a.len() - b.len();
            for (i, &y) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - f * y % PRIME) % PRIME;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

impl<R: GcdDomain + EvalMod> UPoly<R> {
    /// Whether some image with both leading coefficients intact has a
    /// constant gcd, which forces the true gcd to be constant as well.
    fn coprime_image(&self, other: &Self) -> bool {
        (0..POINTS.len()).any(|i| {
            let mut points = POINTS;
            points.rotate_left(i);
            let image =
                |p: &Self| -> Vec<u64> { p.coeffs.iter().map(|c| c.eval_mod(&points)).collect() };
            let (a, b) = (image(self), image(other));
            a.last() != Some(&0) && b.last() != Some(&0) && gcd_degree_mod(a, b) == 0
        })
    }
}

impl<R: GcdDomain + EvalMod> GcdDomain for UPoly<R> {
    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&other.content());
        if self.coprime_image(other) {
            return Self::from_coeffs(vec![c]).normalized();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                b = Self::one();
                break;
            }
            a = b;
            b = r.primitive_part();
        }
        b.primitive_part().scale(&c).normalized()
    }

    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let mut r = self.clone();
        let mut q = vec![R::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.lc().div_exact(divisor.lc())?;
            r = r - divisor.shifted_scale(&c, dr - dd);
            q[dr - dd] = c;
        }
        Some(Self::from_coeffs(q))
    }

    fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        let unit = lc
            .normalized()
            .div_exact(lc)
            .expect("normal form is an associate");
        self.scale(&unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> UPoly<BigInt> {
        UPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn integer_polynomial_gcd() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = zp(&[-2, 1, 1]);
        let b = zp(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), zp(&[-1, 1]));
        // content is kept: 6x+6, 4x+4
        assert_eq!(zp(&[6, 6]).gcd(&zp(&[4, 4])), zp(&[2, 2]));
        assert_eq!(zp(&[2, 1]).gcd(&zp(&[3, 1])), zp(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = zp(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&zp(&[1, 1])), Some(zp(&[-1, 1])));
        assert_eq!(a.div_exact(&zp(&[2, 1])), None);
        assert_eq!(zp(&[2, 4]).div_exact(&zp(&[2])), Some(zp(&[1, 2])));
    }

    #[test]
    fn nested_gcd_over_two_variables() {
        // In Z[u][v]: (v - u) * (v + 1) and (v - u) * (u + 1)
        let inner = |c: &[i64]| zp(c);
        let v_minus_u = UPoly::from_coeffs(vec![inner(&[0, -1]), inner(&[1])]);
        let v_plus_1 = UPoly::from_coeffs(vec![inner(&[1]), inner(&[1])]);
        let u_plus_1 = UPoly::from_coeffs(vec![inner(&[1, 1])]);
        let p = v_minus_u.clone() * v_plus_1;
        let q = v_minus_u.clone() * u_plus_1;
        assert_eq!(p.gcd(&q), v_minus_u.normalized());
    }
}
