//! Exact integer Laurent polynomials in one variable `t` or two variables `u, v`.

mod parse;
mod upoly;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::{GcdDomain, Ring, SpecializationTarget};

pub use parse::PolyParseError;
pub use upoly::UPoly;

/// Exponent of a Laurent monomial: a free abelian group written additively.
pub trait Exponent: Copy + Ord + Eq + Hash + fmt::Debug {
    fn identity() -> Self;
    fn combine(self, other: Self) -> Self;
    fn inverse(self) -> Self;
    /// Componentwise minimum.
    fn meet(self, other: Self) -> Self;
    fn total_degree(self) -> i64;
    /// Writes `u^2*v` style factors; returns false for the identity.
    fn write_factors(self, out: &mut String) -> bool;
    fn from_factor(var: char, power: i64) -> Option<Self>;
}

/// `u^u_exp v^v_exp`; ordered lexicographically with `u` before `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial2 {
    pub u_exp: i64,
    pub v_exp: i64,
}

impl Monomial2 {
    pub const ONE: Monomial2 = Monomial2 { u_exp: 0, v_exp: 0 };
    pub const U: Monomial2 = Monomial2 { u_exp: 1, v_exp: 0 };
    pub const V: Monomial2 = Monomial2 { u_exp: 0, v_exp: 1 };

    pub fn new(u_exp: i64, v_exp: i64) -> Self {
        Monomial2 { u_exp, v_exp }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }
}

impl fmt::Display for Monomial2 {
    /// Space separated, e.g. `u^2 v`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [('u', self.u_exp), ('v', self.v_exp)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn push_factor(out: &mut String, written: &mut bool, var: char, e: i64) {
    if e == 0 {
        return;
    }
    if *written {
        out.push('*');
    }
    out.push(var);
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
    *written = true;
}

impl Exponent for Monomial2 {
    fn identity() -> Self {
        Self::ONE
    }
    fn combine(self, o: Self) -> Self {
        Monomial2::new(self.u_exp + o.u_exp, self.v_exp + o.v_exp)
    }
    fn inverse(self) -> Self {
        Monomial2::new(-self.u_exp, -self.v_exp)
    }
    fn meet(self, o: Self) -> Self {
        Monomial2::new(self.u_exp.min(o.u_exp), self.v_exp.min(o.v_exp))
    }
    fn total_degree(self) -> i64 {
        self.u_exp + self.v_exp
    }
    fn write_factors(self, out: &mut String) -> bool {
        let mut written = false;
        push_factor(out, &mut written, 'u', self.u_exp);
        push_factor(out, &mut written, 'v', self.v_exp);
        written
    }
    fn from_factor(var: char, power: i64) -> Option<Self> {
        match var {
            'u' => Some(Monomial2::new(power, 0)),
            'v' => Some(Monomial2::new(0, power)),
            _ => None,
        }
    }
}

impl Exponent for i64 {
    fn identity() -> Self {
        0
    }
    fn combine(self, o: Self) -> Self {
        self + o
    }
    fn inverse(self) -> Self {
        -self
    }
    fn meet(self, o: Self) -> Self {
        self.min(o)
    }
    fn total_degree(self) -> i64 {
        self
    }
    fn write_factors(self, out: &mut String) -> bool {
        let mut written = false;
        push_factor(out, &mut written, 't', self);
        written
    }
    fn from_factor(var: char, power: i64) -> Option<Self> {
        (var == 't').then_some(power)
    }
}

/// Finite sum of integer multiples of Laurent monomials. Zero coefficients are
/// never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

/// Element of Z[u^±1, v^±1].
pub type LaurentPoly2 = Laurent<Monomial2>;
/// Element of Z[t^±1].
pub type LaurentPoly1 = Laurent<i64>;

impl<E: Exponent> Laurent<E> {
    pub fn from_terms(terms: impl IntoIterator<Item = (E, BigInt)>) -> Self {
        let mut map: BTreeMap<E, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Laurent { terms: map }
    }

    pub fn monomial(e: E, c: impl Into<BigInt>) -> Self {
        Self::from_terms([(e, c.into())])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(E::identity(), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: E) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.combine(e), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    /// Componentwise minimum exponent; `None` for zero.
    pub fn min_exponent(&self) -> Option<E> {
        self.terms.keys().copied().reduce(E::meet)
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// The associate `±x^e · self` with all minimum exponents zero and a
    /// positive coefficient on the lexicographically greatest monomial.
    pub fn canonical(&self) -> Self {
        let Some(low) = self.min_exponent() else {
            return Self::zero();
        };
        let shifted = self.shift(low.inverse());
        let lead_negative = shifted
            .terms
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        if lead_negative {
            -shifted
        } else {
            shifted
        }
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Evaluate through the homomorphism sending `x^e` to `image(e)`.
    fn eval_with<T: SpecializationTarget>(
        &self,
        prototype: &T,
        mut image: impl FnMut(E) -> T,
    ) -> T {
        let mut acc = prototype.zero_like();
        for (e, c) in &self.terms {
            acc = acc.plus(&prototype.integer_like(c).times(&image(*e)));
        }
        acc
    }
}

impl<E: Exponent> fmt::Display for Laurent<E> {
    /// Graded-lex order, highest first: `u^2*v - u + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&E, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| (b.0.total_degree(), b.0).cmp(&(a.0.total_degree(), a.0)));
        let mut out = String::new();
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            let mut factors = String::new();
            let has_factors = e.write_factors(&mut factors);
            if !has_factors {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&factors);
            } else {
                out.push_str(&format!("{mag}*{factors}"));
            }
        }
        write!(f, "{out}")
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<E: Exponent> std::str::FromStr for Laurent<E> {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_laurent(s)
    }
}

impl<E: Exponent> Add for Laurent<E> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<E: Exponent> Add for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: Self) -> Laurent<E> {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let slot = terms.entry(*e).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Laurent { terms }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<E: Exponent> Sub for Laurent<E> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self + &(-rhs)
    }
}

impl<E: Exponent> Sub for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: Self) -> Laurent<E> {
        self + &(-rhs.clone())
    }
}

impl<E: Exponent> Mul for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: Self) -> Laurent<E> {
        let mut terms: BTreeMap<E, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *terms.entry(a.combine(*b)).or_insert_with(BigInt::zero) += x * y;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }
}

impl<E: Exponent> Mul for Laurent<E> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<E: Exponent> Zero for Laurent<E> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<E: Exponent> One for Laurent<E> {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl<E: Exponent> Ring for Laurent<E> {
    fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(e.inverse(), c.clone()))
    }

    fn from_integer(c: &BigInt) -> Self {
        Self::constant(c.clone())
    }

    fn weight(&self) -> usize {
        self.terms.values().map(|c| c.bits() as usize + 1).sum()
    }

    fn coeff_bits(&self) -> u64 {
        self.max_coeff_bits()
    }
}

/// Conversion between a Laurent polynomial with nonnegative exponents and a
/// dense recursive polynomial, the representation used for gcds.
trait DenseForm: Exponent {
    type Dense: GcdDomain;
    fn to_dense(p: &Laurent<Self>) -> Self::Dense;
    fn from_dense(d: &Self::Dense) -> Laurent<Self>;
}

impl DenseForm for i64 {
    type Dense = UPoly<BigInt>;

    fn to_dense(p: &LaurentPoly1) -> UPoly<BigInt> {
        let top = p.terms.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); (top + 1).max(0) as usize];
        for (e, c) in &p.terms {
            coeffs[*e as usize] = c.clone();
        }
        UPoly::from_coeffs(coeffs)
    }

    fn from_dense(d: &UPoly<BigInt>) -> LaurentPoly1 {
        Laurent::from_terms(
            d.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }
}

impl DenseForm for Monomial2 {
    // outer variable v, coefficients in Z[u]
    type Dense = UPoly<UPoly<BigInt>>;

    fn to_dense(p: &LaurentPoly2) -> Self::Dense {
        let vmax = p.terms.keys().map(|m| m.v_exp).max().unwrap_or(-1);
        let umax = p.terms.keys().map(|m| m.u_exp).max().unwrap_or(-1);
        let mut grid =
            vec![vec![BigInt::zero(); (umax + 1).max(0) as usize]; (vmax + 1).max(0) as usize];
        for (m, c) in &p.terms {
            grid[m.v_exp as usize][m.u_exp as usize] = c.clone();
        }
        UPoly::from_coeffs(grid.into_iter().map(UPoly::from_coeffs).collect())
    }

    fn from_dense(d: &Self::Dense) -> LaurentPoly2 {
        let mut terms = Vec::new();
        for (j, row) in d.coeffs().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                terms.push((Monomial2::new(i as i64, j as i64), c.clone()));
            }
        }
        Laurent::from_terms(terms)
    }
}

fn laurent_gcd<E: DenseForm>(p: &Laurent<E>, q: &Laurent<E>) -> Laurent<E> {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    let a = E::to_dense(&p.canonical());
    let b = E::to_dense(&q.canonical());
    E::from_dense(&a.gcd(&b)).canonical()
}

fn laurent_div_exact<E: DenseForm>(p: &Laurent<E>, q: &Laurent<E>) -> Option<Laurent<E>> {
    let qlow = q.min_exponent()?;
    let Some(plow) = p.min_exponent() else {
        return Some(Laurent::zero());
    };
    let a = E::to_dense(&p.shift(plow.inverse()));
    let b = E::to_dense(&q.shift(qlow.inverse()));
    let quotient = a.div_exact(&b)?;
    Some(E::from_dense(&quotient).shift(plow.combine(qlow.inverse())))
}

impl<E: DenseForm> GcdDomain for Laurent<E> {
    fn gcd(&self, other: &Self) -> Self {
        laurent_gcd(self, other)
    }

    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        laurent_div_exact(self, divisor)
    }

    fn normalized(&self) -> Self {
        self.canonical()
    }
}

/// Errors raised by specialization homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecializeError {
    #[error("image of {0} is not a unit of the target ring")]
    NonUnit(char),
}

impl LaurentPoly2 {
    pub fn u() -> Self {
        Self::monomial(Monomial2::U, 1)
    }

    pub fn v() -> Self {
        Self::monomial(Monomial2::V, 1)
    }

    /// Ring homomorphism `u -> u_image`, `v -> v_image`.
    pub fn specialize<T: SpecializationTarget>(
        &self,
        u_image: &T,
        v_image: &T,
    ) -> Result<T, SpecializeError> {
        let u_inv = u_image.inverse().ok_or(SpecializeError::NonUnit('u'))?;
        let v_inv = v_image.inverse().ok_or(SpecializeError::NonUnit('v'))?;
        let pow = |base: &T, inv: &T, e: i64| -> T {
            if e >= 0 { base.power(e) } else { inv.power(-e) }
                .expect("nonnegative powers always exist")
        };
        Ok(self.eval_with(u_image, |m| {
            pow(u_image, &u_inv, m.u_exp).times(&pow(v_image, &v_inv, m.v_exp))
        }))
    }

    /// `u = v = t`
    pub fn diagonal(&self) -> LaurentPoly1 {
        self.specialize(&LaurentPoly1::t(), &LaurentPoly1::t())
            .expect("t is a unit")
    }

    /// `u = t`, `v = 1`
    pub fn forget_v(&self) -> LaurentPoly1 {
        self.specialize(&LaurentPoly1::t(), &LaurentPoly1::one())
            .expect("t and 1 are units")
    }
}

impl LaurentPoly1 {
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn specialize<T: SpecializationTarget>(&self, t_image: &T) -> Result<T, SpecializeError> {
        let inv = t_image.inverse().ok_or(SpecializeError::NonUnit('t'))?;
        Ok(self.eval_with(t_image, |e| {
            if e >= 0 {
                t_image.power(e)
            } else {
                inv.power(-e)
            }
            .expect("nonnegative powers always exist")
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ModInt;

    fn p2(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    fn p1(s: &str) -> LaurentPoly1 {
        s.parse().unwrap()
    }

    /// Schoolbook product computed term pair by term pair.
    fn convolution(a: &LaurentPoly2, b: &LaurentPoly2) -> LaurentPoly2 {
        let mut acc = Vec::new();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                acc.push((x.combine(*y), c * d));
            }
        }
        Laurent::from_terms(acc)
    }

    #[test]
    fn products() {
        assert_eq!(p2("u - 1") * p2("u + 1"), p2("u^2 - 1"));
        let p = p2("3*u^-2*v + 7");
        assert_eq!(p.clone() * LaurentPoly2::one(), p);
        let a = p2("u^2*v - u + 1");
        let b = p2("u*v^2 - v + 1");
        let expected = convolution(&a, &b);
        assert_eq!(
            expected,
            p2("u^3*v^3 - 2*u^2*v^2 + u^2*v + u*v^2 + u*v - u - v + 1")
        );
        assert_eq!(a * b, expected);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(p2("u^-1 - 1").canonical(), p2("u - 1"));
        assert_eq!(p2("-3*u^2*v^-1").canonical(), p2("3"));
        assert!(LaurentPoly2::zero().canonical().is_zero());
        assert_eq!(p1("-t^-3 + t^-1").canonical(), p1("t^2 - 1"));
    }

    #[test]
    fn gcds() {
        assert_eq!(p2("u^2 - 1").gcd(&p2("u - 1")), p2("u - 1"));
        assert_eq!(p2("6").gcd(&p2("4")), p2("2"));
        let a = p2("u - v") * p2("u + 1");
        let b = p2("u - v") * p2("v + 1");
        let g = a.gcd(&b);
        assert_eq!(g, p2("u - v"));
        let ca = a.div_exact(&g).unwrap();
        let cb = b.div_exact(&g).unwrap();
        assert!(!ca.is_unit() && !cb.is_unit());
        assert_eq!(p2("u^2").gcd(&p2("u - 1")), p2("1"));
        assert_eq!(p2("2*u - 2").gcd(&LaurentPoly2::zero()), p2("2*u - 2"));
    }

    #[test]
    fn specializations() {
        let t = LaurentPoly1::t();
        assert_eq!(
            p2("u^2*v - u + 1").specialize(&t, &t).unwrap(),
            p1("t^3 - t + 1")
        );
        assert_eq!(
            p2("u^2*v + u*v^2 - u - v + 1").diagonal(),
            p1("2*t^3 - 2*t + 1")
        );
        let m1 = BigInt::from(-1);
        assert_eq!(
            p2("u^2*v - u + 1").specialize(&m1, &m1).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            p2("u^-1 + v")
                .specialize(&ModInt::new(3, 7), &ModInt::new(2, 7))
                .unwrap(),
            ModInt::new(5 + 2, 7)
        );
        assert_eq!(
            p2("u").specialize(&BigInt::from(2), &m1),
            Err(SpecializeError::NonUnit('u'))
        );
        assert!(p2("v")
            .specialize(&ModInt::new(1, 6), &ModInt::new(3, 6))
            .is_err());
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(p2("1 - u + v*u^2").to_string(), "u^2*v - u + 1");
        assert_eq!(
            p2("1 + u*v^2 - v - u + u^2*v").to_string(),
            "u^2*v + u*v^2 - u - v + 1"
        );
        assert_eq!(p1("-2*t^-1 + 3").to_string(), "3 - 2*t^-1");
        assert_eq!(LaurentPoly1::zero().to_string(), "0");
    }
}
