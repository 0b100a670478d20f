//! Dense univariate polynomials over a prime field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ntt;

/// Below this operand length products use the schoolbook method.
const SCHOOLBOOK_CUTOFF: usize = 48;
/// Divisor and quotient lengths from which division goes through a reversed
/// series inverse instead of long division.
const FAST_DIVISION_CUTOFF: usize = 96;

/// A polynomial with coefficients stored low-to-high and no trailing zeros.
/// The zero polynomial has an empty coefficient vector and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn x(field: Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn constant(field: Field, c: u64) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: Field, c: u64, k: usize) -> Self {
        let c = field.reduce(c);
        if c == 0 {
            return Self::zero(field);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { field, coeffs }
    }

    /// Builds a polynomial from low-to-high coefficients, reducing them
    /// modulo `p` and stripping trailing zeros.
    pub fn from_coeffs(field: Field, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        Self::from_reduced(field, coeffs)
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::from_reduced(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub(crate) fn from_reduced(field: Field, coeffs: Vec<u64>) -> Self {
        let mut p = Poly { field, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients, i.e. `degree + 1` (0 for zero).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return Poly::zero(f);
        }
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading_coeff()))
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; k + self.coeffs.len()];
        coeffs[k..].copy_from_slice(&self.coeffs);
        Poly {
            field: self.field,
            coeffs,
        }
    }

    /// `self mod x^t`.
    pub fn truncate(&self, t: usize) -> Poly {
        if self.coeffs.len() <= t {
            return self.clone();
        }
        Poly::from_reduced(self.field, self.coeffs[..t].to_vec())
    }

    /// Coefficients `lo..hi`, shifted down to start at degree zero.
    pub fn slice(&self, lo: usize, hi: usize) -> Poly {
        let hi = hi.min(self.coeffs.len());
        if lo >= hi {
            return Poly::zero(self.field);
        }
        Poly::from_reduced(self.field, self.coeffs[lo..hi].to_vec())
    }

    /// `self += c * x^k * other`.
    pub(crate) fn add_scaled_shifted(&mut self, c: u64, k: usize, other: &Poly) {
        if c == 0 || other.is_zero() {
            return;
        }
        let f = self.field;
        let need = k + other.coeffs.len();
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (dst, &src) in self.coeffs[k..].iter_mut().zip(&other.coeffs) {
            *dst = f.add(*dst, f.mul(c, src));
        }
        self.normalize();
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_same_field(self, other)?;
        Ok(Poly::from_reduced(
            self.field,
            mul_coeffs(&self.coeffs, &other.coeffs, &self.field),
        ))
    }

    /// `self * other mod x^t`.
    pub fn mul_trunc(&self, other: &Poly, t: usize) -> Poly {
        let a = &self.coeffs[..self.coeffs.len().min(t)];
        let b = &other.coeffs[..other.coeffs.len().min(t)];
        let mut c = mul_coeffs(a, b, &self.field);
        c.truncate(t);
        Poly::from_reduced(self.field, c)
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        check_same_field(self, b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Poly::zero(f), self.clone()));
        }
        let qlen = self.coeffs.len() - b.coeffs.len() + 1;
        if b.coeffs.len() >= FAST_DIVISION_CUTOFF && qlen >= FAST_DIVISION_CUTOFF {
            return self.divrem_newton(b);
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; qlen];
        let lc_inv = f.inv(b.leading_coeff());
        let db = b.coeffs.len() - 1;
        for k in (0..qlen).rev() {
            let c = f.mul(rem[k + db], lc_inv);
            quo[k] = c;
            if c != 0 {
                for (i, &bc) in b.coeffs.iter().enumerate() {
                    rem[k + i] = f.sub(rem[k + i], f.mul(c, bc));
                }
            }
        }
        rem.truncate(db);
        Ok((Poly::from_reduced(f, quo), Poly::from_reduced(f, rem)))
    }

    fn divrem_newton(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let da = self.coeffs.len() - 1;
        let db = b.coeffs.len() - 1;
        let qlen = da - db + 1;
        let rev_a = self.reverse(da)?;
        let rev_b = b.reverse(db)?;
        let inv = rev_b.series_inverse(qlen)?;
        let rev_q = rev_a.mul_trunc(&inv, qlen);
        let q = rev_q.reverse(qlen - 1)?;
        let r = self - &(&q * b);
        Ok((q, r))
    }

    /// Power series inverse modulo `x^t` by Newton iteration.
    pub fn series_inverse(&self, t: usize) -> Result<Poly> {
        let f = self.field;
        if self.coeff(0) == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        if t == 0 {
            return Ok(Poly::zero(f));
        }
        let mut g = Poly::constant(f, f.inv(self.coeff(0)));
        let mut prec = 1;
        while prec < t {
            let next = (2 * prec).min(t);
            let e = self.mul_trunc(&g, next);
            // g <- g (2 - e)
            let two_minus_e = &Poly::constant(f, 2) - &e;
            g = g.mul_trunc(&two_minus_e, next);
            prec = next;
        }
        Ok(g)
    }

    /// `x^d * self(1/x)`; requires `deg self <= d`.
    pub fn reverse(&self, d: usize) -> Result<Poly> {
        match self.degree() {
            None => Ok(self.clone()),
            Some(deg) if deg > d => Err(Error::DegreeBound { degree: deg, bound: d }),
            Some(_) => {
                let mut coeffs = vec![0u64; d + 1];
                for (i, &c) in self.coeffs.iter().enumerate() {
                    coeffs[d - i] = c;
                }
                Ok(Poly::from_reduced(self.field, coeffs))
            }
        }
    }
}

fn check_same_field(a: &Poly, b: &Poly) -> Result<()> {
    if a.field != b.field {
        return Err(Error::ModulusMismatch(a.field.modulus(), b.field.modulus()));
    }
    Ok(())
}

/// Product of coefficient slices (reduced inputs, unnormalized output of
/// length `a.len() + b.len() - 1`, or empty).
pub(crate) fn mul_coeffs(a: &[u64], b: &[u64], f: &Field) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_CUTOFF {
        return mul_schoolbook(a, b, f);
    }
    let len = (a.len() + b.len() - 1).next_power_of_two();
    if ntt::supports(f, len) {
        ntt::convolve_direct(a, b, f)
    } else {
        ntt::convolve_three_primes(a, b, f)
    }
}

fn mul_schoolbook(a: &[u64], b: &[u64], f: &Field) -> Vec<u64> {
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (dst, &y) in acc[i..].iter_mut().zip(b) {
            *dst += (x * y) as u128;
        }
    }
    acc.into_iter().map(|v| f.reduce_wide(v)).collect()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        self.add_scaled_shifted(1, 0, rhs);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let minus_one = self.field.neg(1);
        self.add_scaled_shifted(minus_one, 0, rhs);
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

/// Panics if the operands live over different fields; use
/// [`Poly::try_mul`] for a checked product.
impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials over different fields")
    }
}
