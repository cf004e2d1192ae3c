//! Exact rational arithmetic and dense univariate polynomials over Q.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. `UniPoly` stores coefficients
//! densely, index = exponent, and never keeps trailing zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qq(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense univariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients and positive leading coefficient.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let num = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let c = Rational::new(num, den);
        if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Integer coefficients of the primitive part.
    pub(crate) fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_part()
            .coeffs
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient of an exact division; fails when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (quot, rem) = self.divrem(divisor)?;
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!(
                "{} does not divide {}",
                divisor.display_in("x"),
                self.display_in("x")
            )));
        }
        Ok(quot)
    }

    /// Monic gcd via a primitive remainder sequence over Z.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput("gcd of two zero polynomials"));
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        let mut a = self.primitive_integer_coeffs();
        let mut b = other.primitive_integer_coeffs();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_int(pseudo_rem_int(&a, &b));
            a = b;
            b = r;
        }
        Ok(UniPoly::from_coeffs(a.into_iter().map(Rational::from_integer).collect()).monic())
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroInput("squarefree part of zero"));
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_ok_and(|g| g.is_constant())
    }

    /// Sylvester resultant, computed by fraction-free elimination.
    pub fn resultant(&self, other: &UniPoly) -> Result<Rational> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput("resultant with a zero polynomial"));
        }
        let ca = self.content();
        let cb = other.content();
        let a: Vec<BigInt> = self.primitive_integer_coeffs();
        let b: Vec<BigInt> = other.primitive_integer_coeffs();
        let da = a.len() - 1;
        let db = b.len() - 1;
        let det = sylvester_resultant(&a, &b);
        // Res(ca*a', cb*b') = ca^db * cb^da * Res(a', b')
        let scale = num_traits::pow(ca, db) * num_traits::pow(cb, da);
        Ok(Rational::from_integer(det) * scale)
    }

    /// Renders the polynomial in the named variable, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (c.clone(), mono)
            });
        format_terms(terms)
    }
}

/// Joins `(coefficient, monomial)` pairs as `c*m + ... - c*m`.
pub(crate) fn format_terms(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.display_in("x"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Integer helpers

fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn primitive_int(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = trim_int(v);
    let Some(last) = v.last() else {
        return v;
    };
    let mut g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if last.is_negative() {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, coefficients ascending.
fn pseudo_rem_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim_int(a.to_vec());
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        r = trim_int(r);
    }
    r
}

/// Commutative ring with exact division, enough for Bareiss elimination.
pub(crate) trait ExactRing: Clone {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_sub(&self, other: &Self) -> Self;
    fn r_neg(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
}

impl ExactRing for UniPoly {
    fn r_zero() -> Self {
        UniPoly::zero()
    }
    fn r_one() -> Self {
        UniPoly::one()
    }
    fn r_is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        self.exact_div(other)
            .expect("Bareiss step must divide exactly")
    }
}

/// Determinant by Bareiss fraction-free elimination. Pivot: first nonzero
/// entry in the column, smallest row index.
pub(crate) fn bareiss_det<T: ExactRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::r_one();
    }
    let mut negate = false;
    let mut prev = T::r_one();
    for k in 0..n {
        if m[k][k].r_is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].r_is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return T::r_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].r_mul(&m[k][k]).r_sub(&m[i][k].r_mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.r_neg()
    } else {
        det
    }
}

/// Resultant of two coefficient vectors (ascending) whose formal degrees
/// are their lengths minus one. Leading coefficients may vanish.
pub(crate) fn sylvester_resultant<T: ExactRing>(a: &[T], b: &[T]) -> T {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    let mut m = vec![vec![T::r_zero(); n]; n];
    for r in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            m[r][r + i] = c.clone();
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            m[db + r][r + i] = c.clone();
        }
    }
    bareiss_det(m)
}
