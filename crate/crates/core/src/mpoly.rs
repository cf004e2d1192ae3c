//! Sparse multivariate polynomials over Q.
//!
//! Terms live in a map from exponent vectors to nonzero coefficients. The
//! bivariate helpers (weights, leading parts, gcd, `rem_x`) treat variable
//! 0 as `x` and variable 1 as `y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_terms, Rational, UniPoly};
use crate::error::{Error, Result};

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn vars_of(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Degree reverse lexicographic comparison; variable 0 is the largest.
pub fn degrevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (ea, eb) in a.iter().zip(b).rev() {
            if ea != eb {
                return eb.cmp(ea);
            }
        }
        Ordering::Equal
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(vars: Vars) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable with index `i`.
    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn monomial(vars: Vars, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { vars, terms }
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Embeds a univariate polynomial as a polynomial in variable `i`.
    pub fn from_unipoly(vars: Vars, i: usize, u: &UniPoly) -> Self {
        let n = vars.len();
        Self::from_terms(
            vars,
            u.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&k| k == 0)))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.values().all(One::is_one) && !self.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted descending in degrevlex.
    pub fn terms_degrevlex(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| degrevlex_cmp(b.0, a.0));
        t
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Leading term under degrevlex.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().max_by(|a, b| degrevlex_cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
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

    /// Normalizes to the primitive integer associate with positive
    /// degrevlex leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let num = self
            .terms
            .values()
            .fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den = self
            .terms
            .values()
            .fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut c = Rational::new(den, num);
        if self.leading_term().is_some_and(|(_, lc)| lc.is_negative()) {
            c = -c;
        }
        self.scale(&c)
    }

    /// Monic associate under degrevlex.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Exact quotient by `divisor` (degrevlex division); fails if the
    /// division leaves a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Result<MPoly> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((e, c)) = rem.leading_term() {
            if !e.iter().zip(&lm).all(|(a, b)| a >= b) {
                return Err(Error::InexactDivision(format!("{divisor} does not divide {self}")));
            }
            let shift: Vec<u32> = e.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let factor = c / &lc;
            rem = &rem - &divisor.mul_monomial(&shift, &factor);
            quot.add_term(shift, factor);
        }
        Ok(quot)
    }

    /// `self` as a univariate polynomial in variable `i`, if no other
    /// variable occurs.
    pub fn to_unipoly(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(i).map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(k, &v)| k != i && v > 0) {
                return None;
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images
    /// must share one target ring.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let Some(target) = images.first().map(|p| p.vars.clone()) else {
            return Ok(MPoly::zero(Vec::<String>::new().into()));
        };
        if images.iter().any(|p| p.vars != target) {
            return Err(Error::RingMismatch("substitution images in different rings".into()));
        }
        let mut out = MPoly::zero(target.clone());
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target.clone()), p.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Moves variable `i` to position `mapping[i]` of `new_vars`.
    pub fn embed(&self, new_vars: Vars, mapping: &[usize]) -> MPoly {
        let n = new_vars.len();
        MPoly::from_terms(
            new_vars,
            self.terms.iter().map(|(e, c)| {
                let mut ne = vec![0; n];
                for (i, &k) in e.iter().enumerate() {
                    ne[mapping[i]] += k;
                }
                (ne, c.clone())
            }),
        )
    }

    pub(crate) fn check_ring(&self, other: &MPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )));
        }
        Ok(())
    }

    fn require_bivariate(&self) -> Result<()> {
        if self.nvars() != 2 {
            return Err(Error::Precondition(format!(
                "expected a bivariate polynomial, got {} variables",
                self.nvars()
            )));
        }
        Ok(())
    }

    // ---- bivariate helpers --------------------------------------------

    /// Maximum weight of a monomial of `self`.
    pub fn weight_of(&self, w: &Weight) -> Result<u64> {
        self.require_bivariate()?;
        self.terms
            .keys()
            .map(|e| w.of(e[0], e[1]))
            .max()
            .ok_or(Error::ZeroInput("weight of the zero polynomial"))
    }

    /// Sum of the terms of maximal weight.
    pub fn leading_part(&self, w: &Weight) -> Result<MPoly> {
        let top = self.weight_of(w)?;
        Ok(MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| w.of(e[0], e[1]) == top)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// True when no monomial is divisible by `x·y`.
    pub fn is_separated(&self) -> bool {
        self.nvars() == 2 && self.terms.keys().all(|e| e[0] == 0 || e[1] == 0)
    }

    /// `(f, g)` with `self = f(x) - g(y)`; the constant term goes to `f`.
    pub fn separated_parts(&self) -> Option<(UniPoly, UniPoly)> {
        if !self.is_separated() {
            return None;
        }
        let mut f = vec![Rational::zero(); self.degree_in(0).unwrap_or(0) as usize + 1];
        let mut g = vec![Rational::zero(); self.degree_in(1).unwrap_or(0) as usize + 1];
        for (e, c) in &self.terms {
            if e[1] == 0 {
                f[e[0] as usize] = c.clone();
            } else {
                g[e[1] as usize] = -c.clone();
            }
        }
        Some((UniPoly::from_coeffs(f), UniPoly::from_coeffs(g)))
    }

    /// Largest `a ≥ 1` with `x^a` a term and largest `b ≥ 1` with `y^b` a term.
    pub fn pure_power_exponents(&self) -> (Option<u32>, Option<u32>) {
        let a = self.terms.keys().filter(|e| e[1] == 0 && e[0] > 0).map(|e| e[0]).max();
        let b = self.terms.keys().filter(|e| e[0] == 0 && e[1] > 0).map(|e| e[1]).max();
        (a, b)
    }

    /// `self(x, 1)`.
    pub fn eval_y_one(&self) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.degree_in(0).map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Coefficients with respect to `y`, each a polynomial in `x`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let Some(dy) = self.degree_in(1) else {
            return Vec::new();
        };
        let dx = self.degree_in(0).unwrap_or(0) as usize;
        let mut rows = vec![vec![Rational::zero(); dx + 1]; dy as usize + 1];
        for (e, c) in &self.terms {
            rows[e[1] as usize][e[0] as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_coeffs(vars: Vars, coeffs: &[UniPoly]) -> Self {
        MPoly::from_terms(
            vars,
            coeffs.iter().enumerate().flat_map(|(j, u)| {
                u.coeffs()
                    .iter()
                    .enumerate()
                    .map(move |(i, c)| (vec![i as u32, j as u32], c.clone()))
            }),
        )
    }

    /// Remainder of division by `divisor` in `(Q[y])[x]`. The divisor's
    /// leading coefficient in `x` must be a nonzero constant.
    pub fn rem_x(&self, divisor: &MPoly) -> Result<MPoly> {
        self.require_bivariate()?;
        self.check_ring(divisor)?;
        let d = divisor.degree_in(0).ok_or(Error::DivisionByZero)?;
        let lead: Vec<_> = divisor.terms.iter().filter(|(e, _)| e[0] == d).collect();
        if lead.len() != 1 || lead[0].0[1] != 0 {
            return Err(Error::Precondition(
                "x-leading coefficient of the divisor must be a constant".into(),
            ));
        }
        let lc_inv = lead[0].1.recip();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree_in(0).filter(|&dr| dr >= d) {
            let top: Vec<(Vec<u32>, Rational)> = rem
                .terms
                .iter()
                .filter(|(e, _)| e[0] == dr)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect();
            for (e, c) in top {
                rem = &rem - &divisor.mul_monomial(&[dr - d, e[1]], &(c * &lc_inv));
            }
        }
        Ok(rem)
    }
}

/// Greatest common divisor in `Q[x, y]`, normalized to be primitive over Z
/// with positive degrevlex leading coefficient.
pub fn gcd_bivariate(a: &MPoly, b: &MPoly) -> Result<MPoly> {
    a.require_bivariate()?;
    a.check_ring(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials"));
    }
    if a.is_zero() {
        return Ok(b.primitive_normalized());
    }
    if b.is_zero() {
        return Ok(a.primitive_normalized());
    }
    let (ca, pa) = content_split(&a.y_coeffs())?;
    let (cb, pb) = content_split(&b.y_coeffs())?;
    let content = ca.gcd(&cb)?;
    let mut u = pa;
    let mut v = pb;
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    let g = loop {
        if v.len() <= 1 {
            // primitive and free of y: a unit
            break vec![UniPoly::one()];
        }
        let r = pseudo_rem_y(&u, &v);
        if r.is_empty() {
            break v;
        }
        u = v;
        v = content_split(&r)?.1;
    };
    let g: Vec<UniPoly> = g.iter().map(|c| c * &content).collect();
    Ok(MPoly::from_y_coeffs(a.vars.clone(), &g).primitive_normalized())
}

/// Content (gcd of the coefficients in Q[x]) and primitive part of a
/// polynomial in y.
fn content_split(coeffs: &[UniPoly]) -> Result<(UniPoly, Vec<UniPoly>)> {
    let mut c = UniPoly::zero();
    for k in coeffs {
        if !k.is_zero() {
            c = if c.is_zero() { k.monic() } else { c.gcd(k)? };
        }
    }
    let prim = coeffs
        .iter()
        .map(|k| k.exact_div(&c))
        .collect::<Result<Vec<_>>>()?;
    Ok((c, prim))
}

fn trim(mut v: Vec<UniPoly>) -> Vec<UniPoly> {
    while v.last().is_some_and(UniPoly::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `u` by `v` as polynomials in y over Q[x].
fn pseudo_rem_y(u: &[UniPoly], v: &[UniPoly]) -> Vec<UniPoly> {
    let dv = v.len() - 1;
    let lv = &v[dv];
    let mut r = trim(u.to_vec());
    while r.len() > dv {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lv;
        }
        for (i, vc) in v.iter().enumerate() {
            r[dr - dv + i] = &r[dr - dv + i] - &(&lr * vc);
        }
        r = trim(r);
    }
    r
}

/// Positive integer weights `ω(x^i y^j) = wx·i + wy·j`, stored with
/// `gcd(wx, wy) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    wx: u64,
    wy: u64,
}

impl Weight {
    pub fn new(wx: u64, wy: u64) -> Result<Self> {
        if wx == 0 || wy == 0 {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        let g = wx.gcd(&wy);
        Ok(Weight {
            wx: wx / g,
            wy: wy / g,
        })
    }

    pub fn wx(&self) -> u64 {
        self.wx
    }

    pub fn wy(&self) -> u64 {
        self.wy
    }

    pub fn of(&self, i: u32, j: u32) -> u64 {
        self.wx * i as u64 + self.wy * j as u64
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_degrevlex().into_iter().map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            (c.clone(), mono.join("*"))
        });
        f.write_str(&format_terms(terms))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.join(","), self)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.vars, rhs.vars, "ring mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.vars, rhs.vars, "ring mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.vars, rhs.vars, "ring mismatch");
        let mut out = MPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
