//! Root-of-unity detection for ratios of polynomial roots.
//!
//! The ratios `ζ_j / ζ_i` of the roots of `f` are exactly the roots of
//! `R(z) = Res_x(f(x), f(z·x))`. Whether all of them are roots of unity is
//! decided by stripping cyclotomic factors `Φ_n` off the squarefree part of
//! `R`; only orders with `φ(n) ≤ deg` can occur, and `φ(n) ≥ sqrt(n/2)`
//! bounds the search to `n ≤ 2·deg²`.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{sylvester_resultant, Rational, UniPoly};
use crate::error::{Error, Result};

/// Outcome of the cyclotomic factor extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicReport {
    pub all_roots_of_unity: bool,
    /// Least common multiple of `orders_found`; present only when every
    /// root is a root of unity.
    pub common_order: Option<u64>,
    pub orders_found: BTreeSet<u64>,
    /// What is left of the squarefree part after removing all cyclotomic
    /// factors (monic). Constant iff `all_roots_of_unity`.
    pub non_cyclotomic_remainder: UniPoly,
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Memo for cyclotomic polynomials, scoped to one computation.
#[derive(Default)]
struct CyclotomicTable {
    memo: HashMap<u64, UniPoly>,
}

impl CyclotomicTable {
    fn get(&mut self, n: u64) -> UniPoly {
        if let Some(p) = self.memo.get(&n) {
            return p.clone();
        }
        let mut divisor = UniPoly::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                divisor = &divisor * &self.get(d);
            }
        }
        let xn_minus_1 = &UniPoly::monomial(Rational::from_integer(1.into()), n as usize)
            - &UniPoly::one();
        let phi = xn_minus_1
            .exact_div(&divisor)
            .expect("z^n - 1 is the product of its cyclotomic factors");
        self.memo.insert(n, phi.clone());
        phi
    }
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Result<UniPoly> {
    if n == 0 {
        return Err(Error::Precondition("cyclotomic order must be positive".into()));
    }
    Ok(CyclotomicTable::default().get(n))
}

/// `Res_x(f(x), f(z·x))` as a polynomial in `z`.
pub fn ratio_polynomial(f: &UniPoly) -> Result<UniPoly> {
    let Some(m) = f.degree() else {
        return Err(Error::ZeroInput("ratio polynomial of zero"));
    };
    if m == 0 {
        return Err(Error::Precondition(
            "ratio polynomial needs a nonconstant polynomial".into(),
        ));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::Precondition(
            "ratio polynomial needs f(0) != 0".into(),
        ));
    }
    if !f.is_squarefree() {
        return Err(Error::Precondition(
            "ratio polynomial needs a squarefree polynomial".into(),
        ));
    }
    let lhs: Vec<UniPoly> = f.coeffs().iter().cloned().map(UniPoly::constant).collect();
    let rhs: Vec<UniPoly> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| UniPoly::monomial(c.clone(), i))
        .collect();
    Ok(sylvester_resultant(&lhs, &rhs))
}

/// Every `n` with `φ(n) ≤ bound`, ascending.
pub fn orders_with_phi_at_most(bound: u64) -> Vec<u64> {
    let limit = 2 * bound * bound;
    (1..=limit.max(2)).filter(|&n| euler_phi(n) <= bound).collect()
}

/// Splits the cyclotomic factors off the squarefree part of `r`.
pub fn cyclotomic_report(r: &UniPoly, degree_bound: u64) -> Result<CyclotomicReport> {
    if r.is_zero() {
        return Err(Error::ZeroInput("cyclotomic report of zero"));
    }
    let mut residue = r.squarefree_part()?;
    let sf_degree = residue.degree().unwrap_or(0) as u64;
    let bound = degree_bound.min(sf_degree);
    let mut table = CyclotomicTable::default();
    let mut orders = BTreeSet::new();
    for n in orders_with_phi_at_most(bound) {
        let deg = residue.degree().unwrap_or(0) as u64;
        if deg == 0 {
            break;
        }
        if euler_phi(n) > deg {
            continue;
        }
        let phi = table.get(n);
        let (quot, rem) = residue.divrem(&phi)?;
        if rem.is_zero() {
            residue = quot;
            orders.insert(n);
        }
    }
    let all = residue.is_constant();
    let common_order = all.then(|| orders.iter().fold(1u64, |acc, &n| acc.lcm(&n)));
    Ok(CyclotomicReport {
        all_roots_of_unity: all,
        common_order,
        orders_found: orders,
        non_cyclotomic_remainder: residue.monic(),
    })
}
