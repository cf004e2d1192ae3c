//! Minimal separated multiple of a single bivariate polynomial.
//!
//! A separable `p` has a weight `ω` for which `lp_ω(p)` divides a binomial
//! `a·x^N − b·y^M`, so the roots of `lp_ω(p)(x, 1)` differ by roots of
//! unity. Once `N` is known the problem is a finite linear system in the
//! coefficients of `f` and `g`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Rational, UniPoly};
use crate::cyclo::{cyclotomic_report, ratio_polynomial};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::mpoly::{MPoly, Weight};
use crate::zerodim::PairFG;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalResult {
    /// `(f, g)` with `K[(f, g)]` the whole algebra; `(1, 1)` when trivial.
    pub generator: PairFG,
    pub trivial: bool,
    pub n: Option<u64>,
    pub weight: Option<Weight>,
    /// Which step decided the outcome.
    pub diagnostic: String,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    generator: &'a PairFG,
    trivial: bool,
    n: Option<u64>,
    weight: Option<[u64; 2]>,
    diagnostic: &'a str,
}

impl Serialize for PrincipalResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResultJson {
            generator: &self.generator,
            trivial: self.trivial,
            n: self.n,
            weight: self.weight.map(|w| [w.wx(), w.wy()]),
            diagnostic: &self.diagnostic,
        }
        .serialize(s)
    }
}

fn trivial(n: Option<u64>, weight: Option<Weight>, why: impl Into<String>) -> PrincipalResult {
    PrincipalResult {
        generator: PairFG::one(),
        trivial: true,
        n,
        weight,
        diagnostic: why.into(),
    }
}

/// Generator of the algebra of separated multiples of `p`.
pub fn minimal_separated_multiple(p: &MPoly) -> Result<PrincipalResult> {
    if p.nvars() != 2 {
        return Err(Error::Precondition("expected a polynomial in two variables".into()));
    }
    if p.is_zero() {
        return Err(Error::ZeroInput("minimal separated multiple of zero"));
    }
    if !p.involves(0) || !p.involves(1) {
        return Err(Error::Precondition(format!("{p} is univariate")));
    }

    let (Some(a), Some(b)) = p.pure_power_exponents() else {
        return Ok(trivial(None, None, "no pure power of x or of y"));
    };
    let w = Weight::new(b as u64, a as u64)?;
    let h = p.leading_part(&w)?;
    if h.coeff(&[a, 0]).is_zero() {
        return Ok(trivial(None, Some(w), format!("leading part lacks x^{a}")));
    }
    let h1 = h.eval_y_one();
    if !h1.is_squarefree() {
        return Ok(trivial(None, Some(w), "leading part is not squarefree"));
    }
    if h1.coeff(0).is_zero() {
        return Ok(trivial(None, Some(w), "leading part is divisible by x"));
    }
    let deg_h = h1.degree().unwrap_or(0) as u64;
    let report = cyclotomic_report(&ratio_polynomial(&h1)?, deg_h * deg_h)?;
    let Some(n) = report.common_order else {
        return Ok(trivial(None, Some(w), "root ratios are not all roots of unity"));
    };
    if (n * w.wx()) % w.wy() != 0 {
        return Err(Error::Internal(format!(
            "order {n} incompatible with weight ({}, {})",
            w.wx(),
            w.wy()
        )));
    }
    let m = (n * w.wx() / w.wy()) as usize;
    let n_us = n as usize;

    // columns: a_N .. a_0, b_M .. b_0
    let ncols = n_us + m + 2;
    let col_a = |i: usize| n_us - i;
    let col_b = |j: usize| n_us + 1 + m - j;
    let mut rows: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    let mut put = |poly: &MPoly, col: usize, sign: i64| {
        for (e, c) in poly.terms() {
            let row = rows
                .entry(e.clone())
                .or_insert_with(|| vec![Rational::zero(); ncols]);
            row[col] += c * Rational::from_integer(sign.into());
        }
    };
    let vars = p.vars().clone();
    let x = MPoly::var(vars.clone(), 0);
    let mut r = MPoly::one(vars.clone());
    for i in 0..=n_us {
        if i > 0 {
            r = (&r * &x).rem_x(p)?;
        }
        put(&r, col_a(i), 1);
    }
    for j in 0..=m {
        let yj = MPoly::monomial(vars.clone(), vec![0, j as u32], Rational::one());
        put(&yj.rem_x(p)?, col_b(j), -1);
    }
    let matrix: Vec<Vec<Rational>> = rows.into_values().collect();
    let kernel = nullspace(&matrix, ncols);

    // pivot of a kernel row is its leading a-column; smallest k >= 1 wins
    let pick = kernel
        .iter()
        .filter_map(|v| {
            let pivot = v.iter().position(|c| !c.is_zero())?;
            (pivot < n_us).then_some((n_us - pivot, v))
        })
        .min_by_key(|(k, _)| *k);
    let Some((_, v)) = pick else {
        return Ok(trivial(
            Some(n),
            Some(w),
            format!("reached linear step, N={n}: only constant solutions"),
        ));
    };
    let f = UniPoly::from_coeffs((0..=n_us).map(|i| v[col_a(i)].clone()).collect());
    let g = UniPoly::from_coeffs((0..=m).map(|j| v[col_b(j)].clone()).collect());
    let c0 = UniPoly::constant(f.coeff(0));
    let pair = PairFG::new(&f - &c0, &g - &c0).monic();
    if pair.to_mpoly(vars).div_exact(p).is_err() {
        return Err(Error::Internal("kernel element is not a multiple of p".into()));
    }
    Ok(PrincipalResult {
        generator: pair,
        trivial: false,
        n: Some(n),
        weight: Some(w),
        diagnostic: format!("separable, N={n}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::mpoly::tests::bp;
    use proptest::prelude::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn hexagonal_example() {
        let r = minimal_separated_multiple(&bp(&[(1, 2, 0), (-1, 1, 1), (1, 0, 2)])).unwrap();
        assert!(!r.trivial);
        assert_eq!(r.n, Some(3));
        assert_eq!(r.generator, PairFG::new(up(&[0, 0, 0, 1]), up(&[0, 0, 0, -1])));
    }

    #[test]
    fn already_separated() {
        let r = minimal_separated_multiple(&bp(&[(1, 1, 0), (-1, 0, 1)])).unwrap();
        assert_eq!(r.generator, PairFG::new(up(&[0, 1]), up(&[0, 1])));
        assert_eq!(r.n, Some(1));
    }

    #[test]
    fn linear_step_rejects() {
        let p = bp(&[(1, 3, 0), (1, 2, 1), (1, 1, 2), (1, 0, 3), (1, 0, 2)]);
        let r = minimal_separated_multiple(&p).unwrap();
        assert!(r.trivial);
        assert_eq!(r.n, Some(4));
        assert!(r.diagnostic.contains("linear step"), "{}", r.diagnostic);
    }

    #[test]
    fn guard_rejects_missing_pure_powers() {
        let r = minimal_separated_multiple(&bp(&[(1, 1, 1), (-1, 0, 0)])).unwrap();
        assert!(r.trivial);
        assert_eq!(r.generator, PairFG::one());
    }

    #[test]
    fn preconditions() {
        assert!(minimal_separated_multiple(&bp(&[(1, 2, 0), (1, 0, 0)])).is_err());
        assert!(minimal_separated_multiple(&bp(&[])).is_err());
    }

    #[test]
    fn separated_inputs_are_their_own_generator() {
        let r = minimal_separated_multiple(&bp(&[(1, 1, 0), (1, 0, 1)])).unwrap();
        assert_eq!(r.generator, PairFG::new(up(&[0, 1]), up(&[0, -1])));
        // p = x^2 + x - y^3 is separated with different degrees
        let r = minimal_separated_multiple(&bp(&[(1, 2, 0), (1, 1, 0), (-1, 0, 3)])).unwrap();
        assert_eq!(r.generator, PairFG::new(up(&[0, 1, 1]), up(&[0, 0, 0, 1])));
    }

    fn separated_poly() -> impl Strategy<Value = (UniPoly, UniPoly)> {
        (
            prop::collection::vec(-3i64..=3, 1..=3),
            1i64..=3,
            prop::collection::vec(-3i64..=3, 1..=3),
            1i64..=3,
        )
            .prop_map(|(mut f, lf, mut g, lg)| {
                f.insert(0, 0);
                g.insert(0, 0);
                f.push(lf);
                g.push(lg);
                (UniPoly::from_ints(&f), UniPoly::from_ints(&g))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn output_is_a_separated_multiple((f, g) in separated_poly(), c in prop::sample::select(vec![-2i64, 3])) {
            let p = PairFG::new(f, g).to_mpoly(crate::mpoly::vars_of(&["x", "y"]));
            let r = minimal_separated_multiple(&p).unwrap();
            prop_assert!(!r.trivial);
            let sep = r.generator.to_mpoly(p.vars().clone());
            prop_assert!(sep.is_separated());
            prop_assert!(sep.div_exact(&p).is_ok());
            prop_assert_eq!(r.generator.f.degree().map(|d| d as u64), r.n);
            let scaled = minimal_separated_multiple(&p.scale(&q(c))).unwrap();
            prop_assert_eq!(scaled, r);
        }
    }
}
