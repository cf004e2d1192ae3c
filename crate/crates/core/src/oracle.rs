//! Brute-force reference computations for tests.
//!
//! Everything here is dense linear algebra over explicit coefficient
//! vectors, with its own Gauss–Jordan elimination and term products, so it
//! shares no code with the algorithms it checks (ideal membership excepted,
//! which goes through normal forms).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, TermOrder};
use crate::mpoly::MPoly;
use crate::zerodim::PairFG;

/// Reduced row echelon form by plain Gauss–Jordan; returns rows and pivots.
fn gauss_jordan(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn kernel(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = gauss_jordan(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    gauss_jordan(basis, ncols).0
}

fn bivariate_terms(p: &MPoly) -> Result<Vec<((u32, u32), Rational)>> {
    if p.nvars() != 2 {
        return Err(Error::Precondition("oracle expects a polynomial in two variables".into()));
    }
    Ok(p.terms().map(|(e, c)| ((e[0], e[1]), c.clone())).collect())
}

fn build(vars: &crate::mpoly::Vars, terms: &BTreeMap<(u32, u32), Rational>) -> MPoly {
    MPoly::from_terms(vars.clone(), terms.iter().map(|(&(i, j), c)| (vec![i, j], c.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparableWitness {
    /// Cofactor `q`, monic under degrevlex.
    pub cofactor: MPoly,
    /// The separated product `q·p`.
    pub multiple: MPoly,
}

/// Searches for `q ≠ 0` with `deg q ≤ d` and `q·p` separated.
pub fn oracle_separable(p: &MPoly, d: u32) -> Result<Option<SeparableWitness>> {
    oracle_separable_bounded(p, d, None)
}

/// As [`oracle_separable`], additionally requiring `deg_x(q·p) ≤ max_x`.
pub fn oracle_separable_bounded(p: &MPoly, d: u32, max_x: Option<u32>) -> Result<Option<SeparableWitness>> {
    let pt = bivariate_terms(p)?;
    if pt.is_empty() {
        return Err(Error::ZeroInput("oracle on the zero polynomial"));
    }
    let monos: Vec<(u32, u32)> = (0..=d).flat_map(|s| (0..=s).map(move |i| (i, s - i))).collect();
    let ncols = monos.len();
    let mut rows: BTreeMap<(u32, u32), Vec<Rational>> = BTreeMap::new();
    for (c, &(qi, qj)) in monos.iter().enumerate() {
        for ((pi, pj), coeff) in &pt {
            let e = (qi + pi, qj + pj);
            let mixed = e.0 > 0 && e.1 > 0;
            let too_wide = max_x.is_some_and(|b| e.0 > b);
            if mixed || too_wide {
                rows.entry(e).or_insert_with(|| vec![Rational::zero(); ncols])[c] += coeff;
            }
        }
    }
    let ker = kernel(rows.into_values().collect(), ncols);
    let Some(v) = ker.last() else {
        return Ok(None);
    };
    let lead = monos
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .max_by_key(|((i, j), _)| (i + j, *i))
        .map(|(_, c)| c.clone())
        .expect("kernel vectors are nonzero");
    let mut q: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (&m, c) in monos.iter().zip(v) {
        if !c.is_zero() {
            q.insert(m, c / &lead);
        }
    }
    let mut prod: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (&(qi, qj), qc) in &q {
        for ((pi, pj), pc) in &pt {
            *prod.entry((qi + pi, qj + pj)).or_insert_with(Rational::zero) += qc * pc;
        }
    }
    prod.retain(|_, c| !c.is_zero());
    Ok(Some(SeparableWitness {
        cofactor: build(p.vars(), &q),
        multiple: build(p.vars(), &prod),
    }))
}

/// Basis of `{(f, g) : deg f, deg g ≤ d, f − g ∈ I}`.
pub fn oracle_algebra_slice(ideal: &Ideal, d: usize) -> Result<Vec<PairFG>> {
    if ideal.vars().len() != 2 {
        return Err(Error::Precondition("oracle expects an ideal in two variables".into()));
    }
    // columns: a_d .. a_0, b_d .. b_0
    let ncols = 2 * (d + 1);
    let mut rows: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    let vars = ideal.vars().clone();
    for k in 0..=d {
        for (var, col, sign) in [(0usize, d - k, 1i64), (1, 2 * d + 1 - k, -1)] {
            let mut e = vec![0u32; 2];
            e[var] = k as u32;
            let nf = ideal.normal_form(&MPoly::monomial(vars.clone(), e, Rational::one()), &TermOrder::DegRevLex)?;
            for (m, c) in nf.terms() {
                rows.entry(m.clone()).or_insert_with(|| vec![Rational::zero(); ncols])[col] +=
                    c * Rational::from_integer(sign.into());
            }
        }
    }
    Ok(kernel(rows.into_values().collect(), ncols)
        .into_iter()
        .map(|v| from_vector(&v, d))
        .collect())
}

/// Coordinates `[f_d .. f_0, g_d .. g_0]`.
pub fn pair_vector(p: &PairFG, d: usize) -> Vec<Rational> {
    (0..=d)
        .rev()
        .map(|k| p.f.coeff(k))
        .chain((0..=d).rev().map(|k| p.g.coeff(k)))
        .collect()
}

fn from_vector(v: &[Rational], d: usize) -> PairFG {
    PairFG::new(
        UniPoly::from_coeffs((0..=d).map(|k| v[d - k].clone()).collect()),
        UniPoly::from_coeffs((0..=d).map(|k| v[2 * d + 1 - k].clone()).collect()),
    )
}

fn pair_degree(p: &PairFG) -> usize {
    p.f.degree().unwrap_or(0).max(p.g.degree().unwrap_or(0))
}

pub fn span_rank(pairs: &[PairFG], d: usize) -> usize {
    gauss_jordan(pairs.iter().map(|p| pair_vector(p, d)).collect(), 2 * (d + 1)).1.len()
}

/// Whether two families of pairs of degree ≤ `d` span the same space.
pub fn same_span(a: &[PairFG], b: &[PairFG], d: usize) -> bool {
    let both: Vec<PairFG> = a.iter().chain(b).cloned().collect();
    let r = span_rank(&both, d);
    r == span_rank(a, d) && r == span_rank(b, d)
}

/// Degree-≤`d` part of the unital algebra generated by `gens`, computed
/// from products of degree ≤ `work` (at least `d`).
pub fn generated_slice(gens: &[PairFG], d: usize, work: usize) -> Vec<PairFG> {
    let work = work.max(d);
    let ncols = 2 * (work + 1);
    // columns: f_work..f_{d+1}, g_work..g_{d+1}, f_d..f_0, g_d..g_0
    let high = work - d;
    let coords = |p: &PairFG| -> Vec<Rational> {
        let mut v = Vec::with_capacity(ncols);
        v.extend((d + 1..=work).rev().map(|k| p.f.coeff(k)));
        v.extend((d + 1..=work).rev().map(|k| p.g.coeff(k)));
        v.extend((0..=d).rev().map(|k| p.f.coeff(k)));
        v.extend((0..=d).rev().map(|k| p.g.coeff(k)));
        v
    };
    let small: Vec<&PairFG> = gens.iter().filter(|g| pair_degree(g) <= work).collect();
    let mut span: Vec<Vec<Rational>> = Vec::new();
    let mut frontier = vec![PairFG::one()];
    frontier.extend(small.iter().map(|g| (*g).clone()));
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in frontier {
            if pair_degree(&e) > work || e.is_zero() {
                continue;
            }
            let mut trial = span.clone();
            trial.push(coords(&e));
            let (r, _) = gauss_jordan(trial, ncols);
            if r.len() > span.len() {
                span = r;
                for g in &small {
                    next.push(e.mul(g));
                }
            }
        }
        frontier = next;
    }
    let (rows, pivots) = gauss_jordan(span, ncols);
    rows.into_iter()
        .zip(pivots)
        .filter(|(_, p)| *p >= 2 * high)
        .map(|(r, _)| {
            let low = &r[2 * high..];
            from_vector(low, d)
        })
        .collect()
}
