//! Exact linear algebra over Q.
//!
//! Elimination runs on integer rows (denominators cleared up front) with
//! content removal after each row update, so no fractions appear until the
//! final division by the pivots. Pivot choice is deterministic: leftmost
//! column with a nonzero entry, smallest row index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;

fn to_integer_row(row: &[Rational], ncols: usize) -> Vec<BigInt> {
    let den = row
        .iter()
        .take(ncols)
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .take(ncols)
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    out.resize(ncols, BigInt::zero());
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// `target = p * target - a * source` where `p = source[col]`, `a = target[col]`.
fn eliminate(target: &mut [BigInt], source: &[BigInt], col: usize) {
    let a = target[col].clone();
    if a.is_zero() {
        return;
    }
    let p = &source[col];
    let g = a.gcd(p);
    let (a, p) = (&a / &g, p / &g);
    for (t, s) in target.iter_mut().zip(source) {
        *t = &*t * &p - s * &a;
    }
    make_primitive(target);
}

/// Reduced row echelon form of the row space, zero rows dropped, together
/// with the pivot column of each returned row.
pub fn rref_with_pivots(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| to_integer_row(r, ncols)).collect();
    for r in m.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(r) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, r);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            eliminate(row, pivot_row, col);
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    // back substitution
    for k in (0..rank).rev() {
        let col = pivots[k];
        let (head, tail) = m.split_at_mut(k);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            eliminate(row, pivot_row, col);
        }
    }
    let out = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &col)| {
            let p = Rational::from_integer(row[col].clone());
            row.into_iter()
                .map(|c| Rational::from_integer(c) / &p)
                .collect()
        })
        .collect();
    (out, pivots)
}

pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    rref_with_pivots(rows, ncols).0
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref_with_pivots(rows, ncols).1.len()
}

/// Basis of `{v : M v = 0}`, returned in reduced row echelon form (so the
/// basis is canonical for the kernel and the chosen column order).
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref_with_pivots(matrix, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let basis: Vec<Vec<Rational>> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect();
    rref(&basis, ncols)
}

/// True when `row` lies in the span of the RREF rows `basis` with pivots `pivots`.
pub fn in_span(basis: &[Vec<Rational>], pivots: &[usize], row: &[Rational]) -> bool {
    let mut v = row.to_vec();
    for (b, &pc) in basis.iter().zip(pivots) {
        let c = v[pc].clone();
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x -= &c * y;
        }
    }
    v.iter().all(|c| c.is_zero())
}
