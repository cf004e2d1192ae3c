//! Separated elements of zero-dimensional ideals.
//!
//! With `I ∩ Q[x] = ⟨p⟩` and `I ∩ Q[y] = ⟨q⟩`, every pair is congruent to
//! one with `deg f < deg p` and `deg g < deg q`; those form a finite
//! linear system. Its solutions (row-reduced, so the `f_i` have distinct
//! degrees) together with `(xⁱp, 0)` and `(0, yʲq)` generate the algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, TermOrder};
use crate::linalg::nullspace;
use crate::mpoly::{MPoly, Vars};

/// An element `(f(x), g(y))`; it stands for the polynomial `f(x) − g(y)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairFG {
    pub f: UniPoly,
    pub g: UniPoly,
}

impl PairFG {
    pub fn new(f: UniPoly, g: UniPoly) -> Self {
        PairFG { f, g }
    }

    pub fn zero() -> Self {
        Self::new(UniPoly::zero(), UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::new(UniPoly::one(), UniPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// True for scalar multiples of `(1, 1)`.
    pub fn is_constant(&self) -> bool {
        self.f.is_constant() && self.g.is_constant() && self.f == self.g
    }

    pub fn add(&self, o: &PairFG) -> PairFG {
        Self::new(&self.f + &o.f, &self.g + &o.g)
    }

    pub fn sub(&self, o: &PairFG) -> PairFG {
        Self::new(&self.f - &o.f, &self.g - &o.g)
    }

    pub fn mul(&self, o: &PairFG) -> PairFG {
        Self::new(&self.f * &o.f, &self.g * &o.g)
    }

    pub fn scale(&self, c: &Rational) -> PairFG {
        Self::new(self.f.scale(c), self.g.scale(c))
    }

    pub fn pow(&self, e: u32) -> PairFG {
        Self::new(self.f.pow(e), self.g.pow(e))
    }

    /// `f(x) − g(y)` in `Q[vars]`, with `x` and `y` the variables 0 and 1.
    pub fn to_mpoly(&self, vars: Vars) -> MPoly {
        &MPoly::from_unipoly(vars.clone(), 0, &self.f) - &MPoly::from_unipoly(vars, 1, &self.g)
    }

    /// Rescales so that `f` (or, if `f` is constant, `g`) is monic.
    pub fn monic(&self) -> PairFG {
        let lead = if self.f.degree().unwrap_or(0) > 0 || self.g.is_zero() {
            self.f.leading_coeff()
        } else {
            self.g.leading_coeff()
        };
        if lead.is_zero() {
            return self.clone();
        }
        self.scale(&lead.recip())
    }
}

impl fmt::Display for PairFG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f.display_in("x"), self.g.display_in("y"))
    }
}

impl Serialize for PairFG {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PairFG", 2)?;
        st.serialize_field("f", &self.f.display_in("x"))?;
        st.serialize_field("g", &self.g.display_in("y"))?;
        st.end()
    }
}

/// Data describing the algebra of a zero-dimensional ideal and a
/// complement `V` of it inside `Q[x]_{<deg p} × Q[y]_{<deg q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDimAlgebra {
    pub p: UniPoly,
    pub q: UniPoly,
    /// The `(f_i, g_i)`, each with monic `f_i`, pairwise distinct `deg f_i`.
    pub basis_pairs: Vec<PairFG>,
    pub v_exponents_x: BTreeSet<usize>,
    pub v_exponents_y: BTreeSet<usize>,
}

impl ZeroDimAlgebra {
    pub fn dim_v(&self) -> usize {
        self.v_exponents_x.len() + self.v_exponents_y.len()
    }

    /// Representative in `V` of the class of `pair` modulo the algebra.
    pub fn reduce_to_v(&self, pair: &PairFG) -> Result<PairFG> {
        let mut f = if self.p.is_one() {
            UniPoly::zero()
        } else {
            pair.f.rem(&self.p)?
        };
        let mut g = if self.q.is_one() {
            UniPoly::zero()
        } else {
            pair.g.rem(&self.q)?
        };
        let mut by_degree: BTreeMap<usize, &PairFG> = BTreeMap::new();
        for b in &self.basis_pairs {
            if let Some(d) = b.f.degree() {
                by_degree.insert(d, b);
            }
        }
        for (&d, b) in by_degree.iter().rev() {
            let c = f.coeff(d);
            if !c.is_zero() {
                f = &f - &b.f.scale(&c);
                g = &g - &b.g.scale(&c);
            }
        }
        Ok(PairFG::new(f, g))
    }

    pub fn is_member(&self, pair: &PairFG) -> Result<bool> {
        Ok(self.reduce_to_v(pair)?.is_zero())
    }

    /// Coordinates of a `V`-representative: x-exponents descending, then
    /// y-exponents descending.
    pub fn v_coordinates(&self, reduced: &PairFG) -> Vec<Rational> {
        self.v_exponents_x
            .iter()
            .rev()
            .map(|&k| reduced.f.coeff(k))
            .chain(self.v_exponents_y.iter().rev().map(|&k| reduced.g.coeff(k)))
            .collect()
    }
}

fn require_bivariate(i: &Ideal) -> Result<()> {
    if i.vars().len() != 2 {
        return Err(Error::Precondition(format!(
            "expected an ideal in two variables, got {}",
            i.vars().len()
        )));
    }
    Ok(())
}

/// Generators of the algebra of separated elements of a zero-dimensional
/// ideal, with the data needed for membership tests.
pub fn algebra_of_zero_dim(ideal: &Ideal) -> Result<(Vec<PairFG>, ZeroDimAlgebra)> {
    require_bivariate(ideal)?;
    if !ideal.is_zero_dimensional()? {
        return Err(Error::Precondition("ideal is not zero-dimensional".into()));
    }
    if ideal.is_unit()? {
        let x = UniPoly::x();
        let gens = vec![
            PairFG::new(UniPoly::one(), UniPoly::zero()),
            PairFG::new(x.clone(), UniPoly::zero()),
            PairFG::new(UniPoly::zero(), UniPoly::one()),
            PairFG::new(UniPoly::zero(), x),
        ];
        let data = ZeroDimAlgebra {
            p: UniPoly::one(),
            q: UniPoly::one(),
            basis_pairs: vec![],
            v_exponents_x: BTreeSet::new(),
            v_exponents_y: BTreeSet::new(),
        };
        return Ok((gens, data));
    }
    let p = ideal.eliminate(0)?;
    let q = ideal.eliminate(1)?;
    if p.is_zero() || q.is_zero() {
        return Err(Error::Internal("zero-dimensional ideal with trivial elimination ideal".into()));
    }
    let dp = p.degree().unwrap_or(0);
    let dq = q.degree().unwrap_or(0);
    let vars = ideal.vars().clone();
    let ord = TermOrder::DegRevLex;

    // columns: a_{dp-1} .. a_0, b_{dq-1} .. b_0
    let ncols = dp + dq;
    let mut rows: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    let mut put = |nf: MPoly, col: usize, sign: i64| {
        for (e, c) in nf.terms() {
            let row = rows
                .entry(e.clone())
                .or_insert_with(|| vec![Rational::zero(); ncols]);
            row[col] += c * Rational::from_integer(sign.into());
        }
    };
    for i in 0..dp {
        let m = MPoly::monomial(vars.clone(), vec![i as u32, 0], Rational::one());
        put(ideal.normal_form(&m, &ord)?, dp - 1 - i, 1);
    }
    for j in 0..dq {
        let m = MPoly::monomial(vars.clone(), vec![0, j as u32], Rational::one());
        put(ideal.normal_form(&m, &ord)?, dp + dq - 1 - j, -1);
    }
    let matrix: Vec<Vec<Rational>> = rows.into_values().collect();
    let kernel = nullspace(&matrix, ncols);

    let mut basis_pairs = Vec::new();
    let mut v_x: BTreeSet<usize> = (0..dp).collect();
    for v in kernel {
        let f = UniPoly::from_coeffs((0..dp).map(|i| v[dp - 1 - i].clone()).collect());
        let g = UniPoly::from_coeffs((0..dq).map(|j| v[dp + dq - 1 - j].clone()).collect());
        let Some(d) = f.degree() else {
            return Err(Error::Internal("kernel element with vanishing x-part".into()));
        };
        v_x.remove(&d);
        basis_pairs.push(PairFG::new(f, g));
    }
    let mut gens = basis_pairs.clone();
    gens.extend((0..dp).map(|i| PairFG::new(p.shift(i), UniPoly::zero())));
    gens.extend((0..dq).map(|j| PairFG::new(UniPoly::zero(), q.shift(j))));
    let data = ZeroDimAlgebra {
        p,
        q,
        basis_pairs,
        v_exponents_x: v_x,
        v_exponents_y: (0..dq).collect(),
    };
    Ok((gens, data))
}
