//! Buchberger's algorithm over Q and the ideal operations built on it.
//!
//! Polynomials are kept with primitive integer coefficients during the
//! computation; reduced bases are made monic only on output. Pairs are
//! pruned with the Gebauer–Möller criteria and selected by sugar, ties
//! broken by the lcm under the term order and then by index.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::mpoly::{degrevlex_cmp, MPoly, Vars};

/// Largest supported number of ring variables.
pub const MAX_VARS: usize = 4;

type Exp = [u32; MAX_VARS];
type Terms = Vec<(Exp, BigInt)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    DegRevLex,
    /// Lexicographic; `Lex(p)` ranks variable `p[0]` highest.
    Lex(Vec<usize>),
    /// Block order: the listed variables form the first block (each block
    /// compared by degrevlex), so the remaining variables are eliminated
    /// last.
    Block(Vec<usize>),
}

impl TermOrder {
    fn validate(&self, n: usize) -> Result<()> {
        match self {
            TermOrder::DegRevLex => Ok(()),
            TermOrder::Lex(p) => {
                let mut seen = vec![false; n];
                for &i in p {
                    if i >= n || seen[i] {
                        return Err(Error::Precondition(format!("invalid lex precedence {p:?}")));
                    }
                    seen[i] = true;
                }
                if p.len() != n {
                    return Err(Error::Precondition(format!("invalid lex precedence {p:?}")));
                }
                Ok(())
            }
            TermOrder::Block(b) => {
                if b.iter().any(|&i| i >= n) {
                    return Err(Error::Precondition(format!("invalid elimination block {b:?}")));
                }
                Ok(())
            }
        }
    }

    /// Compares two exponent vectors of equal length.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::DegRevLex => degrevlex_cmp(a, b),
            TermOrder::Lex(p) => {
                for &i in p {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Block(block) => {
                let pick = |e: &[u32], inside: bool| -> Vec<u32> {
                    (0..e.len())
                        .filter(|i| block.contains(i) == inside)
                        .map(|i| e[i])
                        .collect()
                };
                degrevlex_cmp(&pick(a, true), &pick(b, true))
                    .then_with(|| degrevlex_cmp(&pick(a, false), &pick(b, false)))
            }
        }
    }
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &Exp, b: &Exp) -> Exp {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    std::array::from_fn(|i| a[i] - b[i])
}

fn add_exp(a: &Exp, b: &Exp) -> Exp {
    std::array::from_fn(|i| a[i] + b[i])
}

fn deg(e: &Exp) -> u32 {
    e.iter().sum()
}

fn disjoint(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn content(t: &Terms) -> BigInt {
    t.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

#[derive(Clone)]
struct IPoly {
    terms: Terms,
    sugar: u32,
}

impl IPoly {
    fn lm(&self) -> &Exp {
        &self.terms[0].0
    }
}

struct Engine<'a> {
    ord: &'a TermOrder,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

impl Engine<'_> {
    fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        self.ord.compare(a, b)
    }

    /// Integer terms sorted descending and the factor `k` with `terms = k·p`.
    fn import(&self, p: &MPoly) -> (Terms, Rational) {
        let den = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let mut terms: Terms = p
            .terms()
            .map(|(e, c)| {
                let mut x = [0; MAX_VARS];
                x[..e.len()].copy_from_slice(e);
                (x, (c * Rational::from_integer(den.clone())).to_integer())
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let g = content(&terms);
        if g.is_zero() {
            return (terms, Rational::one());
        }
        for (_, c) in terms.iter_mut() {
            *c /= &g;
        }
        (terms, Rational::new(den, g))
    }

    /// `a·xᵐ¹·f − b·xᵐ²·g`.
    fn lin(&self, a: &BigInt, m1: &Exp, f: &Terms, b: &BigInt, m2: &Exp, g: &Terms) -> Terms {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() || j < g.len() {
            let ef = f.get(i).map(|t| add_exp(&t.0, m1));
            let eg = g.get(j).map(|t| add_exp(&t.0, m2));
            let o = match (&ef, &eg) {
                (Some(x), Some(y)) => self.cmp(x, y),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match o {
                Ordering::Greater => {
                    out.push((ef.unwrap(), a * &f[i].1));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eg.unwrap(), -(b * &g[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a * &f[i].1 - b * &g[j].1;
                    if !c.is_zero() {
                        out.push((ef.unwrap(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full reduction of `f` by `basis`; returns `(r, k)` with
    /// `r ≡ k·f` modulo the basis and no term of `r` reducible.
    fn reduce(&self, mut f: Terms, basis: &[&IPoly]) -> (Terms, Rational) {
        let zero = [0; MAX_VARS];
        let mut mult = Rational::one();
        let mut i = 0;
        while i < f.len() {
            let e = f[i].0;
            let Some(g) = basis.iter().find(|g| divides(g.lm(), &e)) else {
                i += 1;
                continue;
            };
            let lc = &g.terms[0].1;
            let gg = f[i].1.gcd(lc);
            let (mut a, mut b) = (lc / &gg, &f[i].1 / &gg);
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            let m = sub_exp(&e, g.lm());
            f = self.lin(&a, &zero, &f, &b, &m, &g.terms);
            mult *= Rational::from_integer(a);
            let c = content(&f);
            if !c.is_zero() && !c.is_one() {
                for (_, x) in f.iter_mut() {
                    *x /= &c;
                }
                mult /= Rational::from_integer(c);
            }
        }
        (f, mult)
    }

    fn normalize(&self, mut t: Terms) -> Terms {
        let c = content(&t);
        if c.is_zero() {
            return t;
        }
        let c = if t[0].1.is_negative() { -c } else { c };
        for (_, x) in t.iter_mut() {
            *x /= &c;
        }
        t
    }

    fn s_poly(&self, f: &IPoly, g: &IPoly, lcm: &Exp) -> Terms {
        let (lf, lg) = (&f.terms[0].1, &g.terms[0].1);
        let gg = lf.gcd(lg);
        self.lin(
            &(lg / &gg),
            &sub_exp(lcm, f.lm()),
            &f.terms,
            &(lf / &gg),
            &sub_exp(lcm, g.lm()),
            &g.terms,
        )
    }

    /// Gebauer–Möller update after adding `store[h]`.
    fn update(&self, store: &[IPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
        let lh = *store[h].lm();
        let make = |g: usize| {
            let lcm = lcm_exp(&lh, store[g].lm());
            let sugar = (store[h].sugar + deg(&sub_exp(&lcm, &lh)))
                .max(store[g].sugar + deg(&sub_exp(&lcm, store[g].lm())));
            Pair { i: g, j: h, lcm, sugar }
        };
        let mut c: Vec<Pair> = active.iter().map(|&g| make(g)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while !c.is_empty() {
            let p = c.remove(0);
            let keep = disjoint(&lh, store[p.i].lm())
                || (!c.iter().any(|o| divides(&o.lcm, &p.lcm))
                    && !d.iter().any(|o| divides(&o.lcm, &p.lcm)));
            if keep {
                d.push(p);
            }
        }
        d.retain(|p| !disjoint(&lh, store[p.i].lm()));
        pairs.retain(|p| {
            !divides(&lh, &p.lcm)
                || lcm_exp(store[p.i].lm(), &lh) == p.lcm
                || lcm_exp(&lh, store[p.j].lm()) == p.lcm
        });
        pairs.extend(d);
        active.retain(|&g| !divides(&lh, store[g].lm()));
        active.push(h);
    }

    fn buchberger(&self, gens: Vec<Terms>) -> Vec<IPoly> {
        let mut store: Vec<IPoly> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for t in gens {
            if t.is_empty() {
                continue;
            }
            let sugar = t.iter().map(|(e, _)| deg(e)).max().unwrap_or(0);
            store.push(IPoly {
                terms: self.normalize(t),
                sugar,
            });
            let h = store.len() - 1;
            self.update(&store, &mut active, &mut pairs, h);
        }
        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    p.sugar
                        .cmp(&q.sugar)
                        .then_with(|| self.cmp(&p.lcm, &q.lcm))
                        .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
                })
                .unwrap();
            let pair = pairs.swap_remove(best);
            let s = self.s_poly(&store[pair.i], &store[pair.j], &pair.lcm);
            let basis: Vec<&IPoly> = active.iter().map(|&g| &store[g]).collect();
            let (r, _) = self.reduce(s, &basis);
            if r.is_empty() {
                continue;
            }
            store.push(IPoly {
                terms: self.normalize(r),
                sugar: pair.sugar,
            });
            let h = store.len() - 1;
            self.update(&store, &mut active, &mut pairs, h);
        }
        // minimal, then interreduced
        let mut minimal: Vec<usize> = Vec::new();
        for &g in &active {
            let dominated = active
                .iter()
                .any(|&o| o != g && divides(store[o].lm(), store[g].lm()) && (store[o].lm() != store[g].lm() || o < g));
            if !dominated {
                minimal.push(g);
            }
        }
        let mut out: Vec<IPoly> = Vec::new();
        for &g in &minimal {
            let others: Vec<&IPoly> = minimal.iter().filter(|&&o| o != g).map(|&o| &store[o]).collect();
            let (r, _) = self.reduce(store[g].terms.clone(), &others);
            out.push(IPoly {
                terms: self.normalize(r),
                sugar: store[g].sugar,
            });
        }
        out.sort_by(|a, b| self.cmp(a.lm(), b.lm()));
        out
    }
}

struct Basis {
    ipolys: Vec<IPoly>,
    monic: Vec<MPoly>,
}

/// An ideal of `Q[vars]` with a per-order memo of reduced Gröbner bases.
pub struct Ideal {
    vars: Vars,
    generators: Vec<MPoly>,
    cache: Mutex<HashMap<TermOrder, Arc<Basis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            vars: self.vars.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().expect("basis cache poisoned").clone()),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal[{}]<{}>", self.vars.join(","), gens.join(", "))
    }
}

impl Ideal {
    pub fn new(vars: Vars, generators: Vec<MPoly>) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        if vars.is_empty() {
            return Err(Error::Precondition("an ideal needs at least one variable".into()));
        }
        for g in &generators {
            if g.vars() != &vars {
                return Err(Error::RingMismatch(format!(
                    "generator {g} not in Q[{}]",
                    vars.join(",")
                )));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            vars,
            generators,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn principal(p: MPoly) -> Result<Self> {
        Self::new(p.vars().clone(), vec![p])
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// The nonzero input generators.
    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn basis(&self, ord: &TermOrder) -> Result<Arc<Basis>> {
        ord.validate(self.vars.len())?;
        let mut cache = self.cache.lock().expect("basis cache poisoned");
        if let Some(b) = cache.get(ord) {
            return Ok(b.clone());
        }
        let engine = Engine { ord };
        let gens = self.generators.iter().map(|g| engine.import(g).0).collect();
        let ipolys = engine.buchberger(gens);
        let n = self.vars.len();
        let monic = ipolys
            .iter()
            .map(|p| {
                let lc = Rational::from_integer(p.terms[0].1.clone());
                MPoly::from_terms(
                    self.vars.clone(),
                    p.terms.iter().map(|(e, c)| (e[..n].to_vec(), Rational::from_integer(c.clone()) / &lc)),
                )
            })
            .collect();
        let b = Arc::new(Basis { ipolys, monic });
        cache.insert(ord.clone(), b.clone());
        Ok(b)
    }

    /// Reduced Gröbner basis (monic), sorted by ascending leading monomial.
    pub fn groebner_basis(&self, ord: &TermOrder) -> Result<Vec<MPoly>> {
        Ok(self.basis(ord)?.monic.clone())
    }

    /// Leading exponents of the reduced basis under `ord`.
    pub fn leading_exponents(&self, ord: &TermOrder) -> Result<Vec<Vec<u32>>> {
        let n = self.vars.len();
        Ok(self.basis(ord)?.ipolys.iter().map(|p| p.lm()[..n].to_vec()).collect())
    }

    pub fn normal_form(&self, f: &MPoly, ord: &TermOrder) -> Result<MPoly> {
        f.check_ring(&MPoly::zero(self.vars.clone()))?;
        if f.is_zero() {
            return Ok(f.clone());
        }
        let basis = self.basis(ord)?;
        let engine = Engine { ord };
        let (t, k) = engine.import(f);
        let refs: Vec<&IPoly> = basis.ipolys.iter().collect();
        let (r, mult) = engine.reduce(t, &refs);
        let scale = (k * mult).recip();
        let n = self.vars.len();
        Ok(MPoly::from_terms(
            self.vars.clone(),
            r.into_iter().map(|(e, c)| (e[..n].to_vec(), Rational::from_integer(c) * &scale)),
        ))
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f, &TermOrder::DegRevLex)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let b = self.basis(&TermOrder::DegRevLex)?;
        Ok(b.monic.len() == 1 && b.monic[0].is_one())
    }

    /// Monic generator of `I ∩ Q[x_keep]`, or zero if the intersection is trivial.
    pub fn eliminate(&self, keep: usize) -> Result<UniPoly> {
        if keep >= self.vars.len() {
            return Err(Error::Precondition(format!("no variable with index {keep}")));
        }
        let block: Vec<usize> = (0..self.vars.len()).filter(|&i| i != keep).collect();
        let basis = self.groebner_basis(&TermOrder::Block(block))?;
        Ok(basis
            .iter()
            .filter_map(|g| g.to_unipoly(keep))
            .min_by_key(|u| u.degree())
            .map(|u| u.monic())
            .unwrap_or_else(UniPoly::zero))
    }

    /// `I ∩ J`, by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ideal::new(self.vars.clone(), vec![]);
        }
        let n = self.vars.len();
        if n + 1 > MAX_VARS {
            return Err(Error::TooManyVariables(n + 1));
        }
        let mut t_name = String::from("t");
        while self.vars.contains(&t_name) {
            t_name.push('_');
        }
        let ext: Vars = std::iter::once(t_name).chain(self.vars.iter().cloned()).collect::<Vec<_>>().into();
        let mapping: Vec<usize> = (1..=n).collect();
        let t = MPoly::var(ext.clone(), 0);
        let one_minus_t = &MPoly::one(ext.clone()) - &t;
        let gens: Vec<MPoly> = self
            .generators
            .iter()
            .map(|g| &t * &g.embed(ext.clone(), &mapping))
            .chain(other.generators.iter().map(|g| &one_minus_t * &g.embed(ext.clone(), &mapping)))
            .collect();
        let aux = Ideal::new(ext.clone(), gens)?;
        let basis = aux.groebner_basis(&TermOrder::Block(vec![0]))?;
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let kept = basis
            .iter()
            .filter(|g| !g.involves(0))
            .map(|g| g.embed(self.vars.clone(), &back))
            .collect();
        Ideal::new(self.vars.clone(), kept)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ideal::new(
            self.vars.clone(),
            self.generators.iter().chain(&other.generators).cloned().collect(),
        )
    }

    /// `I^s`, with generators replaced by a reduced basis after each product.
    pub fn power(&self, s: u32) -> Result<Ideal> {
        if s == 0 {
            return Ideal::new(self.vars.clone(), vec![MPoly::one(self.vars.clone())]);
        }
        let mut acc: Option<Ideal> = None;
        let mut base = self.clone();
        let mut e = s;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.product(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.product(&base)?;
        }
        Ok(acc.expect("s > 0"))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        let raw = Ideal::new(self.vars.clone(), gens)?;
        let reduced = raw.groebner_basis(&TermOrder::DegRevLex)?;
        Ideal::new(self.vars.clone(), reduced)
    }

    /// True when every variable has a pure power among the leading
    /// monomials of the degrevlex basis.
    pub fn is_zero_dimensional(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput("dimension test on the zero ideal"));
        }
        let lms = self.leading_exponents(&TermOrder::DegRevLex)?;
        Ok((0..self.vars.len()).all(|v| {
            lms.iter()
                .any(|e| e.iter().enumerate().all(|(i, &k)| i == v || k == 0))
        }))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )));
        }
        Ok(())
    }
}
