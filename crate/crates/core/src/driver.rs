//! The full pipeline: generators of the algebra of separated polynomials in
//! an arbitrary bivariate ideal, plus a projection test for multivariate
//! principal ideals.
//!
//! For `I = I₀ ∩ ⟨h⟩` with `K[a]` the algebra of `⟨h⟩`, the algebra of `I`
//! is `{P(a) : P(a) ∈ A(I₀)}`. Membership in `A(I₀)` is linear in the
//! coefficients of `P`, so it is found by kernels over finite supports
//! `S ⊂ N`, growing the degree semigroup until its complement is finite.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Rational, UniPoly};
use crate::decomp::split;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::nullspace;
use crate::mpoly::{vars_of, MPoly};
use crate::numsg::Semigroup;
use crate::principal::{minimal_separated_multiple, PrincipalResult};
use crate::zerodim::{algebra_of_zero_dim, PairFG, ZeroDimAlgebra};

/// Upper bound on the number of semigroup-growing rounds.
pub const MAX_ROUNDS: usize = 100;

/// Which branch of the pipeline produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Path {
    ZeroIdeal,
    ZeroDimensional,
    UnivariateX,
    UnivariateY,
    TrivialPrincipal,
    Principal,
}

/// One call of the restricted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStage {
    pub support: Vec<u64>,
    pub kernel: Vec<UniPoly>,
    /// The polynomial adjoined in a semigroup-growing round; `None` for the
    /// final call, which adjoins the whole kernel.
    pub chosen: Option<UniPoly>,
}

#[derive(Clone, Debug)]
pub struct SeparationResult {
    pub generators: Vec<PairFG>,
    /// Generator of the algebra of the principal part, when that branch ran.
    pub a: Option<PairFG>,
    /// Polynomials `P` with `generators = P(a)`, in the variable `t`.
    pub certificate_polynomials: Vec<UniPoly>,
    pub path: Path,
    pub stages: Vec<SearchStage>,
    pub principal: Option<PrincipalResult>,
}

/// `P(a)`, evaluated component-wise.
pub fn evaluate(p: &UniPoly, a: &PairFG) -> PairFG {
    PairFG::new(p.compose(&a.f), p.compose(&a.g))
}

/// Kernel of `c ↦ Σ cᵢ·reduce_to_V(a^{sᵢ})` as monic polynomials in `t`,
/// row-reduced with respect to descending exponents (so the leading
/// degrees are distinct and the last entry has the smallest degree).
pub fn restricted_search(a: &PairFG, data: &ZeroDimAlgebra, support: &[u64]) -> Result<Vec<UniPoly>> {
    if support.contains(&0) {
        return Err(Error::Precondition("support must not contain 0".into()));
    }
    let mut s: Vec<u64> = support.to_vec();
    s.sort_unstable_by(|x, y| y.cmp(x));
    s.dedup();
    let Some(&top) = s.first() else {
        return Ok(Vec::new());
    };
    let reduce_mod = |u: UniPoly, m: &UniPoly| -> Result<UniPoly> {
        if m.is_one() {
            Ok(UniPoly::zero())
        } else {
            u.rem(m)
        }
    };
    let base = PairFG::new(reduce_mod(a.f.clone(), &data.p)?, reduce_mod(a.g.clone(), &data.q)?);
    let mut powers = vec![PairFG::one()];
    for k in 1..=top as usize {
        let next = powers[k - 1].mul(&base);
        powers.push(PairFG::new(reduce_mod(next.f, &data.p)?, reduce_mod(next.g, &data.q)?));
    }
    let columns: Vec<Vec<Rational>> = s
        .iter()
        .map(|&k| Ok(data.v_coordinates(&data.reduce_to_v(&powers[k as usize])?)))
        .collect::<Result<_>>()?;
    let dim = data.dim_v();
    let matrix: Vec<Vec<Rational>> = (0..dim)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let kernel = nullspace(&matrix, s.len());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut coeffs = vec![Rational::zero(); top as usize + 1];
            for (c, &k) in v.into_iter().zip(&s) {
                coeffs[k as usize] = c;
            }
            UniPoly::from_coeffs(coeffs).monic()
        })
        .collect())
}

fn result(path: Path, generators: Vec<PairFG>) -> SeparationResult {
    SeparationResult {
        generators,
        a: None,
        certificate_polynomials: Vec::new(),
        path,
        stages: Vec::new(),
        principal: None,
    }
}

/// Generators of the algebra of separated polynomials `f(x) − g(y)` in `I`.
pub fn separate(ideal: &Ideal) -> Result<SeparationResult> {
    if ideal.vars().len() != 2 {
        return Err(Error::Precondition("separate needs an ideal in two variables".into()));
    }
    let out = separate_unchecked(ideal)?;
    for g in &out.generators {
        if !ideal.contains(&g.to_mpoly(ideal.vars().clone()))? {
            return Err(Error::Internal(format!("generator {g} is not in the ideal")));
        }
    }
    Ok(out)
}

fn separate_unchecked(ideal: &Ideal) -> Result<SeparationResult> {
    if ideal.is_zero() {
        return Ok(result(Path::ZeroIdeal, vec![PairFG::one()]));
    }
    if ideal.is_zero_dimensional()? {
        let (gens, _) = algebra_of_zero_dim(ideal)?;
        return Ok(result(Path::ZeroDimensional, gens));
    }
    let sp = split(ideal)?;
    let h = &sp.h;
    if !h.involves(1) {
        let p = ideal.eliminate(0)?;
        let d = p.degree().unwrap_or(0);
        let gens = (0..d).map(|i| PairFG::new(p.shift(i), UniPoly::zero())).collect();
        return Ok(result(Path::UnivariateX, gens));
    }
    if !h.involves(0) {
        let q = ideal.eliminate(1)?;
        let d = q.degree().unwrap_or(0);
        let gens = (0..d).map(|j| PairFG::new(UniPoly::zero(), q.shift(j))).collect();
        return Ok(result(Path::UnivariateY, gens));
    }
    let pr = minimal_separated_multiple(h)?;
    if pr.trivial {
        let mut r = result(Path::TrivialPrincipal, vec![PairFG::one()]);
        r.principal = Some(pr);
        return Ok(r);
    }
    let a = pr.generator.clone();
    let (_, data) = algebra_of_zero_dim(&sp.i0)?;
    let dim = data.dim_v();

    let mut certs: Vec<UniPoly> = Vec::new();
    let mut degrees: Vec<u64> = Vec::new();
    let mut stages = Vec::new();
    let mut semigroup = Semigroup::new([])?;
    let mut rounds = 0;
    while semigroup.gcd() != 1 {
        rounds += 1;
        if rounds > MAX_ROUNDS {
            return Err(Error::CapExceeded(format!("{MAX_ROUNDS} semigroup rounds")));
        }
        let support = semigroup.first_complement(dim + 1);
        let kernel = restricted_search(&a, &data, &support)?;
        let Some(chosen) = kernel.last().cloned() else {
            return Err(Error::Internal("restricted search returned an empty kernel".into()));
        };
        degrees.push(chosen.degree().unwrap_or(0) as u64);
        semigroup = Semigroup::new(degrees.iter().copied())?;
        certs.push(chosen.clone());
        stages.push(SearchStage {
            support,
            kernel,
            chosen: Some(chosen),
        });
    }
    let support: Vec<u64> = semigroup.gaps()?.into_iter().collect();
    if !support.is_empty() {
        let kernel = restricted_search(&a, &data, &support)?;
        certs.extend(kernel.iter().cloned());
        stages.push(SearchStage {
            support,
            kernel,
            chosen: None,
        });
    }
    Ok(SeparationResult {
        generators: certs.iter().map(|p| evaluate(p, &a)).collect(),
        a: Some(a),
        certificate_polynomials: certs,
        path: Path::Principal,
        stages,
        principal: Some(pr),
    })
}

/// Image of a variable under the projection to `Q[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarImage {
    X(UniPoly),
    Y(UniPoly),
}

#[derive(Clone, Debug)]
pub struct NecessaryOutcome {
    /// `false` certifies that `p` is not separable (under the projection's
    /// hypotheses, which are not checked).
    pub possibly_separable: bool,
    pub image: MPoly,
    pub diagnostic: String,
}

/// Projects `p` to `Q[x, y]` with one image per variable of `p`, and tests
/// the image for separability.
pub fn necessary_condition_principal(p: &MPoly, images: &[VarImage]) -> Result<NecessaryOutcome> {
    let target = vars_of(&["x", "y"]);
    let subst: Vec<MPoly> = images
        .iter()
        .map(|im| match im {
            VarImage::X(u) => MPoly::from_unipoly(target.clone(), 0, u),
            VarImage::Y(u) => MPoly::from_unipoly(target.clone(), 1, u),
        })
        .collect();
    let image = p.substitute(&subst)?;
    if !image.involves(0) || !image.involves(1) {
        return Ok(NecessaryOutcome {
            possibly_separable: true,
            diagnostic: format!("image {image} is univariate; inconclusive"),
            image,
        });
    }
    let r = minimal_separated_multiple(&image)?;
    Ok(NecessaryOutcome {
        possibly_separable: !r.trivial,
        diagnostic: r.diagnostic,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qq};
    use crate::mpoly::tests::bp;

    fn ideal(gens: Vec<MPoly>) -> Ideal {
        Ideal::new(vars_of(&["x", "y"]), gens).unwrap()
    }

    fn t_poly(terms: &[(usize, Rational)]) -> UniPoly {
        let top = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![q(0); top + 1];
        for (k, v) in terms {
            c[*k] = v.clone();
        }
        UniPoly::from_coeffs(c)
    }

    fn hexagonal() -> Ideal {
        let h = bp(&[(1, 2, 0), (-1, 1, 1), (1, 0, 2)]);
        ideal(vec![
            &h * &bp(&[(1, 3, 0), (-2, 1, 2), (-1, 0, 0)]),
            &h * &bp(&[(1, 0, 3), (-2, 2, 1), (-1, 0, 0)]),
        ])
    }

    #[test]
    fn hexagonal_example() {
        let i = hexagonal();
        let r = separate(&i).unwrap();
        assert_eq!(r.path, Path::Principal);
        assert_eq!(r.a, Some(PairFG::new(UniPoly::from_ints(&[0, 0, 0, 1]), UniPoly::from_ints(&[0, 0, 0, -1]))));
        let dims: Vec<usize> = r.stages.iter().map(|s| s.kernel.len()).collect();
        assert_eq!(dims, vec![7, 7, 3]);
        assert_eq!(r.stages[0].support, (1..=10).collect::<Vec<u64>>());
        assert_eq!(r.stages[2].support, vec![1, 2, 3, 6, 7, 11]);
        // membership of each P(a) in I cross-checked with an external CAS
        let expected = vec![
            t_poly(&[(4, q(1)), (2, q(-2))]),
            t_poly(&[(5, q(1)), (3, qq(-26, 9)), (1, qq(17, 9))]),
            t_poly(&[(11, q(1)), (3, qq(-191125, 6561)), (1, qq(184564, 6561))]),
            t_poly(&[(7, q(1)), (3, qq(-539, 81)), (1, qq(458, 81))]),
            t_poly(&[(6, q(1)), (2, qq(-323, 81))]),
        ];
        assert_eq!(r.certificate_polynomials, expected);
        for g in &r.generators {
            assert!(i.contains(&g.to_mpoly(i.vars().clone())).unwrap());
        }
    }

    #[test]
    fn diagonal_line() {
        let r = separate(&ideal(vec![bp(&[(1, 1, 0), (-1, 0, 1)])])).unwrap();
        assert_eq!(r.generators, vec![PairFG::new(UniPoly::x(), UniPoly::x())]);
        assert_eq!(r.certificate_polynomials, vec![UniPoly::x()]);
    }

    #[test]
    fn univariate_branch() {
        let r = separate(&ideal(vec![bp(&[(1, 2, 0)])])).unwrap();
        assert_eq!(r.path, Path::UnivariateX);
        assert_eq!(
            r.generators,
            vec![
                PairFG::new(UniPoly::from_ints(&[0, 0, 1]), UniPoly::zero()),
                PairFG::new(UniPoly::from_ints(&[0, 0, 0, 1]), UniPoly::zero()),
            ]
        );
        let r = separate(&ideal(vec![bp(&[(1, 0, 1), (1, 0, 0)])])).unwrap();
        assert_eq!(r.path, Path::UnivariateY);
        assert_eq!(r.generators, vec![PairFG::new(UniPoly::zero(), UniPoly::from_ints(&[1, 1]))]);
    }

    #[test]
    fn degenerate_ideals() {
        let r = separate(&ideal(vec![])).unwrap();
        assert_eq!(r.generators, vec![PairFG::one()]);
        let r = separate(&ideal(vec![bp(&[(1, 0, 0)])])).unwrap();
        assert_eq!(r.path, Path::ZeroDimensional);
        assert_eq!(r.generators.len(), 4);
        let r = separate(&ideal(vec![bp(&[(1, 1, 1), (-1, 0, 0)])])).unwrap();
        assert_eq!(r.path, Path::TrivialPrincipal);
        assert_eq!(r.generators, vec![PairFG::one()]);
    }

    #[test]
    fn search_kernel_elements_reduce_to_zero() {
        let i = hexagonal();
        let sp = split(&i).unwrap();
        let (_, data) = algebra_of_zero_dim(&sp.i0).unwrap();
        let a = minimal_separated_multiple(&sp.h).unwrap().generator;
        let support: Vec<u64> = (1..=12).collect();
        let kernel = restricted_search(&a, &data, &support).unwrap();
        assert!(kernel.len() >= support.len() - data.dim_v());
        for p in &kernel {
            assert!(data.reduce_to_v(&evaluate(p, &a)).unwrap().is_zero());
        }
        assert!(restricted_search(&a, &data, &[0, 1]).is_err());
    }

    #[test]
    fn projection_examples() {
        let v = vars_of(&["x", "y1", "y2"]);
        let p = MPoly::from_terms(
            v,
            [
                (vec![2, 0, 0], q(1)),
                (vec![1, 1, 1], q(1)),
                (vec![0, 2, 0], q(1)),
                (vec![0, 0, 2], q(1)),
            ],
        );
        let out = necessary_condition_principal(
            &p,
            &[
                VarImage::X(UniPoly::x()),
                VarImage::Y(UniPoly::x()),
                VarImage::Y(UniPoly::from_ints(&[2])),
            ],
        )
        .unwrap();
        assert!(!out.possibly_separable);
        assert_eq!(out.image, bp(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (4, 0, 0)]));

        let v = vars_of(&["x", "y1", "y2"]);
        let p = MPoly::from_terms(
            v,
            [
                (vec![2, 0, 0], q(1)),
                (vec![1, 1, 0], q(1)),
                (vec![0, 2, 0], q(1)),
                (vec![0, 0, 4], q(1)),
            ],
        );
        let out = necessary_condition_principal(
            &p,
            &[
                VarImage::X(UniPoly::x()),
                VarImage::Y(UniPoly::from_ints(&[0, 0, 1])),
                VarImage::Y(UniPoly::x()),
            ],
        )
        .unwrap();
        assert!(!out.possibly_separable);
        assert_eq!(out.image, bp(&[(1, 2, 0), (1, 1, 2), (2, 0, 4)]));

        let v = vars_of(&["x1", "y1"]);
        let p = &MPoly::var(v.clone(), 0) - &MPoly::var(v, 1);
        let out = necessary_condition_principal(&p, &[VarImage::X(UniPoly::x()), VarImage::Y(UniPoly::x())]).unwrap();
        assert!(out.possibly_separable);
    }
}
