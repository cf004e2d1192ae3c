//! Splitting a bivariate ideal as `I = I₀ ∩ ⟨h⟩` with `I₀` zero-dimensional.
//!
//! `h` is the gcd of the generators and `J = ⟨g/h⟩` has coprime generators,
//! so `I₀ = I + J^s` is zero-dimensional and `⟨h⟩ ∩ I₀ = I` once `s` is
//! large enough. Saturation by `h` alone fails with embedded components,
//! e.g. for `⟨x², xy⟩`.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::mpoly::{gcd_bivariate, MPoly};

/// Largest power of `J` tried by [`split`].
pub const MAX_POWER: u32 = 64;

#[derive(Clone, Debug)]
pub struct Split {
    pub h: MPoly,
    pub i0: Ideal,
    /// The power of `J` that was needed.
    pub s: u32,
}

pub fn split(ideal: &Ideal) -> Result<Split> {
    if ideal.vars().len() != 2 {
        return Err(Error::Precondition("split needs an ideal in two variables".into()));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroInput("split of the zero ideal"));
    }
    if ideal.is_unit()? {
        return Err(Error::Precondition("split of the unit ideal".into()));
    }
    let gens = ideal.generators();
    let mut h = gens[0].primitive_normalized();
    for g in &gens[1..] {
        h = gcd_bivariate(&h, g)?;
    }
    let cofactors = gens.iter().map(|g| g.div_exact(&h)).collect::<Result<Vec<_>>>()?;
    let j = Ideal::new(ideal.vars().clone(), cofactors)?;
    let principal = Ideal::principal(h.clone())?;
    let mut s = 1;
    while s <= MAX_POWER {
        let i0 = ideal.sum(&j.power(s)?)?;
        if ideal.equals(&principal.intersect(&i0)?)? {
            if !i0.is_zero_dimensional()? {
                return Err(Error::Internal("split produced a positive-dimensional I0".into()));
            }
            return Ok(Split { h, i0, s });
        }
        s *= 2;
    }
    Err(Error::CapExceeded(format!("no split with J^s for s <= {MAX_POWER}")))
}
