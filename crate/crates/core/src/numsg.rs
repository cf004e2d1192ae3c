//! Numerical semigroups `⟨Δ⟩ = d₁N + ⋯ + d_mN`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    generators: BTreeSet<u64>,
    /// `apery[r]`: least member congruent to `r` modulo the smallest
    /// generator, `u64::MAX` if none.
    apery: Vec<u64>,
}

impl Semigroup {
    pub fn new(generators: impl IntoIterator<Item = u64>) -> Result<Self> {
        let generators: BTreeSet<u64> = generators.into_iter().collect();
        if generators.contains(&0) {
            return Err(Error::Precondition("semigroup generators must be positive".into()));
        }
        let apery = match generators.first() {
            None => Vec::new(),
            Some(&m) => apery_set(&generators, m),
        };
        Ok(Semigroup { generators, apery })
    }

    pub fn generators(&self) -> &BTreeSet<u64> {
        &self.generators
    }

    /// gcd of the generators; 0 for the empty set.
    pub fn gcd(&self) -> u64 {
        self.generators.iter().fold(0, |g, &d| g.gcd(&d))
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return true;
        }
        let m = self.apery.len() as u64;
        m > 0 && self.apery[(n % m) as usize] <= n
    }

    /// The finite set `N \ ⟨Δ⟩`.
    pub fn gaps(&self) -> Result<BTreeSet<u64>> {
        if self.gcd() != 1 {
            return Err(Error::Precondition(format!(
                "generators {:?} have gcd {}, the complement is infinite",
                self.generators,
                self.gcd()
            )));
        }
        let m = self.apery.len() as u64;
        let mut out = BTreeSet::new();
        for &w in &self.apery {
            let mut n = w;
            while n >= m {
                n -= m;
                if n > 0 {
                    out.insert(n);
                }
            }
        }
        Ok(out)
    }

    /// Largest gap, or −1 when `1 ∈ Δ`.
    pub fn frobenius(&self) -> Result<i64> {
        if self.gcd() != 1 {
            return Err(Error::Precondition("frobenius number needs gcd 1".into()));
        }
        let m = self.apery.len() as i64;
        Ok(self.apery.iter().map(|&w| w as i64).max().unwrap_or(0) - m)
    }

    /// Positive integers outside the semigroup, ascending; infinite when
    /// the gcd is not 1.
    pub fn complement(&self) -> impl Iterator<Item = u64> + '_ {
        (1u64..).filter(move |&n| !self.contains(n))
    }

    pub fn first_complement(&self, k: usize) -> Vec<u64> {
        if self.gcd() == 1 {
            // the complement is finite
            return self.gaps().expect("gcd 1").into_iter().take(k).collect();
        }
        self.complement().take(k).collect()
    }
}

/// Round-robin relaxation over residues modulo `m`.
fn apery_set(generators: &BTreeSet<u64>, m: u64) -> Vec<u64> {
    let mut dist = vec![u64::MAX; m as usize];
    dist[0] = 0;
    for &g in generators.iter().filter(|&&g| g != m) {
        let step = (g % m) as usize;
        let cycles = (m as usize).gcd(&step);
        for start in 0..cycles {
            // two passes around each cycle settle every entry
            let len = m as usize / cycles;
            let mut r = start;
            for _ in 0..2 * len {
                let next = (r + step) % m as usize;
                if dist[r] != u64::MAX {
                    dist[next] = dist[next].min(dist[r] + g);
                }
                r = next;
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sg(d: &[u64]) -> Semigroup {
        Semigroup::new(d.iter().copied()).unwrap()
    }

    #[test]
    fn gap_examples() {
        assert_eq!(sg(&[4, 5]).gaps().unwrap(), BTreeSet::from([1, 2, 3, 6, 7, 11]));
        assert!(sg(&[1]).gaps().unwrap().is_empty());
        assert_eq!(sg(&[3, 5]).gaps().unwrap(), BTreeSet::from([1, 2, 4, 7]));
        assert!(sg(&[4, 6]).gaps().is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(sg(&[4, 5]).frobenius().unwrap(), 11);
        assert_eq!(sg(&[3, 5]).frobenius().unwrap(), 7);
        assert_eq!(sg(&[2, 3]).frobenius().unwrap(), 1);
        assert_eq!(sg(&[1, 7]).frobenius().unwrap(), -1);
    }

    #[test]
    fn complement_streams() {
        assert_eq!(sg(&[]).first_complement(4), vec![1, 2, 3, 4]);
        assert_eq!(sg(&[4, 6]).first_complement(5), vec![1, 2, 3, 5, 7]);
        assert_eq!(sg(&[4, 5]).first_complement(3), vec![1, 2, 3]);
        assert_eq!(sg(&[4, 5]).first_complement(10), vec![1, 2, 3, 6, 7, 11]);
        assert!(Semigroup::new([0, 3]).is_err());
    }

    fn brute_member(n: u64, d: &[u64]) -> bool {
        let mut reach = vec![false; n as usize + 1];
        reach[0] = true;
        for k in 1..=n as usize {
            reach[k] = d.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
        }
        reach[n as usize]
    }

    #[test]
    fn two_generator_frobenius_formula() {
        for a in 2..=12u64 {
            for b in 2..=12u64 {
                if a.gcd(&b) == 1 {
                    assert_eq!(sg(&[a, b]).frobenius().unwrap(), (a * b - a - b) as i64);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn membership_matches_brute_force(d in prop::collection::btree_set(1u64..=20, 1..=4), n in 0u64..=200) {
            let d: Vec<u64> = d.into_iter().collect();
            prop_assert_eq!(sg(&d).contains(n), brute_member(n, &d));
        }

        #[test]
        fn beyond_frobenius_everything_is_member(d in prop::collection::btree_set(2u64..=15, 2..=4)) {
            let s = sg(&d.into_iter().collect::<Vec<_>>());
            prop_assume!(s.gcd() == 1);
            let f = s.frobenius().unwrap();
            for n in (f + 1) as u64..(f + 40) as u64 {
                prop_assert!(s.contains(n));
            }
            prop_assert!(!s.contains(f as u64));
        }
    }
}
