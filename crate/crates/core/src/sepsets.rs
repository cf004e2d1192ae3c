//! Separated subsets of `Z_m × Z_n` and their closures.
//!
//! A set is separated when any two rows are disjoint or equal; the
//! closure is the smallest separated superset.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SepSet {
    m: usize,
    n: usize,
    points: BTreeSet<(usize, usize)>,
}

impl SepSet {
    pub fn new(m: usize, n: usize, points: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Precondition("grid dimensions must be positive".into()));
        }
        let points: BTreeSet<_> = points.into_iter().collect();
        if let Some(&(i, j)) = points.iter().find(|&&(i, j)| i >= m || j >= n) {
            return Err(Error::Precondition(format!("point ({i},{j}) outside Z_{m} x Z_{n}")));
        }
        Ok(SepSet { m, n, points })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &BTreeSet<(usize, usize)> {
        &self.points
    }

    /// Columns of row `i`.
    pub fn row(&self, i: usize) -> BTreeSet<usize> {
        self.points.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j).collect()
    }

    /// Rows of column `j`.
    pub fn column(&self, j: usize) -> BTreeSet<usize> {
        self.points.iter().filter(|p| p.1 == j).map(|p| p.0).collect()
    }

    pub fn is_subset(&self, other: &SepSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &SepSet) -> Result<SepSet> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::Precondition("grids differ".into()));
        }
        SepSet::new(self.m, self.n, self.points.union(&other.points).copied())
    }

    pub fn is_separated(&self) -> bool {
        let rows: Vec<BTreeSet<usize>> = (0..self.m).map(|i| self.row(i)).collect();
        rows.iter().enumerate().all(|(a, ra)| {
            rows[a + 1..]
                .iter()
                .all(|rb| ra == rb || ra.is_disjoint(rb))
        })
    }

    /// Smallest separated superset.
    pub fn closure(&self) -> SepSet {
        let mut cur = self.clone();
        loop {
            let next = cur.merge_rows();
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// One round of union-find over rows sharing a column.
    fn merge_rows(&self) -> SepSet {
        let mut parent: Vec<usize> = (0..self.m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for j in 0..self.n {
            let rows: Vec<usize> = self.column(j).into_iter().collect();
            for w in rows.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.m];
        for &(i, j) in &self.points {
            let r = find(&mut parent, i);
            cols[r].insert(j);
        }
        let points = (0..self.m).flat_map(|i| {
            let r = find(&mut parent, i);
            cols[r].iter().map(move |&j| (i, j)).collect::<Vec<_>>()
        });
        SepSet::new(self.m, self.n, points).expect("closure stays in the grid")
    }

    /// Image under a row permutation `sigma` and column permutation `tau`.
    pub fn permute(&self, sigma: &[usize], tau: &[usize]) -> Result<SepSet> {
        if sigma.len() != self.m || tau.len() != self.n {
            return Err(Error::Precondition("permutation sizes do not match the grid".into()));
        }
        SepSet::new(self.m, self.n, self.points.iter().map(|&(i, j)| (sigma[i], tau[j])))
    }
}

/// Point sets of the rational factors of `x^6 − y^6` and
/// `x^4 − (y^2 + 1)^2` under the root-matching correspondence.
pub mod fixtures {
    use super::SepSet;

    pub struct Labeled {
        pub factor: &'static str,
        pub separated: bool,
        pub set: SepSet,
    }

    /// Points given as `column/row` pairs.
    fn grid(size: usize, parts: &[&[(usize, usize)]]) -> SepSet {
        SepSet::new(
            size,
            size,
            parts.iter().flat_map(|p| p.iter().map(|&(col, row)| (row, col))),
        )
        .expect("fixture in range")
    }

    const DIAG: &[(usize, usize)] = &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5)];
    const ANTI: &[(usize, usize)] = &[(0, 3), (1, 4), (2, 5), (3, 0), (4, 1), (5, 2)];
    const PLUS: &[(usize, usize)] = &[
        (2, 0), (3, 1), (4, 2), (5, 3), (0, 4), (1, 5),
        (4, 0), (5, 1), (0, 2), (1, 3), (2, 4), (3, 5),
    ];
    const MINUS: &[(usize, usize)] = &[
        (1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (0, 5),
        (5, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
    ];
    const EVEN: &[(usize, usize)] = &[(0, 0), (1, 1), (2, 2), (3, 3), (2, 0), (3, 1), (0, 2), (1, 3)];
    const ODD: &[(usize, usize)] = &[(1, 0), (2, 1), (3, 2), (0, 3), (3, 0), (0, 1), (1, 2), (2, 3)];

    fn labeled(factor: &'static str, separated: bool, set: SepSet) -> Labeled {
        Labeled { factor, separated, set }
    }

    /// The 16 products of irreducible factors of `x^6 − y^6` over Q.
    pub fn sixth_powers() -> Vec<Labeled> {
        vec![
            labeled("1", true, grid(6, &[])),
            labeled("x-y", true, grid(6, &[DIAG])),
            labeled("x+y", true, grid(6, &[ANTI])),
            labeled("x^2-y^2", true, grid(6, &[DIAG, ANTI])),
            labeled("x^2+xy+y^2", false, grid(6, &[PLUS])),
            labeled("x^3-y^3", true, grid(6, &[DIAG, PLUS])),
            labeled("x^3+2x^2y+2xy^2+y^3", false, grid(6, &[ANTI, PLUS])),
            labeled("x^4+x^3y-xy^3-y^4", false, grid(6, &[DIAG, ANTI, PLUS])),
            labeled("x^2-xy+y^2", false, grid(6, &[MINUS])),
            labeled("x^3-2x^2y+2xy^2-y^3", false, grid(6, &[DIAG, MINUS])),
            labeled("x^3+y^3", true, grid(6, &[ANTI, MINUS])),
            labeled("x^4-x^3y+xy^3-y^4", false, grid(6, &[DIAG, ANTI, MINUS])),
            labeled("x^4+x^2y^2+y^4", false, grid(6, &[PLUS, MINUS])),
            labeled("x^5-x^4y+...-y^5", false, grid(6, &[DIAG, PLUS, MINUS])),
            labeled("x^5+x^4y+...+y^5", false, grid(6, &[ANTI, PLUS, MINUS])),
            labeled("x^6-y^6", true, grid(6, &[DIAG, ANTI, PLUS, MINUS])),
        ]
    }

    /// The 4 products of irreducible factors of `x^4 − (y^2 + 1)^2` over Q.
    pub fn quartic() -> Vec<Labeled> {
        vec![
            labeled("1", true, grid(4, &[])),
            labeled("x^2+y^2+1", true, grid(4, &[EVEN])),
            labeled("x^2-y^2-1", true, grid(4, &[ODD])),
            labeled("x^4-(y^2+1)^2", true, grid(4, &[EVEN, ODD])),
        ]
    }

    pub fn all() -> Vec<Labeled> {
        let mut v = sixth_powers();
        v.extend(quartic());
        v
    }

    pub fn by_factor(name: &str) -> Option<SepSet> {
        all().into_iter().find(|l| l.factor == name).map(|l| l.set)
    }
}
