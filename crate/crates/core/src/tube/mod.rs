//! Combinatorics of the rank-`n` tube and its cluster category.
//!
//! An indecomposable is addressed by `(orbit, ql)`: the orbit coordinate is
//! reduced into `1..=n` and the quasilength is unbounded. The
//! Auslander-Reiten translate acts by `(a, b) -> (a - 1, b)`; irreducible maps
//! go `(a, b) -> (a, b + 1)` and `(a, b) -> (a + 1, b - 1)`.

mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use oracle::{nilpotent_uniserial, rational_rank, UniserialRep};

/// Rank of the tube, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Rank(usize);

/// Indecomposable object of the tube (equivalently of the cluster tube).
///
/// Ordering is by orbit, then quasilength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indec {
    orbit: usize,
    ql: usize,
}

impl Indec {
    pub fn orbit(self) -> usize {
        self.orbit
    }

    pub fn ql(self) -> usize {
        self.ql
    }

    pub fn is_quasisimple(self) -> bool {
        self.ql == 1
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.orbit, self.ql)
    }
}

impl Serialize for Indec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.orbit, self.ql].serialize(s)
    }
}

/// Raw `[orbit, ql]` pair as read from JSON; canonicalized against a rank by
/// [`Rank::indec`].
#[derive(Debug, Clone, Copy, Deserialize)]
pub struct RawIndec(pub i64, pub i64);

/// `Hom_C(X, Y)` split into the tube part and the dual ("D") part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClusterHom {
    pub t_dim: usize,
    pub d_dim: usize,
}

impl ClusterHom {
    pub fn total(self) -> usize {
        self.t_dim + self.d_dim
    }
}

/// Triangular region below a rigid summit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wing {
    rank: Rank,
    summit: Indec,
}

impl Wing {
    pub fn new(rank: Rank, summit: Indec) -> Result<Self> {
        if summit.ql >= rank.n() {
            return Err(Error::InvalidIndec {
                orbit: summit.orbit as i64,
                ql: summit.ql as i64,
            });
        }
        Ok(Wing { rank, summit })
    }

    pub fn summit(&self) -> Indec {
        self.summit
    }

    pub fn height(&self) -> usize {
        self.summit.ql
    }

    pub fn contains(&self, x: Indec) -> bool {
        self.rank.in_wing(x, self.summit)
    }

    /// Members of the wing, summit first, then by descending quasilength.
    pub fn members(&self) -> Vec<Indec> {
        let a = self.summit.orbit as i64;
        let h = self.summit.ql;
        let mut out = Vec::with_capacity(h * (h + 1) / 2);
        for ql in (1..=h).rev() {
            for off in 0..=(h - ql) {
                out.push(self.rank.at(a + off as i64, ql));
            }
        }
        out
    }
}

impl Rank {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n as i64));
        }
        Ok(Rank(n))
    }

    pub fn n(self) -> usize {
        self.0
    }

    fn reduce(self, a: i64) -> usize {
        (a - 1).rem_euclid(self.0 as i64) as usize + 1
    }

    pub fn indec(self, orbit: i64, ql: i64) -> Result<Indec> {
        if ql < 1 {
            return Err(Error::InvalidIndec { orbit, ql });
        }
        Ok(Indec {
            orbit: self.reduce(orbit),
            ql: ql as usize,
        })
    }

    /// Like [`Rank::indec`] but for coordinates known to be valid.
    ///
    /// Panics if `ql == 0`.
    pub fn at(self, orbit: i64, ql: usize) -> Indec {
        assert!(ql >= 1, "quasilength must be positive");
        Indec {
            orbit: self.reduce(orbit),
            ql,
        }
    }

    pub fn from_raw(self, raw: RawIndec) -> Result<Indec> {
        self.indec(raw.0, raw.1)
    }

    /// `τ^k x`; negative `k` applies the inverse translate.
    pub fn tau(self, x: Indec, k: i64) -> Indec {
        self.at(x.orbit as i64 - k, x.ql)
    }

    /// Orbit coordinate of `x` lifted into the window `[base, base + n - 1]`.
    pub fn lift(self, x: Indec, base: i64) -> i64 {
        base + (x.orbit as i64 - base).rem_euclid(self.0 as i64)
    }

    pub fn is_rigid(self, x: Indec) -> bool {
        x.ql < self.0
    }

    /// Membership in the wing with the given summit. The summit must be
    /// rigid; otherwise nothing is in its wing.
    pub fn in_wing(self, x: Indec, summit: Indec) -> bool {
        if summit.ql >= self.0 {
            return false;
        }
        let base = summit.orbit as i64;
        let a = self.lift(x, base);
        a + x.ql as i64 <= base + summit.ql as i64
    }

    /// Is `x` on the ray starting at `start`, i.e. `x = (a, b')` with `b' >= b`?
    pub fn on_ray(self, x: Indec, start: Indec) -> bool {
        x.orbit == start.orbit && x.ql >= start.ql
    }

    /// Is `x` on the coray ending at `end`?
    pub fn on_coray(self, x: Indec, end: Indec) -> bool {
        if x.ql < end.ql {
            return false;
        }
        let d = (x.ql - end.ql) as i64;
        x == self.at(end.orbit as i64 - d, x.ql)
    }

    /// All indecomposables with quasilength at most `max_ql`, ordered by
    /// quasilength then orbit.
    pub fn indecs_up_to(self, max_ql: usize) -> Vec<Indec> {
        (1..=max_ql)
            .flat_map(|ql| (1..=self.0).map(move |a| Indec { orbit: a, ql }))
            .collect()
    }

    /// The `n(n-1)` rigid indecomposables.
    pub fn rigid_indecs(self) -> Vec<Indec> {
        self.indecs_up_to(self.0 - 1)
    }

    /// `dim Hom_T(X, Y)` in closed form: the number of `k` with
    /// `max(0, b - d) <= k <= b - 1` and `k ≡ c - a (mod n)`.
    pub fn hom_tube(self, x: Indec, y: Indec) -> usize {
        let n = self.0 as i64;
        let (a, b) = (x.orbit as i64, x.ql as i64);
        let (c, d) = (y.orbit as i64, y.ql as i64);
        let lo = (b - d).max(0);
        let hi = b - 1;
        let r = (c - a).rem_euclid(n);
        let upto = |m: i64| (m - r).div_euclid(n);
        (upto(hi) - upto(lo - 1)) as usize
    }

    /// `dim Hom_T(X, Y)` by solving the commutation equations of the two
    /// nilpotent representations of the cyclic quiver.
    pub fn hom_tube_oracle(self, x: Indec, y: Indec) -> usize {
        oracle::hom_dimension(self, x, y)
    }

    /// `Hom_C(X, Y) ≅ Hom_T(X, Y) ⊕ D Hom_T(Y, τ²X)`.
    pub fn hom_cluster(self, x: Indec, y: Indec) -> ClusterHom {
        ClusterHom {
            t_dim: self.hom_tube(x, y),
            d_dim: self.hom_tube(y, self.tau(x, 2)),
        }
    }

    /// [`Rank::hom_cluster`] evaluated with the linear-algebra oracle.
    pub fn hom_cluster_oracle(self, x: Indec, y: Indec) -> ClusterHom {
        ClusterHom {
            t_dim: self.hom_tube_oracle(x, y),
            d_dim: self.hom_tube_oracle(y, self.tau(x, 2)),
        }
    }

    /// `dim Ext¹_C(X, Y) = dim Hom_C(Y, τX)`.
    pub fn ext1_cluster(self, x: Indec, y: Indec) -> usize {
        self.hom_cluster(y, self.tau(x, 1)).total()
    }

    pub fn is_compatible(self, x: Indec, y: Indec) -> bool {
        self.ext1_cluster(x, y) == 0 && self.ext1_cluster(y, x) == 0
    }

    pub fn has_d_endomorphism(self, x: Indec) -> bool {
        self.hom_tube(x, self.tau(x, 2)) > 0
    }
}
