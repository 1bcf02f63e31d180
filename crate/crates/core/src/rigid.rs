//! Maximal rigid objects of the cluster tube and their subwing structure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::tube::{Indec, Rank, RawIndec, Wing};

/// A maximal rigid object: `n - 1` pairwise compatible indecomposables.
///
/// Summands are kept in canonical order (descending quasilength, then
/// ascending orbit), so the top summand is always index 0. Vertex `i` of the
/// endomorphism quiver corresponds to summand `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RigidObjectRepr", into = "RigidObjectRepr")]
pub struct RigidObject {
    rank: Rank,
    summands: Vec<Indec>,
}

#[derive(Serialize, Deserialize)]
struct RigidObjectRepr {
    rank: usize,
    summands: Vec<RawIndec>,
}

impl TryFrom<RigidObjectRepr> for RigidObject {
    type Error = Error;

    fn try_from(r: RigidObjectRepr) -> Result<Self> {
        let rank = Rank::new(r.rank)?;
        let summands = r
            .summands
            .into_iter()
            .map(|raw| rank.from_raw(raw))
            .collect::<Result<Vec<_>>>()?;
        RigidObject::new(rank, summands)
    }
}

impl From<RigidObject> for RigidObjectRepr {
    fn from(t: RigidObject) -> Self {
        RigidObjectRepr {
            rank: t.rank.n(),
            summands: t
                .summands
                .iter()
                .map(|x| RawIndec(x.orbit() as i64, x.ql() as i64))
                .collect(),
        }
    }
}

impl Serialize for RawIndec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

fn canonical_order(summands: &mut [Indec]) {
    summands.sort_by(|x, y| y.ql().cmp(&x.ql()).then(x.orbit().cmp(&y.orbit())));
}

impl RigidObject {
    /// Validates maximal rigidity and puts the summands in canonical order.
    pub fn new(rank: Rank, mut summands: Vec<Indec>) -> Result<Self> {
        if !is_maximal_rigid(rank, &summands) {
            let list: Vec<String> = summands.iter().map(ToString::to_string).collect();
            return Err(Error::NotMaximalRigid(list.join(" ⊕ ")));
        }
        canonical_order(&mut summands);
        Ok(RigidObject { rank, summands })
    }

    fn from_trusted(rank: Rank, mut summands: Vec<Indec>) -> Self {
        canonical_order(&mut summands);
        RigidObject { rank, summands }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn summands(&self) -> &[Indec] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn top(&self) -> Indec {
        self.summands[0]
    }

    pub fn index_of(&self, x: Indec) -> Option<usize> {
        self.summands.iter().position(|&s| s == x)
    }

    pub fn contains(&self, x: Indec) -> bool {
        self.index_of(x).is_some()
    }

    /// Apply `τ^k` to every summand.
    pub fn tau(&self, k: i64) -> RigidObject {
        let moved = self.summands.iter().map(|&x| self.rank.tau(x, k)).collect();
        RigidObject::from_trusted(self.rank, moved)
    }

    /// Interval `[a' - a + 1, a' - a + b']` of each summand `(a', b')` inside
    /// the top wing `W_(a, n-1)`, in summand order. This is the tilting module
    /// over the linearly oriented `A_{n-1}` quiver.
    pub fn tilting_intervals(&self) -> Vec<(usize, usize)> {
        let base = self.top().orbit() as i64;
        self.summands
            .iter()
            .map(|&x| {
                let off = (self.rank.lift(x, base) - base) as usize;
                (off + 1, off + x.ql())
            })
            .collect()
    }

    /// Inverse of [`RigidObject::tilting_intervals`].
    pub fn from_tilting(rank: Rank, top_orbit: i64, intervals: &[(usize, usize)]) -> Result<Self> {
        let n = rank.n();
        let mut summands = Vec::with_capacity(intervals.len());
        for &(lo, hi) in intervals {
            if lo < 1 || hi < lo || hi > n - 1 {
                return Err(Error::TiltingSpec(format!(
                    "interval {lo}-{hi} is not inside 1-{}",
                    n - 1
                )));
            }
            summands.push(rank.at(top_orbit + lo as i64 - 1, hi - lo + 1));
        }
        RigidObject::new(rank, summands)
    }
}

impl fmt::Display for RigidObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// True iff all members are pairwise (and self-) compatible and no rigid
/// indecomposable outside the set is compatible with every member.
pub fn is_maximal_rigid(rank: Rank, set: &[Indec]) -> bool {
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i..] {
            if !rank.is_compatible(x, y) {
                return false;
            }
        }
    }
    let members: BTreeSet<Indec> = set.iter().copied().collect();
    !rank
        .rigid_indecs()
        .into_iter()
        .filter(|z| !members.contains(z))
        .any(|z| set.iter().all(|&x| rank.is_compatible(x, z)))
}

/// All maximal rigid objects, sorted, found by exhaustive search over
/// `(n-1)`-subsets of rigid indecomposables.
pub fn enumerate_maximal_rigid(rank: Rank) -> Vec<RigidObject> {
    enumerate_brute_force(rank, Exec::default())
}

/// Depth-first search over index-increasing subsets of size `n - 1` of the
/// rigid indecomposables, pruned by pairwise compatibility, then filtered by
/// maximality. Parallel over the smallest chosen element.
pub fn enumerate_brute_force(rank: Rank, exec: Exec) -> Vec<RigidObject> {
    let rigid = rank.rigid_indecs();
    let m = rigid.len();
    let compat: Vec<Vec<bool>> = rigid
        .iter()
        .map(|&x| rigid.iter().map(|&y| rank.is_compatible(x, y)).collect())
        .collect();
    let size = rank.n() - 1;

    fn extend(
        chosen: &mut Vec<usize>,
        next: usize,
        size: usize,
        compat: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == size {
            out.push(chosen.clone());
            return;
        }
        for j in next..compat.len() {
            if chosen.iter().all(|&i| compat[i][j]) {
                chosen.push(j);
                extend(chosen, j + 1, size, compat, out);
                chosen.pop();
            }
        }
    }

    let starts: Vec<usize> = (0..m).collect();
    let mut found: Vec<RigidObject> = exec.flat_map(&starts, |&first| {
        let mut subsets = Vec::new();
        let mut chosen = vec![first];
        extend(&mut chosen, first + 1, size, &compat, &mut subsets);
        subsets
            .into_iter()
            .filter(|s| {
                (0..m).all(|z| s.contains(&z) || !s.iter().all(|&i| compat[i][z]))
            })
            .map(|s| RigidObject::from_trusted(rank, s.iter().map(|&i| rigid[i]).collect()))
            .collect()
    });
    found.sort();
    found
}

/// All tilting sets of the wing below `summit`: the summit plus one of the
/// subwing-triple splittings, filled recursively.
fn wing_tilting_sets(rank: Rank, summit: Indec) -> Vec<Vec<Indec>> {
    let a = summit.orbit() as i64;
    let h = summit.ql();
    let fill = |x: Option<Indec>| -> Vec<Vec<Indec>> {
        match x {
            None => vec![Vec::new()],
            Some(x) => wing_tilting_sets(rank, x),
        }
    };
    let mut out = Vec::new();
    // the split leaves out exactly one quasisimple (a + c, 1) of the wing
    for c in 0..h {
        let left = (c >= 1).then(|| rank.at(a, c));
        let right = (h > c + 1).then(|| rank.at(a + c as i64 + 1, h - c - 1));
        for l in fill(left) {
            for r in fill(right) {
                let mut set = Vec::with_capacity(h);
                set.push(summit);
                set.extend(&l);
                set.extend(&r);
                out.push(set);
            }
        }
    }
    out
}

/// Structured enumeration: a top orbit and a tilting set inside its wing.
pub fn enumerate_structured(rank: Rank, exec: Exec) -> Vec<RigidObject> {
    let n = rank.n();
    let orbits: Vec<i64> = (1..=n as i64).collect();
    let mut out: Vec<RigidObject> = exec.flat_map(&orbits, |&a| {
        wing_tilting_sets(rank, rank.at(a, n - 1))
            .into_iter()
            .map(|s| RigidObject::from_trusted(rank, s))
            .collect()
    });
    out.sort();
    out
}

/// `(X; Y, Z)`: a summit with optional left sub-summit on its ray and right
/// sub-summit on its coray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubwingTriple {
    pub top: Indec,
    pub left: Option<Indec>,
    pub right: Option<Indec>,
}

impl SubwingTriple {
    pub fn is_degenerate(&self) -> bool {
        self.left.is_none() || self.right.is_none()
    }

    /// The unique quasisimple of `W_top` outside both subwings.
    pub fn gap_quasisimple(&self, rank: Rank) -> Indec {
        let c = self.left.map_or(0, Indec::ql);
        rank.at(self.top.orbit() as i64 + c as i64, 1)
    }

    /// Checks the coordinate shape of a (non-)degenerate triple.
    pub fn is_well_formed(&self, rank: Rank) -> bool {
        let (a, b) = (self.top.orbit() as i64, self.top.ql());
        let n = rank.n();
        if b < 2 || b > n - 1 {
            return false;
        }
        match (self.left, self.right) {
            (Some(y), Some(z)) => {
                let c = y.ql();
                b >= 3
                    && (1..=b - 2).contains(&c)
                    && y == rank.at(a, c)
                    && z == rank.at(a + c as i64 + 1, b - c - 1)
            }
            (Some(y), None) => y == rank.at(a, b - 1),
            (None, Some(z)) => z == rank.at(a + 1, b - 1),
            (None, None) => false,
        }
    }
}

/// The `T`-subwing triple of every summand of quasilength > 1, in summand
/// order.
pub fn subwing_decomposition(t: &RigidObject) -> Result<Vec<SubwingTriple>> {
    let rank = t.rank();
    if !is_maximal_rigid(rank, t.summands()) {
        return Err(Error::NotMaximalRigid(t.to_string()));
    }
    let mut out = Vec::new();
    for &x in t.summands() {
        let (a, b) = (x.orbit() as i64, x.ql());
        if b == 1 {
            continue;
        }
        let triple = if t.contains(rank.at(a, b - 1)) {
            SubwingTriple { top: x, left: Some(rank.at(a, b - 1)), right: None }
        } else if t.contains(rank.at(a + 1, b - 1)) {
            SubwingTriple { top: x, left: None, right: Some(rank.at(a + 1, b - 1)) }
        } else {
            let c = (1..b.saturating_sub(1))
                .rev()
                .find(|&c| t.contains(rank.at(a, c)))
                .ok_or_else(|| Error::NotMaximalRigid(format!("no left sub-summit below {x}")))?;
            let z = rank.at(a + c as i64 + 1, b - c - 1);
            if !t.contains(z) {
                return Err(Error::NotMaximalRigid(format!("{z} missing below {x}")));
            }
            SubwingTriple { top: x, left: Some(rank.at(a, c)), right: Some(z) }
        };
        check_partition(t, &triple)?;
        out.push(triple);
    }
    Ok(out)
}

/// Every other summand inside `W_top` lies in one of the two subwings, each of
/// which holds exactly as many summands as its height.
fn check_partition(t: &RigidObject, triple: &SubwingTriple) -> Result<()> {
    let rank = t.rank();
    let in_sub = |s: Option<Indec>, x: Indec| s.is_some_and(|s| rank.in_wing(x, s));
    let inside: Vec<Indec> = t
        .summands()
        .iter()
        .copied()
        .filter(|&x| x != triple.top && rank.in_wing(x, triple.top))
        .collect();
    let bad = inside
        .iter()
        .find(|&&x| !in_sub(triple.left, x) && !in_sub(triple.right, x));
    if let Some(x) = bad {
        return Err(Error::NotMaximalRigid(format!(
            "summand {x} escapes the subwings of {}",
            triple.top
        )));
    }
    for s in [triple.left, triple.right].into_iter().flatten() {
        let count = inside.iter().filter(|&&x| rank.in_wing(x, s)).count();
        if count != s.ql() {
            return Err(Error::NotMaximalRigid(format!(
                "wing of {s} holds {count} summands, expected {}",
                s.ql()
            )));
        }
    }
    Ok(())
}

/// Sends each quasisimple of the top wing to the summand of smallest
/// quasilength whose wing contains it.
pub fn quasisimple_map(t: &RigidObject) -> BTreeMap<Indec, Indec> {
    let rank = t.rank();
    let top = t.top();
    (0..top.ql())
        .map(|off| {
            let q = rank.at(top.orbit() as i64 + off as i64, 1);
            let s = t
                .summands()
                .iter()
                .copied()
                .filter(|&s| rank.in_wing(q, s))
                .min_by_key(|s| s.ql())
                .expect("the top summand's wing contains every quasisimple in it");
            (q, s)
        })
        .collect()
}

/// All members of a wing, as a convenience for exhaustive wing checks.
pub fn wing_members(rank: Rank, summit: Indec) -> Vec<Indec> {
    Wing::new(rank, summit).map(|w| w.members()).unwrap_or_default()
}

pub fn catalan(k: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..k as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
