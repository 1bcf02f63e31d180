//! The functor `Hom_C(T, -)` on indecomposables: reverse hammocks restricted
//! to `add T`, the strings `σ^T_X`, `σ^D_X`, `σ_X`, and their verification
//! against per-vertex cluster Hom dimensions.
//!
//! Internally the object is rotated so that its top summand is `(1, n-1)`;
//! arguments and reports use the caller's coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::endo::endomorphism_algebra;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quiver::{ArrowId, ArrowKind, Presentation};
use crate::rigid::{subwing_decomposition, RigidObject};
use crate::strings::{
    d_letter_count, default_cap, enumerate_strings, string_module, Letter, StringWord,
};
use crate::tube::{Indec, Rank};

/// `F`: everything of quasilength at most `n - 1`, plus the triangle
/// `a + b <= 2n - 1` (with `a` in `1..=n`) above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalDomain {
    pub rank: Rank,
    pub members: Vec<Indec>,
}

impl FundamentalDomain {
    pub fn contains(&self, x: Indec) -> bool {
        in_fundamental_domain(self.rank, x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn in_fundamental_domain(rank: Rank, x: Indec) -> bool {
    let n = rank.n();
    x.ql() < n || x.orbit() + x.ql() < 2 * n
}

pub fn fundamental_domain(rank: Rank) -> FundamentalDomain {
    let members = rank
        .indecs_up_to(2 * rank.n() - 2)
        .into_iter()
        .filter(|&x| in_fundamental_domain(rank, x))
        .collect();
    FundamentalDomain { rank, members }
}

/// `½(3n² − 5n + 2)`.
pub fn finite_type_count(n: usize) -> usize {
    (3 * n * n + 2 - 5 * n) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MapKind {
    T,
    D,
}

/// `Hom_C(T, X)` as predicted by the strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicted {
    Zero,
    Module(StringWord),
    Sum(StringWord, StringWord),
}

impl Predicted {
    pub fn components(&self) -> Vec<&StringWord> {
        match self {
            Predicted::Zero => Vec::new(),
            Predicted::Module(s) => vec![s],
            Predicted::Sum(a, b) => vec![a, b],
        }
    }

    pub fn dims(&self, p: &Presentation) -> Result<Vec<usize>> {
        let mut dims = vec![0; p.quiver().vertex_count()];
        for s in self.components() {
            let m = string_module(p, s)?;
            dims.iter_mut().zip(m.dims).for_each(|(d, e)| *d += e);
        }
        Ok(dims)
    }
}

/// Cached `dim Hom_C(Y, X)` from the linear-algebra oracle, for rigid `Y` and
/// all `X` up to a quasilength cap.
#[derive(Debug, Clone)]
pub struct OracleTable {
    rank: Rank,
    cap: usize,
    dims: HashMap<(Indec, Indec), usize>,
}

impl OracleTable {
    pub fn new(rank: Rank, cap: usize, exec: Exec) -> Self {
        let pairs: Vec<(Indec, Indec)> = rank
            .rigid_indecs()
            .into_iter()
            .flat_map(|y| rank.indecs_up_to(cap).into_iter().map(move |x| (y, x)))
            .collect();
        let values = exec.map(&pairs, |&(y, x)| rank.hom_cluster_oracle(y, x).total());
        OracleTable { rank, cap, dims: pairs.into_iter().zip(values).collect() }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn hom(&self, y: Indec, x: Indec) -> usize {
        match self.dims.get(&(y, x)) {
            Some(&d) => d,
            None => self.rank.hom_cluster_oracle(y, x).total(),
        }
    }
}

/// Everything needed to evaluate the Hom-functor of one maximal rigid object.
#[derive(Debug, Clone)]
pub struct HomFunctor {
    original: RigidObject,
    shift: i64,
    t: RigidObject,
    lambda: Presentation,
    strings: Vec<StringWord>,
    /// D-free strings visiting each vertex at most once, by vertex set.
    simple_paths: HashMap<u64, Vec<StringWord>>,
}

impl HomFunctor {
    pub fn new(t: &RigidObject) -> Result<Self> {
        let shift = t.top().orbit() as i64 - 1;
        let normalized = t.tau(shift);
        let lambda = endomorphism_algebra(&normalized)?;
        let e = enumerate_strings(&lambda, default_cap(&lambda))?;
        if let Some(b) = e.bands.first() {
            return Err(Error::InfiniteType(b.display(&lambda).to_string()));
        }
        let mut simple_paths: HashMap<u64, Vec<StringWord>> = HashMap::new();
        for s in &e.strings {
            if d_letter_count(&lambda, s) > 0 {
                continue;
            }
            let vs = s.vertices(&lambda);
            let mask = vs.iter().fold(0u64, |m, &v| m | 1 << v);
            if mask.count_ones() as usize == vs.len() {
                simple_paths.entry(mask).or_default().push(s.clone());
            }
        }
        Ok(HomFunctor {
            original: t.clone(),
            shift,
            t: normalized,
            lambda,
            strings: e.strings,
            simple_paths,
        })
    }

    pub fn rank(&self) -> Rank {
        self.t.rank()
    }

    pub fn original(&self) -> &RigidObject {
        &self.original
    }

    /// The rotated object with top summand `(1, n - 1)`.
    pub fn normalized(&self) -> &RigidObject {
        &self.t
    }

    /// `Λ` of the normalized object.
    pub fn algebra(&self) -> &Presentation {
        &self.lambda
    }

    /// Canonical strings of the algebra.
    pub fn strings(&self) -> &[StringWord] {
        &self.strings
    }

    /// Caller coordinates to normalized coordinates.
    pub fn normalize(&self, x: Indec) -> Indec {
        self.rank().tau(x, self.shift)
    }

    pub fn denormalize(&self, x: Indec) -> Indec {
        self.rank().tau(x, -self.shift)
    }

    fn hammock_n(&self, x: Indec, kind: MapKind) -> Vec<usize> {
        let rank = self.rank();
        let s = self.t.summands();
        let mut idx: Vec<usize> = (0..s.len())
            .filter(|&i| match kind {
                MapKind::T => rank.hom_tube(s[i], x) > 0,
                MapKind::D => rank.hom_tube(x, rank.tau(s[i], 2)) > 0,
            })
            .collect();
        idx.sort_by_key(|&i| (s[i].ql(), i));
        idx
    }

    /// Summands in `R^kind(X)`, by ascending quasilength, in caller coordinates.
    pub fn reverse_hammock(&self, x: Indec, kind: MapKind) -> Vec<Indec> {
        self.hammock_n(self.normalize(x), kind)
            .into_iter()
            .map(|i| self.denormalize(self.t.summands()[i]))
            .collect()
    }

    /// Vertices of the normalized algebra in `R^kind(X)`.
    pub fn hammock_vertices(&self, x: Indec, kind: MapKind) -> Vec<usize> {
        self.hammock_n(self.normalize(x), kind)
    }

    fn sigma_n(&self, x: Indec, kind: MapKind) -> Result<StringWord> {
        let chain = self.hammock_n(x, kind);
        let Some(&top) = chain.last() else {
            return Ok(StringWord::Zero);
        };
        let mask = chain.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut found: BTreeSet<StringWord> = BTreeSet::new();
        for s in self.simple_paths.get(&mask).into_iter().flatten() {
            if s.end(&self.lambda) == Some(top) {
                found.insert(s.clone());
            } else if s.start(&self.lambda) == Some(top) {
                found.insert(s.inverse());
            }
        }
        let mut it = found.into_iter();
        match (it.next(), it.next()) {
            (Some(s), None) => Ok(s),
            (None, _) => Err(Error::Inconsistent(format!(
                "no D-free string through the {kind:?}-hammock of {} ending at vertex {}",
                self.denormalize(x),
                top + 1
            ))),
            (Some(_), Some(_)) => Err(Error::Inconsistent(format!(
                "several strings through the {kind:?}-hammock of {}",
                self.denormalize(x)
            ))),
        }
    }

    /// `σ^kind_X`, oriented to end at the hammock's summand of largest
    /// quasilength; the zero string when the hammock misses `add T`.
    pub fn sigma_string(&self, x: Indec, kind: MapKind) -> Result<StringWord> {
        self.sigma_n(self.normalize(x), kind)
    }

    fn beta_n(&self, x: Indec) -> Result<Option<ArrowId>> {
        let st = self.sigma_n(x, MapKind::T)?;
        let sd = self.sigma_n(x, MapKind::D)?;
        let (Some(from), Some(to)) = (st.end(&self.lambda), sd.end(&self.lambda)) else {
            return Ok(None);
        };
        let q = self.lambda.quiver();
        let beta = (0..q.arrows().len()).find(|&a| {
            let arrow = q.arrow(a);
            matches!(arrow.kind, Some(ArrowKind::D) | Some(ArrowKind::Loop))
                && arrow.src == from
                && arrow.tgt == to
        });
        match beta {
            Some(b) => Ok(Some(b)),
            None => Err(Error::Inconsistent(format!(
                "no D-arrow from vertex {} to vertex {} for {}",
                from + 1,
                to + 1,
                self.denormalize(x)
            ))),
        }
    }

    /// The D-arrow `β_X` joining the end vertices of `σ^T_X` and `σ^D_X`.
    pub fn beta_arrow(&self, x: Indec) -> Result<Option<ArrowId>> {
        self.beta_n(self.normalize(x))
    }

    fn in_add_tau_t_n(&self, x: Indec) -> bool {
        self.t.contains(self.rank().tau(x, -1))
    }

    pub fn in_add_tau_t(&self, x: Indec) -> bool {
        self.in_add_tau_t_n(self.normalize(x))
    }

    fn sigma_full_n(&self, x: Indec) -> Result<StringWord> {
        if self.in_add_tau_t_n(x) {
            return Err(Error::InAddTauT(self.denormalize(x).to_string()));
        }
        if !in_fundamental_domain(self.rank(), x) {
            return Err(Error::OutsideDomain(self.denormalize(x).to_string()));
        }
        let st = self.sigma_n(x, MapKind::T)?;
        let sd = self.sigma_n(x, MapKind::D)?;
        let s = match (st.is_zero(), sd.is_zero()) {
            (true, true) => {
                return Err(Error::Inconsistent(format!(
                    "both strings vanish for {}",
                    self.denormalize(x)
                )))
            }
            (false, true) => st,
            (true, false) => sd,
            (false, false) => {
                let beta = self.beta_n(x)?.expect("both strings are non-zero");
                st.then(&StringWord::from_letters(vec![Letter::direct(beta)]))
                    .then(&sd.inverse())
            }
        };
        if let Some(why) = s.defect(&self.lambda) {
            return Err(Error::Inconsistent(format!(
                "σ of {} is not a string: {why}",
                self.denormalize(x)
            )));
        }
        Ok(s)
    }

    /// `σ_X = (σ^D_X)⁻¹ β_X σ^T_X`, or the non-zero piece alone.
    pub fn sigma(&self, x: Indec) -> Result<StringWord> {
        self.sigma_full_n(self.normalize(x))
    }

    fn predicted_n(&self, x: Indec) -> Result<Predicted> {
        let n = self.rank().n();
        if self.in_add_tau_t_n(x) {
            return Ok(Predicted::Zero);
        }
        if in_fundamental_domain(self.rank(), x) {
            return Ok(Predicted::Module(self.sigma_full_n(x)?));
        }
        if x.orbit() == n && (x.ql() + 1).is_multiple_of(n) && x.ql() + 1 >= 2 * n {
            return Ok(Predicted::Zero);
        }
        let st = self.sigma_n(x, MapKind::T)?;
        let sd = self.sigma_n(x, MapKind::D)?;
        Ok(match (st.is_zero(), sd.is_zero()) {
            (true, true) => Predicted::Zero,
            (false, true) => Predicted::Module(st),
            (true, false) => Predicted::Module(sd),
            (false, false) => Predicted::Sum(st, sd),
        })
    }

    /// `Hom_C(T, X)`: zero on `add τT` and on `(n, kn − 1)`, `k >= 2`
    /// (top-normalized coordinates); `M(σ_X)` on the rest of `F`; and
    /// `M(σ^T_X) ⊕ M(σ^D_X)` elsewhere.
    pub fn predicted_module(&self, x: Indec) -> Result<Predicted> {
        self.predicted_n(self.normalize(x))
    }

    /// Per-vertex `dim Hom_C(T_i, X)` from the oracle table.
    fn oracle_dims_n(&self, x: Indec, oracle: &OracleTable) -> Vec<usize> {
        self.t.summands().iter().map(|&s| oracle.hom(s, x)).collect()
    }

    /// Full comparison of predictions with the oracle for every `X` with
    /// quasilength at most `oracle.cap()`.
    pub fn verify(&self, oracle: &OracleTable) -> HomFunctorReport {
        let rank = self.rank();
        let n = rank.n();
        let cap = oracle.cap().max(2 * n - 2);
        let mut records = Vec::new();
        let mut image: BTreeMap<StringWord, Vec<Indec>> = BTreeMap::new();
        let mut domain_count = 0;
        let mut vanishing = Vec::new();
        for x in rank.indecs_up_to(cap) {
            let in_f = in_fundamental_domain(rank, x);
            let tau_t = self.in_add_tau_t_n(x);
            let oracle_dims = self.oracle_dims_n(x, oracle);
            if !in_f && oracle_dims.iter().all(|&d| d == 0) {
                vanishing.push(x);
            }
            let mut record = Record {
                x: self.denormalize(x),
                normalized: x,
                in_f,
                in_add_tau_t: tau_t,
                sigma_t: None,
                sigma_d: None,
                beta: None,
                sigma: None,
                predicted_dims: Vec::new(),
                oracle_dims,
                ok: false,
                error: None,
            };
            let outcome = (|| -> Result<()> {
                let st = self.sigma_n(x, MapKind::T)?;
                let sd = self.sigma_n(x, MapKind::D)?;
                record.sigma_t = Some(st.to_json(&self.lambda));
                record.sigma_d = Some(sd.to_json(&self.lambda));
                if !st.is_zero() && !sd.is_zero() {
                    record.beta = self.beta_n(x)?.map(|b| self.lambda.quiver().arrow(b).name.clone());
                }
                let predicted = self.predicted_n(x)?;
                if in_f && !tau_t {
                    domain_count += 1;
                    if let Predicted::Module(s) = &predicted {
                        record.sigma = Some(s.to_json(&self.lambda));
                        image.entry(s.canonical()).or_default().push(x);
                    }
                }
                record.predicted_dims = predicted.dims(&self.lambda)?;
                Ok(())
            })();
            if let Err(e) = outcome {
                record.error = Some(e.to_string());
            }
            record.ok = record.error.is_none() && record.predicted_dims == record.oracle_dims;
            records.push(record);
        }

        let collisions: Vec<Vec<Indec>> = image
            .values()
            .filter(|xs| xs.len() > 1)
            .map(|xs| xs.iter().map(|&x| self.denormalize(x)).collect())
            .collect();
        let image_set: BTreeSet<&StringWord> = image.keys().collect();
        let all: BTreeSet<&StringWord> = self.strings.iter().collect();
        let expected_vanishing: Vec<Indec> = (2..)
            .map(|k| k * n - 1)
            .take_while(|&b| b <= cap)
            .map(|b| rank.at(n as i64, b))
            .collect();
        let mut vanishing_sorted = vanishing.clone();
        vanishing_sorted.sort();
        let mut expected_sorted = expected_vanishing.clone();
        expected_sorted.sort();
        HomFunctorReport {
            object: self.original.clone(),
            ql_cap: cap,
            injective: collisions.is_empty(),
            collisions,
            image_is_all_strings: image_set == all,
            image_size: image_set.len(),
            string_count: all.len(),
            domain_count,
            expected_count: finite_type_count(n),
            vanishing_outside_f: vanishing.iter().map(|&x| self.denormalize(x)).collect(),
            vanishing_ok: vanishing_sorted == expected_sorted,
            records,
        }
    }

    /// Structural facts about reverse hammocks and strings on `F` (and, for
    /// the rectangle shape, on the top wing).
    pub fn structure_checks(&self) -> Vec<StructureCheck> {
        let rank = self.rank();
        let n = rank.n();
        let s = self.t.summands();
        let top = self.t.top();
        let domain = fundamental_domain(rank).members;
        let triples = subwing_decomposition(&self.t).unwrap_or_default();
        let mut checks = Vec::new();
        let mut push = |name: &'static str, failures: Vec<String>| {
            checks.push(StructureCheck { name, ok: failures.is_empty(), failures });
        };

        // unique quasisimple in each reverse hammock, inside every member summand's wing
        let mut fails = Vec::new();
        for &x in &domain {
            for kind in [MapKind::T, MapKind::D] {
                let qs: Vec<Indec> = (1..=n as i64)
                    .map(|a| rank.at(a, 1))
                    .filter(|&q| match kind {
                        MapKind::T => rank.hom_tube(q, x) > 0,
                        MapKind::D => rank.hom_tube(x, rank.tau(q, 2)) > 0,
                    })
                    .collect();
                if qs.len() != 1 {
                    fails.push(format!("{x} {kind:?}: {} quasisimples", qs.len()));
                    continue;
                }
                for i in self.hammock_n(x, kind) {
                    if !rank.in_wing(qs[0], s[i]) {
                        fails.push(format!("{x} {kind:?}: {} outside the wing of {}", qs[0], s[i]));
                    }
                }
            }
        }
        push("reverse hammock quasisimple", fails);

        // top summand outside R(X) exactly on the wing of τT_1
        let tau_top = rank.tau(top, 1);
        let fails = domain
            .iter()
            .filter(|&&x| {
                let outside =
                    rank.hom_tube(top, x) == 0 && rank.hom_tube(x, rank.tau(top, 2)) == 0;
                outside != rank.in_wing(x, tau_top)
            })
            .map(|x| x.to_string())
            .collect();
        push("top summand in reverse hammock", fails);

        // at most one sub-summit of a non-degenerate triple per reverse hammock
        let mut fails = Vec::new();
        for &x in &domain {
            for kind in [MapKind::T, MapKind::D] {
                let h: BTreeSet<Indec> =
                    self.hammock_n(x, kind).into_iter().map(|i| s[i]).collect();
                for tr in triples.iter().filter(|t| !t.is_degenerate()) {
                    if tr.left.is_some_and(|y| h.contains(&y))
                        && tr.right.is_some_and(|z| h.contains(&z))
                    {
                        fails.push(format!("{x} {kind:?} contains both sub-summits of {}", tr.top));
                    }
                }
            }
        }
        push("sub-summits exclusive", fails);

        // σ^T_X = σ^D_Y ≠ 0 forces σ^T_Y ≠ 0
        let live: Vec<Indec> =
            domain.iter().copied().filter(|&x| !self.in_add_tau_t_n(x)).collect();
        let strings: Vec<(Indec, Option<StringWord>, Option<StringWord>)> = live
            .iter()
            .map(|&x| {
                (x, self.sigma_n(x, MapKind::T).ok(), self.sigma_n(x, MapKind::D).ok())
            })
            .collect();
        let mut fails = Vec::new();
        for (x, st, _) in &strings {
            for (y, ty, dy) in &strings {
                if let (Some(st), Some(dy), Some(ty)) = (st, dy, ty) {
                    if !st.is_zero() && st == dy && ty.is_zero() {
                        fails.push(format!("{x} / {y}"));
                    }
                }
            }
        }
        push("T-string is not a lone D-string", fails);

        // forward hammocks of the top wing meet F in one rectangle
        let mut fails = Vec::new();
        for x in domain.iter().copied().filter(|&x| rank.in_wing(x, top)) {
            for kind in [MapKind::T, MapKind::D] {
                let region: Vec<Indec> = domain
                    .iter()
                    .copied()
                    .filter(|&y| match kind {
                        MapKind::T => rank.hom_tube(x, y) > 0,
                        MapKind::D => rank.hom_tube(y, rank.tau(x, 2)) > 0,
                    })
                    .collect();
                if !is_rectangle(rank, &region) {
                    fails.push(format!("{x} {kind:?}"));
                }
            }
        }
        push("hammock rectangle", fails);
        checks
    }
}

/// In ray/coray coordinates `(u, v) = (u, u + ql)`, lifting either `u` or `v`
/// into a window of width `n`, the region equals the product of its two
/// projections.
fn is_rectangle(rank: Rank, region: &[Indec]) -> bool {
    if region.is_empty() {
        return true;
    }
    let n = rank.n() as i64;
    let lift = |m: i64, base: i64| base + (m - base).rem_euclid(n);
    (1..=n).any(|base| {
        [false, true].into_iter().any(|lift_v| {
            let pts: BTreeSet<(i64, i64)> = region
                .iter()
                .map(|&y| {
                    let (a, b) = (y.orbit() as i64, y.ql() as i64);
                    if lift_v {
                        let v = lift(a + b, base);
                        (v - b, v)
                    } else {
                        let u = lift(a, base);
                        (u, u + b)
                    }
                })
                .collect();
            let us: BTreeSet<i64> = pts.iter().map(|p| p.0).collect();
            let vs: BTreeSet<i64> = pts.iter().map(|p| p.1).collect();
            let contiguous = |s: &BTreeSet<i64>| {
                let (lo, hi) = (s.first().copied(), s.last().copied());
                lo.zip(hi).is_some_and(|(lo, hi)| (hi - lo + 1) as usize == s.len())
            };
            pts.len() == region.len()
                && contiguous(&us)
                && contiguous(&vs)
                && pts.len() == us.len() * vs.len()
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub x: Indec,
    pub normalized: Indec,
    pub in_f: bool,
    pub in_add_tau_t: bool,
    #[serde(rename = "sigmaT")]
    pub sigma_t: Option<serde_json::Value>,
    #[serde(rename = "sigmaD")]
    pub sigma_d: Option<serde_json::Value>,
    pub beta: Option<String>,
    pub sigma: Option<serde_json::Value>,
    pub predicted_dims: Vec<usize>,
    pub oracle_dims: Vec<usize>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomFunctorReport {
    pub object: RigidObject,
    pub ql_cap: usize,
    pub injective: bool,
    pub collisions: Vec<Vec<Indec>>,
    pub image_is_all_strings: bool,
    pub image_size: usize,
    pub string_count: usize,
    /// `|F \ add τT|`.
    pub domain_count: usize,
    pub expected_count: usize,
    /// Objects outside `F` (within the cap) killed by `Hom_C(T, -)`.
    pub vanishing_outside_f: Vec<Indec>,
    pub vanishing_ok: bool,
    pub records: Vec<Record>,
}

impl HomFunctorReport {
    pub fn dims_ok(&self) -> bool {
        self.records.iter().all(|r| r.ok)
    }

    /// Injectivity, exact image, count and dimension vectors on `F`.
    pub fn domain_ok(&self) -> bool {
        self.injective
            && self.image_is_all_strings
            && self.domain_count == self.expected_count
            && self.records.iter().filter(|r| r.in_f).all(|r| r.ok)
    }

    /// Vanishing locus and dimension vectors outside `F`.
    pub fn outside_ok(&self) -> bool {
        self.vanishing_ok && self.records.iter().filter(|r| !r.in_f).all(|r| r.ok)
    }

    pub fn ok(&self) -> bool {
        self.domain_ok() && self.outside_ok()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.ok)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureCheck {
    pub name: &'static str,
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Convenience wrappers on a bare object.
pub fn reverse_hammock(t: &RigidObject, x: Indec, kind: MapKind) -> Result<Vec<Indec>> {
    Ok(HomFunctor::new(t)?.reverse_hammock(x, kind))
}

pub fn sigma_string(t: &RigidObject, x: Indec, kind: MapKind) -> Result<StringWord> {
    HomFunctor::new(t)?.sigma_string(x, kind)
}

pub fn sigma(t: &RigidObject, x: Indec) -> Result<StringWord> {
    HomFunctor::new(t)?.sigma(x)
}

pub fn predicted_module(t: &RigidObject, x: Indec) -> Result<Predicted> {
    HomFunctor::new(t)?.predicted_module(x)
}

pub fn verify_hom_functor(t: &RigidObject, ql_cap: usize) -> Result<HomFunctorReport> {
    let hf = HomFunctor::new(t)?;
    let oracle = OracleTable::new(t.rank(), ql_cap, Exec::default());
    Ok(hf.verify(&oracle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigid::enumerate_maximal_rigid;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    fn ladder3() -> RigidObject {
        let rank = r(3);
        RigidObject::new(rank, vec![rank.at(1, 2), rank.at(1, 1)]).unwrap()
    }

    #[test]
    fn domain_sizes() {
        let f3 = fundamental_domain(r(3));
        assert_eq!(f3.len(), 9);
        for (a, b) in [(1, 3), (2, 3), (1, 4)] {
            assert!(f3.contains(r(3).at(a, b)));
        }
        assert!(!f3.contains(r(3).at(3, 3)));
        let f2 = fundamental_domain(r(2));
        assert_eq!(f2.members, vec![r(2).at(1, 1), r(2).at(2, 1), r(2).at(1, 2)]);
        for n in 2..=7 {
            assert_eq!(fundamental_domain(r(n)).len(), 3 * n * (n - 1) / 2);
        }
    }

    #[test]
    fn rank_three_worked_example() {
        let rank = r(3);
        let t = ladder3();
        let hf = HomFunctor::new(&t).unwrap();
        let p = hf.algebra();
        let x = rank.at(1, 3);
        assert_eq!(hf.reverse_hammock(x, MapKind::T), vec![rank.at(1, 1), rank.at(1, 2)]);
        assert_eq!(hf.reverse_hammock(x, MapKind::D), vec![rank.at(1, 2)]);
        assert_eq!(hf.sigma_string(x, MapKind::T).unwrap().names(p), vec!["a1_2^-1"]);
        assert_eq!(hf.sigma_string(x, MapKind::D).unwrap(), StringWord::Trivial(0));
        let beta = hf.beta_arrow(x).unwrap().unwrap();
        assert_eq!(p.quiver().arrow(beta).name, "w");
        let s = hf.sigma(x).unwrap();
        assert_eq!(s.names(p), vec!["w", "a1_2^-1"]);
        let m = hf.predicted_module(x).unwrap();
        assert_eq!(m.dims(p).unwrap(), vec![2, 1]);
        assert_eq!(hf.predicted_module(rank.at(3, 5)).unwrap(), Predicted::Zero);
        let tau_top = rank.tau(t.top(), 1);
        assert_eq!(hf.predicted_module(tau_top).unwrap(), Predicted::Zero);
        assert!(matches!(hf.sigma(tau_top), Err(Error::InAddTauT(_))));
        assert_eq!(hf.sigma_string(tau_top, MapKind::T).unwrap(), StringWord::Zero);
    }

    #[test]
    fn small_ranks_verify() {
        for n in 2..=4 {
            let rank = r(n);
            let oracle = OracleTable::new(rank, 3 * n, Exec::default());
            for t in enumerate_maximal_rigid(rank) {
                let hf = HomFunctor::new(&t).unwrap();
                let report = hf.verify(&oracle);
                let bad: Vec<_> = report.failures().map(|r| (r.x, r.error.clone())).collect();
                assert!(report.ok(), "{t}: {bad:?} {report:?}");
                assert_eq!(report.domain_count, finite_type_count(n));
                for c in hf.structure_checks() {
                    assert!(c.ok, "{t}: {} {:?}", c.name, c.failures);
                }
            }
        }
    }

    #[test]
    fn rotation_is_transparent() {
        let rank = r(4);
        let t = RigidObject::new(rank, vec![rank.at(3, 3), rank.at(3, 1), rank.at(1, 1)]).unwrap();
        let hf = HomFunctor::new(&t).unwrap();
        assert_eq!(hf.normalized().top(), rank.at(1, 3));
        for x in rank.indecs_up_to(4) {
            let h = hf.reverse_hammock(x, MapKind::T);
            let direct: Vec<Indec> = t
                .summands()
                .iter()
                .copied()
                .filter(|&s| rank.hom_tube(s, x) > 0)
                .collect();
            assert_eq!(h.len(), direct.len());
            assert!(h.iter().all(|s| direct.contains(s)));
        }
    }

    #[test]
    fn counts() {
        let expected = [2, 7, 15, 26, 40, 57];
        for (n, e) in (2..=7).zip(expected) {
            assert_eq!(finite_type_count(n), e);
        }
    }
}
