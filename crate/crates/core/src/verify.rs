//! The verification suite: every structural claim checked per rank and per
//! maximal rigid object against the brute-force oracles.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::endo::{
    cartan_check, cluster_tilted_a_classes, lambda_gorenstein, loopless_quiver,
    tau_orbit_count, EndoBundle, CLASS_VERTEX_LIMIT,
};
use crate::error::Result;
use crate::exec::Exec;
use crate::hom_functor::{finite_type_count, HomFunctor, OracleTable};
use crate::quiver::{
    connecting_vertices, find_isomorphism, gentle_violation, is_cluster_tilted_a,
    cluster_tilted_a_violation, GorensteinDimension, Presentation,
};
use crate::rigid::{catalan, enumerate_brute_force, enumerate_structured, RigidObject};
use crate::strings::{
    contains_loop, d_letter_count, default_cap, enumerate_strings, string_module, StringWord,
};
use crate::tube::{Indec, Rank};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Oracle,
    Sampled,
    Rigid,
    Endo,
    Gentle,
    Gorenstein,
    Strings,
    HomFunctor,
    Converse,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Oracle,
        Check::Sampled,
        Check::Rigid,
        Check::Endo,
        Check::Gentle,
        Check::Gorenstein,
        Check::Strings,
        Check::HomFunctor,
        Check::Converse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::Sampled => "sampled",
            Check::Rigid => "rigid",
            Check::Endo => "endo",
            Check::Gentle => "gentle",
            Check::Gorenstein => "gorenstein",
            Check::Strings => "strings",
            Check::HomFunctor => "hom-functor",
            Check::Converse => "converse",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<RigidObject>,
    pub ok: bool,
    pub skipped: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(check: Check, rank: usize, object: Option<&RigidObject>, failures: Vec<String>, ok_detail: String) -> Self {
        CheckResult {
            check,
            rank,
            object: object.cloned(),
            ok: failures.is_empty(),
            skipped: false,
            detail: if failures.is_empty() { ok_detail } else { failures.join("; ") },
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub ranks: Vec<usize>,
    pub checks: BTreeSet<Check>,
    /// Quasilength cap as a multiple of the rank.
    pub ql_factor: usize,
    pub seed: u64,
    pub samples: usize,
    pub exec: Exec,
}

impl SuiteConfig {
    pub fn new(ranks: impl IntoIterator<Item = usize>) -> Self {
        SuiteConfig {
            ranks: ranks.into_iter().collect(),
            checks: Check::ALL.into_iter().collect(),
            ql_factor: 3,
            seed: 0,
            samples: 100,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub ranks: Vec<usize>,
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.ok)
    }
}

/// Closed form against the oracle on every pair with quasilength at most
/// `max_ql`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSweep {
    pub pairs: usize,
    pub mismatches: Vec<(Indec, Indec, usize, usize)>,
}

pub fn oracle_sweep(rank: Rank, max_ql: usize, exec: Exec) -> OracleSweep {
    let xs = rank.indecs_up_to(max_ql);
    let mismatches = exec.flat_map(&xs, |&x| {
        xs.iter()
            .filter_map(|&y| {
                let (closed, oracle) = (rank.hom_tube(x, y), rank.hom_tube_oracle(x, y));
                (closed != oracle).then_some((x, y, closed, oracle))
            })
            .collect()
    });
    OracleSweep { pairs: xs.len() * xs.len(), mismatches }
}

/// Seeded random pairs beyond the exhaustive window: oracle agreement, Serre
/// symmetry of `Ext¹` and τ-equivariance.
pub fn sampled_checks(rank: Rank, samples: usize, seed: u64) -> Vec<String> {
    let n = rank.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let draw = |rng: &mut ChaCha8Rng| {
        rank.at(rng.gen_range(1..=n as i64), rng.gen_range(1..=5 * n))
    };
    let mut failures = Vec::new();
    for _ in 0..samples {
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        let k = rng.gen_range(-(2 * n as i64)..=2 * n as i64);
        if rank.hom_tube(x, y) != rank.hom_tube_oracle(x, y) {
            failures.push(format!("oracle {x} {y}"));
        }
        if rank.ext1_cluster(x, y) != rank.ext1_cluster(y, x) {
            failures.push(format!("Ext symmetry {x} {y}"));
        }
        if rank.hom_tube(x, y) != rank.hom_tube(rank.tau(x, k), rank.tau(y, k)) {
            failures.push(format!("τ^{k} {x} {y}"));
        }
    }
    failures
}

/// Enumeration counts and agreement of both strategies.
pub fn rigid_check(rank: Rank, exec: Exec) -> (Vec<RigidObject>, Vec<String>) {
    let n = rank.n();
    let brute = enumerate_brute_force(rank, exec);
    let structured = enumerate_structured(rank, exec);
    let mut failures = Vec::new();
    let expected = n as u64 * catalan(n - 1);
    if brute.len() as u64 != expected {
        failures.push(format!("{} objects, expected {expected}", brute.len()));
    }
    if brute != structured {
        failures.push("brute-force and structured enumerations differ".into());
    }
    (brute, failures)
}

/// Shape of `Λ_T`: cluster-tilted type-A quiver plus a loop at a
/// connecting vertex, quadratic relations, Cartan agreement.
pub fn endo_check(t: &RigidObject, bundle: &EndoBundle) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let lambda = &bundle.lambda;
    let loops = lambda.quiver().loop_vertices();
    if loops != vec![0] {
        failures.push(format!("loops at {loops:?}"));
    }
    let loopless = lambda.quiver().without_loops();
    if loopless != *bundle.gamma_tilde.quiver() {
        failures.push("Λ minus its loop differs from the cluster-tilted quiver".into());
    }
    match cluster_tilted_a_violation(&loopless) {
        Some(why) => failures.push(format!("not cluster-tilted type A: {why}")),
        None => {
            if !connecting_vertices(&loopless)?.contains(&0) {
                failures.push("loop vertex is not connecting".into());
            }
        }
    }
    let relations_ok = lambda
        .relations()
        .iter()
        .all(|&(b, a)| lambda.composable(b, a));
    if !relations_ok {
        failures.push("non-composable relation".into());
    }
    let cartan = cartan_check(t, lambda)?;
    for e in cartan.mismatches() {
        failures.push(format!("Cartan ({},{}): {} paths vs Hom {}", e.i, e.j, e.paths, e.hom));
    }
    Ok(failures)
}

pub fn gorenstein_check(t: &RigidObject, lambda: &Presentation) -> Result<(Vec<String>, String)> {
    let g = lambda_gorenstein(t, lambda)?;
    let n = t.rank().n();
    let expected = if n == 2 { 0 } else { 1 };
    let mut failures = Vec::new();
    if g.dimension != GorensteinDimension::Exact(expected) {
        failures.push(format!("{}, expected dimension {expected}", g.dimension));
    }
    if g.bound.n_g > g.bound.arrow_count {
        failures.push(format!("n_G = {} exceeds the arrow count", g.bound.n_g));
    }
    if n >= 3 && g.bound.n_g > 1 {
        failures.push(format!("n_G = {}", g.bound.n_g));
    }
    let detail = match (&g.note, g.bound.n_g, g.bound.projective_not_injective) {
        (Some(note), _, _) => format!("{}, {note}", g.dimension),
        (None, 0, Some(v)) => format!("{}, n_G = 0, P_{} not injective", g.dimension, v + 1),
        (None, k, _) => format!("{}, n_G = {k}", g.dimension),
    };
    Ok((failures, detail))
}

/// Finite-type count, absence of bands and the structural string facts.
pub fn strings_check(t: &RigidObject, lambda: &Presentation) -> Result<(Vec<String>, usize)> {
    let rank = t.rank();
    let n = rank.n();
    let e = enumerate_strings(lambda, default_cap(lambda))?;
    let mut failures = Vec::new();
    if e.has_bands() {
        failures.push(format!("{} bands", e.bands.len()));
    }
    let expected = finite_type_count(n);
    if e.strings.len() != expected {
        failures.push(format!("{} strings, expected {expected}", e.strings.len()));
    }
    let s = t.summands();
    let mut d_free_pairs = BTreeSet::new();
    let mut d_free = 0;
    for w in &e.strings {
        let m = string_module(lambda, w)?;
        if Some(m.total_dim()) != w.len().map(|l| l + 1) || !m.respects_relations(lambda) {
            failures.push(format!("bad module for {}", w.display(lambda)));
        }
        let d = d_letter_count(lambda, w);
        if d > 1 {
            failures.push(format!("{} D-letters in {}", d, w.display(lambda)));
        }
        let closed = w.len().is_some_and(|l| l > 0) && w.start(lambda) == w.end(lambda);
        if closed && !contains_loop(lambda, w) {
            failures.push(format!("closed string without loop {}", w.display(lambda)));
        }
        if d == 0 {
            d_free += 1;
            let (a, b) = (w.start(lambda).unwrap_or(0), w.end(lambda).unwrap_or(0));
            let (lo, hi) = if s[a].ql() <= s[b].ql() { (a, b) } else { (b, a) };
            if !rank.in_wing(s[lo], s[hi]) {
                failures.push(format!("D-free {} joins unrelated summands", w.display(lambda)));
            }
            d_free_pairs.insert((lo, hi));
        }
    }
    let pairs = s
        .iter()
        .flat_map(|&x| s.iter().filter(move |&&y| rank.in_wing(x, y)))
        .count();
    if d_free != pairs || d_free_pairs.len() != pairs {
        failures.push(format!("{d_free} D-free strings for {pairs} wing pairs"));
    }
    if canonical_violations(&e.strings) > 0 {
        failures.push("canonical forms not idempotent".into());
    }
    Ok((failures, e.strings.len()))
}

fn canonical_violations(strings: &[StringWord]) -> usize {
    strings
        .iter()
        .filter(|w| w.canonical() != **w || w.inverse().canonical() != **w)
        .count()
}

pub fn hom_functor_check(t: &RigidObject, oracle: &OracleTable) -> Result<(Vec<String>, String)> {
    let hf = HomFunctor::new(t)?;
    let report = hf.verify(oracle);
    let mut failures: Vec<String> = report
        .failures()
        .take(5)
        .map(|r| match &r.error {
            Some(e) => format!("{}: {e}", r.x),
            None => format!("{}: predicted {:?}, oracle {:?}", r.x, r.predicted_dims, r.oracle_dims),
        })
        .collect();
    if !report.injective {
        failures.push(format!("σ collisions {:?}", report.collisions));
    }
    if !report.image_is_all_strings {
        failures.push(format!("image {} of {} strings", report.image_size, report.string_count));
    }
    if report.domain_count != report.expected_count {
        failures.push(format!("|F \\ add τT| = {}", report.domain_count));
    }
    if !report.vanishing_ok {
        let v: Vec<String> = report.vanishing_outside_f.iter().map(|x| x.to_string()).collect();
        failures.push(format!("vanishing outside F at {}", v.join(" ")));
    }
    for c in hf.structure_checks().into_iter().filter(|c| !c.ok) {
        failures.push(format!("{}: {}", c.name, c.failures.join(", ")));
    }
    let detail = format!(
        "{} = {} strings, {} objects checked",
        report.domain_count,
        report.string_count,
        report.records.len()
    );
    Ok((failures, detail))
}

/// Every (quiver, connecting vertex) class is realized by exactly `n`
/// objects forming one τ-orbit, and every object lands in some class.
pub fn converse_check(rank: Rank, objects: &[RigidObject]) -> Result<CheckResult> {
    let n = rank.n();
    let k = n - 1;
    if k > CLASS_VERTEX_LIMIT {
        return Ok(CheckResult {
            check: Check::Converse,
            rank: n,
            object: None,
            ok: true,
            skipped: true,
            detail: format!("skipped: class generator is limited to {CLASS_VERTEX_LIMIT} vertices"),
        });
    }
    let classes = cluster_tilted_a_classes(k)?;
    let mut failures = Vec::new();
    for (q, c) in &classes {
        let report = tau_orbit_count(q, *c)?;
        if report.count() != n || !report.single_orbit {
            failures.push(format!(
                "class with loop at {} realized {} times (single orbit: {})",
                c + 1,
                report.count(),
                report.single_orbit
            ));
        }
    }
    for t in objects {
        let (lq, lv) = loopless_quiver(t)?;
        let mut hit = false;
        for (q, c) in &classes {
            if find_isomorphism(&lq, q, &[(lv, *c)])?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit || !is_cluster_tilted_a(&lq) {
            failures.push(format!("{t} outside every class"));
        }
    }
    Ok(CheckResult::new(
        Check::Converse,
        n,
        None,
        failures,
        format!("{} classes, each realized by a τ-orbit of {n}", classes.len()),
    ))
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut results = Vec::new();
    let wants = |c: Check| cfg.checks.contains(&c);
    for &n in &cfg.ranks {
        let rank = Rank::new(n)?;
        let cap = cfg.ql_factor * n;
        if wants(Check::Oracle) {
            let sweep = oracle_sweep(rank, cap, cfg.exec);
            let failures = sweep
                .mismatches
                .iter()
                .take(5)
                .map(|(x, y, a, b)| format!("{x} -> {y}: closed {a}, oracle {b}"))
                .collect();
            results.push(CheckResult::new(
                Check::Oracle,
                n,
                None,
                failures,
                format!("{} pairs with ql <= {cap}", sweep.pairs),
            ));
        }
        if wants(Check::Sampled) {
            let failures = sampled_checks(rank, cfg.samples, cfg.seed);
            results.push(CheckResult::new(
                Check::Sampled,
                n,
                None,
                failures,
                format!("{} random pairs, seed {}", cfg.samples, cfg.seed),
            ));
        }
        let (objects, rigid_failures) = rigid_check(rank, cfg.exec);
        if wants(Check::Rigid) {
            results.push(CheckResult::new(
                Check::Rigid,
                n,
                None,
                rigid_failures,
                format!("{} maximal rigid objects", objects.len()),
            ));
        }
        let per_object = [Check::Endo, Check::Gentle, Check::Gorenstein, Check::Strings, Check::HomFunctor];
        if per_object.iter().any(|&c| wants(c)) {
            let oracle = wants(Check::HomFunctor).then(|| OracleTable::new(rank, cap, cfg.exec));
            let per_t = cfg.exec.map(&objects, |t| object_checks(t, cfg, oracle.as_ref()));
            for r in per_t {
                results.extend(r?);
            }
        }
        if wants(Check::Converse) {
            results.push(converse_check(rank, &objects)?);
        }
    }
    Ok(SuiteReport { ranks: cfg.ranks.clone(), seed: cfg.seed, results })
}

fn object_checks(
    t: &RigidObject,
    cfg: &SuiteConfig,
    oracle: Option<&OracleTable>,
) -> Result<Vec<CheckResult>> {
    let n = t.rank().n();
    let wants = |c: Check| cfg.checks.contains(&c);
    let bundle = EndoBundle::new(t)?;
    let lambda = &bundle.lambda;
    let mut out = Vec::new();
    if wants(Check::Endo) {
        let failures = endo_check(t, &bundle)?;
        let detail = format!(
            "{} arrows, {} relations",
            lambda.quiver().arrows().len(),
            lambda.relations().len()
        );
        out.push(CheckResult::new(Check::Endo, n, Some(t), failures, detail));
    }
    if wants(Check::Gentle) {
        let failures = gentle_violation(lambda).map(|v| v.to_string()).into_iter().collect();
        out.push(CheckResult::new(Check::Gentle, n, Some(t), failures, "gentle".into()));
    }
    if wants(Check::Gorenstein) {
        let (failures, detail) = gorenstein_check(t, lambda)?;
        out.push(CheckResult::new(Check::Gorenstein, n, Some(t), failures, detail));
    }
    if wants(Check::Strings) {
        let (failures, count) = strings_check(t, lambda)?;
        out.push(CheckResult::new(Check::Strings, n, Some(t), failures, format!("count={count}")));
    }
    if let (true, Some(oracle)) = (wants(Check::HomFunctor), oracle) {
        let (failures, detail) = hom_functor_check(t, oracle)?;
        out.push(CheckResult::new(Check::HomFunctor, n, Some(t), failures, detail));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&SuiteConfig::new(2..=4)).unwrap();
        let bad: Vec<_> = report.failures().collect();
        assert!(report.ok(), "{bad:#?}");
        let strings: Vec<_> =
            report.results.iter().filter(|r| r.check == Check::Strings && r.rank == 4).collect();
        assert_eq!(strings.len(), 20);
        assert!(strings.iter().all(|r| r.detail == "count=15"));
    }

    #[test]
    fn sampled_checks_are_deterministic() {
        let rank = Rank::new(4).unwrap();
        assert!(sampled_checks(rank, 50, 7).is_empty());
        let a = run_suite(&SuiteConfig { checks: [Check::Sampled].into(), ..SuiteConfig::new([3]) });
        let b = run_suite(&SuiteConfig { checks: [Check::Sampled].into(), ..SuiteConfig::new([3]) });
        assert_eq!(a.unwrap().results, b.unwrap().results);
    }
}
