//! The tilted algebra `Γ_T`, its cluster-tilted completion `Γ̃_T` and the
//! endomorphism algebra `Λ_T` of a maximal rigid object, plus the converse
//! search from quivers back to objects.
//!
//! Vertex `i` is summand `i` of the object (top summand = vertex 0). A map
//! `T_j -> T_i` gives an arrow `i -> j`, so paths `i -> j` pair with
//! `Hom_C(T_j, T_i)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quiver::{
    connecting_vertices, find_isomorphism, gorenstein_bound, is_cluster_tilted_a, ArrowKind,
    GorensteinBound, GorensteinDimension, Presentation, PresentationJson, Quiver, VertexId,
};
use crate::rigid::{enumerate_maximal_rigid, subwing_decomposition, RigidObject};
use crate::tube::Rank;

/// Largest quiver accepted by the converse search.
pub const REALIZE_VERTEX_LIMIT: usize = 8;
/// Largest vertex count for the exhaustive quiver-class generator.
pub const CLASS_VERTEX_LIMIT: usize = 5;

fn t_name(i: VertexId, j: VertexId) -> String {
    format!("a{}_{}", i + 1, j + 1)
}

fn d_name(i: VertexId, j: VertexId) -> String {
    format!("b{}_{}", i + 1, j + 1)
}

pub const LOOP_NAME: &str = "w";

/// Arrows from the subwing triples: a left sub-summit `T_j` of `T_i` gives
/// `i -> j`, a right sub-summit `T_k` gives `k -> i`, and a non-degenerate
/// triple adds the zero relation `k -> i -> j`.
pub fn tilted_algebra(t: &RigidObject) -> Result<Presentation> {
    let triples = subwing_decomposition(t)?;
    let index = |x| t.index_of(x).expect("triple members are summands");
    let mut q = Quiver::new(t.len());
    let mut relations = Vec::new();
    for triple in &triples {
        let i = index(triple.top);
        let left = triple.left.map(|y| {
            let j = index(y);
            q.add_arrow(t_name(i, j), i, j, Some(ArrowKind::T))
        });
        let right = triple.right.map(|z| {
            let k = index(z);
            q.add_arrow(t_name(k, i), k, i, Some(ArrowKind::T))
        });
        if let (Some(l), Some(r)) = (left.transpose()?, right.transpose()?) {
            relations.push((l, r));
        }
    }
    Presentation::new(q, relations)
}

/// Closes every relation path `βα` with an arrow `γ` from its end to its
/// start; the relations become all three compositions around each 3-cycle.
pub fn cluster_tilted_completion(g: &Presentation) -> Presentation {
    let mut q = g.quiver().clone();
    let mut relations = Vec::new();
    for &(beta, alpha) in g.relations() {
        let start = q.arrow(alpha).src;
        let end = q.arrow(beta).tgt;
        let kind = q.arrow(alpha).kind.map(|_| ArrowKind::D);
        let gamma = q
            .add_arrow(d_name(end, start), end, start, kind)
            .expect("one completion arrow per relation path");
        relations.extend([(beta, alpha), (gamma, beta), (alpha, gamma)]);
    }
    Presentation::new(q, relations).expect("3-cycle compositions are paths")
}

/// `Λ_T`: the cluster-tilted completion plus a loop `ω` at the top vertex with
/// `ω² = 0`.
pub fn endomorphism_algebra(t: &RigidObject) -> Result<Presentation> {
    Ok(EndoBundle::new(t)?.lambda)
}

/// `Γ_T`, `Γ̃_T` and `Λ_T` together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoBundle {
    pub gamma: Presentation,
    pub gamma_tilde: Presentation,
    pub lambda: Presentation,
}

impl EndoBundle {
    pub fn new(t: &RigidObject) -> Result<Self> {
        let gamma = tilted_algebra(t)?;
        let gamma_tilde = cluster_tilted_completion(&gamma);
        let mut q = gamma_tilde.quiver().clone();
        let omega = q.add_arrow(LOOP_NAME, 0, 0, Some(ArrowKind::Loop))?;
        let relations = gamma_tilde.relations().iter().copied().chain([(omega, omega)]);
        let lambda = Presentation::new(q, relations)?;
        Ok(EndoBundle { gamma, gamma_tilde, lambda })
    }

    pub fn to_json(&self) -> EndoBundleJson {
        EndoBundleJson {
            gamma: self.gamma.to_json(),
            gamma_tilde: self.gamma_tilde.to_json(),
            lambda: self.lambda.to_json(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EndoBundleJson {
    pub gamma: PresentationJson,
    pub gamma_tilde: PresentationJson,
    pub lambda: PresentationJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanEntry {
    pub i: usize,
    pub j: usize,
    /// Relation-free paths `i -> j`.
    pub paths: u64,
    /// `dim Hom_C(T_j, T_i)`.
    pub hom: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanReport {
    pub entries: Vec<CartanEntry>,
    pub total_paths: u64,
    pub total_hom: u64,
}

impl CartanReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.paths == e.hom) && self.total_paths == self.total_hom
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CartanEntry> {
        self.entries.iter().filter(|e| e.paths != e.hom)
    }
}

/// Compares path counts of `p` with cluster Hom dimensions between summands.
pub fn cartan_check(t: &RigidObject, p: &Presentation) -> Result<CartanReport> {
    let rank = t.rank();
    let m = p.count_paths()?;
    let s = t.summands();
    if m.len() != s.len() {
        return Err(Error::InvalidPresentation(format!(
            "{} vertices for {} summands",
            m.len(),
            s.len()
        )));
    }
    let mut entries = Vec::with_capacity(s.len() * s.len());
    for i in 0..s.len() {
        for j in 0..s.len() {
            entries.push(CartanEntry {
                i: i + 1,
                j: j + 1,
                paths: m[i][j],
                hom: rank.hom_cluster(s[j], s[i]).total() as u64,
            });
        }
    }
    let total_paths = entries.iter().map(|e| e.paths).sum();
    let total_hom = entries.iter().map(|e| e.hom).sum();
    Ok(CartanReport { entries, total_paths, total_hom })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaGorenstein {
    pub bound: GorensteinBound,
    pub dimension: GorensteinDimension,
    pub note: Option<String>,
}

/// Geiß-Reiten bound on `Λ_T`, resolved at rank 2 where `Λ_T ≅ k[x]/(x²)` is
/// self-injective.
pub fn lambda_gorenstein(t: &RigidObject, lambda: &Presentation) -> Result<LambdaGorenstein> {
    let bound = gorenstein_bound(lambda)?;
    let dual_numbers = lambda.quiver().vertex_count() == 1
        && lambda.quiver().arrows().len() == 1
        && lambda.relations().len() == 1;
    if t.rank().n() == 2 && dual_numbers && bound.n_g == 0 {
        return Ok(LambdaGorenstein {
            dimension: GorensteinDimension::Exact(0),
            note: Some("self-injective k[x]/(x²)".into()),
            bound,
        });
    }
    Ok(LambdaGorenstein { dimension: bound.dimension, note: None, bound })
}

/// The quiver of `Λ_T` with the loop removed, and the loop vertex.
pub fn loopless_quiver(t: &RigidObject) -> Result<(Quiver, VertexId)> {
    let lambda = endomorphism_algebra(t)?;
    let loops = lambda.quiver().loop_vertices();
    Ok((lambda.quiver().without_loops(), loops[0]))
}

fn check_realizable(q: &Quiver, c: VertexId) -> Result<Rank> {
    if q.vertex_count() > REALIZE_VERTEX_LIMIT {
        return Err(Error::SizeLimit { size: q.vertex_count(), limit: REALIZE_VERTEX_LIMIT });
    }
    if !connecting_vertices(q)?.contains(&c) {
        return Err(Error::NotConnecting(c + 1));
    }
    Rank::new(q.vertex_count() + 1)
}

fn realizes(t: &RigidObject, q: &Quiver, c: VertexId) -> bool {
    loopless_quiver(t)
        .and_then(|(lq, loop_vertex)| find_isomorphism(q, &lq, &[(c, loop_vertex)]))
        .is_ok_and(|iso| iso.is_some())
}

/// The first maximal rigid object (in enumeration order) whose endomorphism
/// quiver is `q` with a loop added at `c`.
pub fn realize_quiver(q: &Quiver, c: VertexId) -> Result<Option<RigidObject>> {
    let rank = check_realizable(q, c)?;
    let candidates = enumerate_maximal_rigid(rank);
    Ok(Exec::default().find_first(&candidates, |t| realizes(t, q, c).then(|| t.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauOrbitReport {
    pub realizers: Vec<RigidObject>,
    /// The realizers are exactly `τ^k R`, `k = 0..n-1`, for one of them `R`.
    pub single_orbit: bool,
}

impl TauOrbitReport {
    pub fn count(&self) -> usize {
        self.realizers.len()
    }
}

/// All maximal rigid objects realizing `(q, c)`.
pub fn tau_orbit_count(q: &Quiver, c: VertexId) -> Result<TauOrbitReport> {
    let rank = check_realizable(q, c)?;
    let candidates = enumerate_maximal_rigid(rank);
    let realizers: Vec<RigidObject> = Exec::default()
        .map(&candidates, |t| realizes(t, q, c).then(|| t.clone()))
        .into_iter()
        .flatten()
        .collect();
    let single_orbit = match realizers.first() {
        None => false,
        Some(r) => {
            let orbit: BTreeSet<RigidObject> = (0..rank.n() as i64).map(|k| r.tau(k)).collect();
            let found: BTreeSet<RigidObject> = realizers.iter().cloned().collect();
            orbit.len() == rank.n() && orbit == found
        }
    };
    Ok(TauOrbitReport { realizers, single_orbit })
}

/// Representatives of the isomorphism classes of pairs (connected
/// cluster-tilted quiver of type `A_k`, connecting vertex), found by running
/// the recognizer over every orientation of every simple graph on `k`
/// vertices.
pub fn cluster_tilted_a_classes(k: usize) -> Result<Vec<(Quiver, VertexId)>> {
    if k == 0 || k > CLASS_VERTEX_LIMIT {
        return Err(Error::SizeLimit { size: k, limit: CLASS_VERTEX_LIMIT });
    }
    let pairs: Vec<(usize, usize)> =
        (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut classes: Vec<(Quiver, VertexId)> = Vec::new();
    for code in 0..total {
        let mut edges = Vec::new();
        let mut rest = code;
        for &(u, v) in &pairs {
            match rest % 3 {
                1 => edges.push((u, v)),
                2 => edges.push((v, u)),
                _ => {}
            }
            rest /= 3;
        }
        if edges.len() + 1 < k {
            continue;
        }
        let q = Quiver::from_edges(k, &edges)?;
        if !is_cluster_tilted_a(&q) {
            continue;
        }
        for c in connecting_vertices(&q)? {
            let mut known = false;
            for (rep, rc) in &classes {
                if find_isomorphism(&q, rep, &[(c, *rc)])?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push((q.clone(), c));
            }
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{is_gentle, presentations_isomorphic};
    use crate::rigid::catalan;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    fn obj(n: usize, s: &[(i64, usize)]) -> RigidObject {
        let rank = r(n);
        RigidObject::new(rank, s.iter().map(|&(a, b)| rank.at(a, b)).collect()).unwrap()
    }

    #[test]
    fn rank_three_ladder() {
        let t = obj(3, &[(1, 2), (1, 1)]);
        let b = EndoBundle::new(&t).unwrap();
        assert_eq!(b.gamma.quiver().arrows().len(), 1);
        assert!(b.gamma.relations().is_empty());
        assert_eq!(b.gamma_tilde, b.gamma);
        let m = b.lambda.count_paths().unwrap();
        assert_eq!(m, vec![vec![2, 2], vec![0, 1]]);
        assert_eq!(b.lambda.dimension().unwrap(), 5);
        let c = cartan_check(&t, &b.lambda).unwrap();
        assert!(c.ok());
        assert_eq!(c.total_hom, 5);
    }

    #[test]
    fn rank_two_is_dual_numbers() {
        let t = obj(2, &[(1, 1)]);
        let l = endomorphism_algebra(&t).unwrap();
        assert_eq!(l.count_paths().unwrap(), vec![vec![2]]);
        assert!(cartan_check(&t, &l).unwrap().ok());
        let g = lambda_gorenstein(&t, &l).unwrap();
        assert_eq!(g.dimension, GorensteinDimension::Exact(0));
        assert!(g.note.is_some());
    }

    #[test]
    fn rank_four_three_cycle() {
        let t = obj(4, &[(1, 3), (1, 1), (3, 1)]);
        let b = EndoBundle::new(&t).unwrap();
        assert_eq!(b.gamma.quiver().arrows().len(), 2);
        assert_eq!(b.gamma.relations().len(), 1);
        assert_eq!(b.gamma_tilde.quiver().arrows().len(), 3);
        assert_eq!(b.gamma_tilde.relations().len(), 3);
        assert!(is_cluster_tilted_a(b.gamma_tilde.quiver()));
        assert!(cartan_check(&t, &b.lambda).unwrap().ok());
        let g = lambda_gorenstein(&t, &b.lambda).unwrap();
        assert_eq!(g.bound.n_g, 0);
        assert_eq!(g.dimension, GorensteinDimension::Exact(1));
    }

    #[test]
    fn ladder_gives_linear_quiver() {
        for n in 3..=6 {
            let rank = r(n);
            let t = RigidObject::new(rank, (1..n).map(|b| rank.at(1, b)).collect()).unwrap();
            let g = tilted_algebra(&t).unwrap();
            let edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            let linear = Presentation::without_relations(Quiver::from_edges(n - 1, &edges).unwrap());
            assert!(presentations_isomorphic(&g, &linear).unwrap());
        }
    }

    #[test]
    fn completion_of_a_single_relation() {
        let q = Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let g = Presentation::new(q, [(1, 0)]).unwrap();
        let c = cluster_tilted_completion(&g);
        let new = c.quiver().arrow(2);
        assert_eq!((new.src, new.tgt), (2, 0));
        assert_eq!(c.relations().len(), 3);
        assert!(is_gentle(&c));
        let free = Presentation::without_relations(Quiver::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(cluster_tilted_completion(&free), free);
    }

    #[test]
    fn every_small_object_passes() {
        for n in 2..=5 {
            for t in enumerate_maximal_rigid(r(n)) {
                let l = endomorphism_algebra(&t).unwrap();
                assert!(is_gentle(&l), "{t}");
                assert!(cartan_check(&t, &l).unwrap().ok(), "{t}");
                let (q, c) = loopless_quiver(&t).unwrap();
                assert!(connecting_vertices(&q).unwrap().contains(&c), "{t}");
            }
        }
    }

    #[test]
    fn converse_examples() {
        let a2 = Quiver::from_edges(2, &[(0, 1)]).unwrap();
        let t = realize_quiver(&a2, 0).unwrap().unwrap();
        assert_eq!(t.rank().n(), 3);
        assert!(t.summands().iter().all(|x| x.orbit() == t.top().orbit()));
        let report = tau_orbit_count(&a2, 0).unwrap();
        assert_eq!(report.count(), 3);
        assert!(report.single_orbit);

        let c3 = Quiver::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = realize_quiver(&c3, 1).unwrap().unwrap();
        let triples = subwing_decomposition(&t).unwrap();
        assert_eq!(triples.iter().filter(|x| !x.is_degenerate()).count(), 1);
        assert_eq!(tau_orbit_count(&c3, 1).unwrap().count(), 4);

        assert_eq!(tau_orbit_count(&Quiver::new(1), 0).unwrap().count(), 2);
        assert!(matches!(realize_quiver(&Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), 1),
            Err(Error::NotConnecting(2))));
    }

    #[test]
    fn class_counts_are_catalan() {
        for k in 1..=4 {
            assert_eq!(cluster_tilted_a_classes(k).unwrap().len() as u64, catalan(k), "k={k}");
        }
    }
}
