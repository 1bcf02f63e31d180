//! Finite quivers with quadratic monomial (zero) relations.
//!
//! Paths are written right to left: the relation pair `(β, α)` means the path
//! `βα` (first `α`, then `β`) is zero, so `src(β) == tgt(α)`.

mod gentle;
mod iso;
mod type_a;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gentle::{
    gentle_violation, gorenstein_bound, is_gentle, is_special_biserial,
    special_biserial_violation, GorensteinBound, GorensteinDimension, Violation,
};
pub use iso::{find_isomorphism, presentations_isomorphic, quivers_isomorphic, ISO_VERTEX_LIMIT};
pub use type_a::{
    chordless_cycles, cluster_tilted_a_violation, connecting_vertices, is_cluster_tilted_a,
    three_cycles,
};

pub type VertexId = usize;
pub type ArrowId = usize;

/// Where an arrow of an endomorphism quiver comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrowKind {
    /// Irreducible map inside the tube.
    T,
    /// Irreducible map from the dual part of a cluster Hom-space.
    D,
    /// The D-endomorphism of the top summand.
    #[serde(rename = "loop")]
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
    pub kind: Option<ArrowKind>,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

/// Vertices are `0..vertex_count`; they print 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize) -> Self {
        Quiver { vertex_count, arrows: Vec::new() }
    }

    /// Quiver from `(src, tgt)` pairs with generated names `x1, x2, ...`.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut q = Quiver::new(vertex_count);
        for (i, &(s, t)) in edges.iter().enumerate() {
            q.add_arrow(format!("x{}", i + 1), s, t, None)?;
        }
        Ok(q)
    }

    pub fn add_arrow(
        &mut self,
        name: impl Into<String>,
        src: VertexId,
        tgt: VertexId,
        kind: Option<ArrowKind>,
    ) -> Result<ArrowId> {
        let name = name.into();
        if src >= self.vertex_count || tgt >= self.vertex_count {
            return Err(Error::InvalidPresentation(format!(
                "arrow {name}: endpoint outside 0..{}",
                self.vertex_count
            )));
        }
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::InvalidPresentation(format!("duplicate arrow id {name}")));
        }
        self.arrows.push(Arrow { name, src, tgt, kind });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].src == v)
    }

    pub fn in_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].tgt == v)
    }

    /// Number of arrow ends at `v`; a loop counts twice.
    pub fn valency(&self, v: VertexId) -> usize {
        self.arrows
            .iter()
            .map(|a| usize::from(a.src == v) + usize::from(a.tgt == v))
            .sum()
    }

    /// The same quiver with every loop removed.
    pub fn without_loops(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self.arrows.iter().filter(|a| !a.is_loop()).cloned().collect(),
        }
    }

    pub fn loop_vertices(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> =
            self.arrows.iter().filter(|a| a.is_loop()).map(|a| a.src).collect();
        set.into_iter().collect()
    }

    /// `counts[u][v]` = number of arrows `u -> v`.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let mut c = vec![vec![0; self.vertex_count]; self.vertex_count];
        for a in &self.arrows {
            c[a.src][a.tgt] += 1;
        }
        c
    }
}

/// A quiver with a set of length-2 zero relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: BTreeSet<(ArrowId, ArrowId)>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: impl IntoIterator<Item = (ArrowId, ArrowId)>) -> Result<Self> {
        let relations: BTreeSet<_> = relations.into_iter().collect();
        for &(beta, alpha) in &relations {
            let arrows = quiver.arrows();
            if beta >= arrows.len() || alpha >= arrows.len() {
                return Err(Error::InvalidPresentation(format!(
                    "relation ({beta}, {alpha}) names a missing arrow"
                )));
            }
            if arrows[beta].src != arrows[alpha].tgt {
                return Err(Error::InvalidPresentation(format!(
                    "relation {}{} is not a path",
                    arrows[beta].name, arrows[alpha].name
                )));
            }
        }
        Ok(Presentation { quiver, relations })
    }

    pub fn without_relations(quiver: Quiver) -> Self {
        Presentation { quiver, relations: BTreeSet::new() }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &BTreeSet<(ArrowId, ArrowId)> {
        &self.relations
    }

    /// Is `βα` (first `α`, then `β`) a zero relation?
    pub fn is_relation(&self, beta: ArrowId, alpha: ArrowId) -> bool {
        self.relations.contains(&(beta, alpha))
    }

    pub fn composable(&self, beta: ArrowId, alpha: ArrowId) -> bool {
        self.quiver.arrow(beta).src == self.quiver.arrow(alpha).tgt
    }

    /// Number of relation-free paths between every ordered pair of vertices,
    /// trivial paths included. `m[i][j]` counts paths from `i` to `j`.
    pub fn count_paths(&self) -> Result<Vec<Vec<u64>>> {
        let q = &self.quiver;
        let nv = q.vertex_count();
        let na = q.arrows().len();
        // from_arrow[a][j]: relation-free paths whose first arrow is a, ending at j
        let mut from_arrow: Vec<Option<Vec<u64>>> = vec![None; na];
        let mut on_stack = vec![false; na];

        fn visit(
            p: &Presentation,
            a: ArrowId,
            memo: &mut Vec<Option<Vec<u64>>>,
            on_stack: &mut Vec<bool>,
        ) -> Result<Vec<u64>> {
            if let Some(v) = &memo[a] {
                return Ok(v.clone());
            }
            if on_stack[a] {
                return Err(Error::InfinitePaths { arrow: p.quiver.arrow(a).name.clone() });
            }
            on_stack[a] = true;
            let q = &p.quiver;
            let mut counts = vec![0u64; q.vertex_count()];
            counts[q.arrow(a).tgt] += 1;
            for b in q.out_arrows(q.arrow(a).tgt).collect::<Vec<_>>() {
                if !p.is_relation(b, a) {
                    let tail = visit(p, b, memo, on_stack)?;
                    counts.iter_mut().zip(tail).for_each(|(c, t)| *c += t);
                }
            }
            on_stack[a] = false;
            memo[a] = Some(counts.clone());
            Ok(counts)
        }

        let mut m = vec![vec![0u64; nv]; nv];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for a in 0..na {
            let counts = visit(self, a, &mut from_arrow, &mut on_stack)?;
            let s = q.arrow(a).src;
            for (j, c) in counts.into_iter().enumerate() {
                m[s][j] += c;
            }
        }
        Ok(m)
    }

    /// Total dimension of `kQ/I` (sum of all path counts).
    pub fn dimension(&self) -> Result<u64> {
        Ok(self.count_paths()?.iter().flatten().sum())
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson::from(self)
    }

    /// Graphviz rendering: solid edges for T-arrows, bold for D-arrows and
    /// loops, dashed overlay edges from start to end of each relation path.
    pub fn to_dot(&self, name: &str) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=LR;");
        for v in 0..q.vertex_count() {
            let _ = writeln!(s, "  v{} [label=\"{}\"];", v + 1, v + 1);
        }
        for a in q.arrows() {
            let style = match a.kind {
                Some(ArrowKind::D) | Some(ArrowKind::Loop) => "bold",
                _ => "solid",
            };
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{}\", style={style}];",
                a.src + 1,
                a.tgt + 1,
                a.name
            );
        }
        for &(beta, alpha) in &self.relations {
            let (b, a) = (q.arrow(beta), q.arrow(alpha));
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{}{}=0\", style=dashed, arrowhead=none, constraint=false];",
                a.src + 1,
                b.tgt + 1,
                b.name,
                a.name
            );
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<ArrowKind>,
}

/// `{"vertices": [...], "arrows": [{"id","src","tgt","kind"}], "relations": [["β","α"], ...]}`
/// with 1-based vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub vertices: Vec<usize>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<(String, String)>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        let q = p.quiver();
        PresentationJson {
            vertices: (1..=q.vertex_count()).collect(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowJson {
                    id: a.name.clone(),
                    src: a.src + 1,
                    tgt: a.tgt + 1,
                    kind: a.kind,
                })
                .collect(),
            relations: p
                .relations()
                .iter()
                .map(|&(b, a)| (q.arrow(b).name.clone(), q.arrow(a).name.clone()))
                .collect(),
        }
    }
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        let index: BTreeMap<usize, usize> =
            j.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if index.len() != j.vertices.len() {
            return Err(Error::InvalidPresentation("duplicate vertex id".into()));
        }
        let lookup = |v: usize| {
            index
                .get(&v)
                .copied()
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown vertex {v}")))
        };
        let mut q = Quiver::new(j.vertices.len());
        for a in &j.arrows {
            q.add_arrow(a.id.clone(), lookup(a.src)?, lookup(a.tgt)?, a.kind)?;
        }
        let arrow = |name: &str| {
            q.arrow_by_name(name)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow {name}")))
        };
        let rels = j
            .relations
            .iter()
            .map(|(b, a)| Ok((arrow(b)?, arrow(a)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(q, rels)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `k[x]/(x²)`.
    pub fn dual_numbers() -> Presentation {
        let mut q = Quiver::new(1);
        let w = q.add_arrow("w", 0, 0, Some(ArrowKind::Loop)).unwrap();
        Presentation::new(q, [(w, w)]).unwrap()
    }

    /// The endomorphism algebra for n = 3: loop at 1, arrow 1 -> 2, `ω² = 0`.
    pub fn lambda_n3() -> Presentation {
        let mut q = Quiver::new(2);
        let w = q.add_arrow("w", 0, 0, Some(ArrowKind::Loop)).unwrap();
        q.add_arrow("a", 0, 1, Some(ArrowKind::T)).unwrap();
        Presentation::new(q, [(w, w)]).unwrap()
    }

    /// Linearly oriented `A_k`, no relations.
    pub fn linear(k: usize) -> Presentation {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Presentation::without_relations(Quiver::from_edges(k, &edges).unwrap())
    }

    pub fn kronecker() -> Presentation {
        Presentation::without_relations(Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn path_counts() {
        assert_eq!(dual_numbers().count_paths().unwrap(), vec![vec![2]]);
        let m = lambda_n3().count_paths().unwrap();
        assert_eq!(m, vec![vec![2, 2], vec![0, 1]]);
        assert_eq!(lambda_n3().dimension().unwrap(), 5);
        let bare = Presentation::without_relations(Quiver::new(4));
        let id: Vec<Vec<u64>> = (0..4).map(|i| (0..4).map(|j| u64::from(i == j)).collect()).collect();
        assert_eq!(bare.count_paths().unwrap(), id);
    }

    #[test]
    fn infinite_path_count_is_reported() {
        let mut q = Quiver::new(1);
        q.add_arrow("w", 0, 0, None).unwrap();
        let p = Presentation::without_relations(q);
        assert_eq!(p.count_paths(), Err(Error::InfinitePaths { arrow: "w".into() }));
    }

    fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn acyclic_counts_match_adjacency_powers() {
        let q = Quiver::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (0, 4), (1, 3)])
            .unwrap();
        let adj: Vec<Vec<u64>> =
            q.arrow_counts().into_iter().map(|r| r.into_iter().map(|c| c as u64).collect()).collect();
        let mut total: Vec<Vec<u64>> =
            (0..5).map(|i| (0..5).map(|j| u64::from(i == j)).collect()).collect();
        let mut power = total.clone();
        for _ in 0..5 {
            power = mat_mul(&power, &adj);
            for i in 0..5 {
                for j in 0..5 {
                    total[i][j] += power[i][j];
                }
            }
        }
        assert_eq!(Presentation::without_relations(q).count_paths().unwrap(), total);
    }

    #[test]
    fn relations_must_be_paths() {
        let q = Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Presentation::new(q.clone(), [(1, 0)]).is_ok());
        assert!(Presentation::new(q.clone(), [(0, 1)]).is_err());
        assert!(Presentation::new(q, [(0, 7)]).is_err());
        let mut q = Quiver::new(2);
        q.add_arrow("a", 0, 1, None).unwrap();
        assert!(q.add_arrow("a", 1, 0, None).is_err());
        assert!(q.add_arrow("b", 0, 2, None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = lambda_n3();
        let j = p.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"vertices":[1,2],"arrows":[{"id":"w","src":1,"tgt":1,"kind":"loop"},{"id":"a","src":1,"tgt":2,"kind":"T"}],"relations":[["w","w"]]}"#
        );
        let back: PresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Presentation::try_from(back).unwrap(), p);
    }

    #[test]
    fn dot_styles() {
        let dot = lambda_n3().to_dot("L");
        assert!(dot.contains("v1 -> v1 [label=\"w\", style=bold]"));
        assert!(dot.contains("v1 -> v2 [label=\"a\", style=solid]"));
        assert!(dot.contains("style=dashed"));
    }
}
