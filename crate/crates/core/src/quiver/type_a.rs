//! Recognition of cluster-tilted quivers of type A and their connecting
//! vertices.

use std::collections::BTreeSet;

use super::{ArrowId, Quiver, VertexId};
use crate::error::{Error, Result};

/// Chordless cycles of length at least 3 in the underlying simple graph of the
/// loopless part of `q`, each listed once as a vertex sequence starting at its
/// smallest vertex.
pub fn chordless_cycles(q: &Quiver) -> Vec<Vec<VertexId>> {
    let nv = q.vertex_count();
    let mut adj = vec![vec![false; nv]; nv];
    for a in q.arrows().iter().filter(|a| !a.is_loop()) {
        adj[a.src][a.tgt] = true;
        adj[a.tgt][a.src] = true;
    }

    fn extend(adj: &[Vec<bool>], path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let s = path[0];
        let last = *path.last().expect("path is never empty");
        for v in (s + 1)..adj.len() {
            if !adj[last][v] || path.contains(&v) {
                continue;
            }
            if path.iter().skip(1).take(path.len().saturating_sub(2)).any(|&p| adj[p][v]) {
                continue;
            }
            if path.len() >= 2 && adj[v][s] {
                if path[1] < v {
                    let mut cycle = path.clone();
                    cycle.push(v);
                    out.push(cycle);
                }
                continue;
            }
            path.push(v);
            extend(adj, path, out);
            path.pop();
        }
    }

    let mut out = Vec::new();
    for s in 0..nv {
        extend(&adj, &mut vec![s], &mut out);
    }
    out
}

/// Oriented 3-cycles, as arrow triples `(x: u -> v, y: v -> w, z: w -> u)`
/// listed once each.
pub fn three_cycles(q: &Quiver) -> Vec<[ArrowId; 3]> {
    let arrows = q.arrows();
    let mut out = Vec::new();
    for (x, ax) in arrows.iter().enumerate() {
        for (y, ay) in arrows.iter().enumerate() {
            if ay.src != ax.tgt || ax.is_loop() || ay.is_loop() {
                continue;
            }
            for (z, az) in arrows.iter().enumerate() {
                if az.src == ay.tgt && az.tgt == ax.src && !az.is_loop() && x < y && x < z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

fn is_connected(q: &Quiver) -> bool {
    let nv = q.vertex_count();
    if nv == 0 {
        return true;
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for a in q.arrows() {
            for (x, y) in [(a.src, a.tgt), (a.tgt, a.src)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The first failing condition, or `None` for a connected cluster-tilted
/// quiver of type A.
pub fn cluster_tilted_a_violation(q: &Quiver) -> Option<String> {
    if q.vertex_count() == 0 {
        return Some("empty quiver".into());
    }
    if let Some(a) = q.arrows().iter().find(|a| a.is_loop()) {
        return Some(format!("loop {} at vertex {}", a.name, a.src + 1));
    }
    if !is_connected(q) {
        return Some("quiver is not connected".into());
    }
    let counts = q.arrow_counts();
    for (u, row) in counts.iter().enumerate() {
        for v in u + 1..row.len() {
            if row[v] + counts[v][u] > 1 {
                return Some(format!("cycle of length 2 between {} and {}", u + 1, v + 1));
            }
        }
    }
    for cycle in chordless_cycles(q) {
        if cycle.len() != 3 {
            return Some(format!("minimal cycle of length {}", cycle.len()));
        }
        let (u, v, w) = (cycle[0], cycle[1], cycle[2]);
        let forward = counts[u][v] == 1 && counts[v][w] == 1 && counts[w][u] == 1;
        let backward = counts[v][u] == 1 && counts[w][v] == 1 && counts[u][w] == 1;
        if !forward && !backward {
            return Some(format!("non-oriented 3-cycle {} {} {}", u + 1, v + 1, w + 1));
        }
    }
    let triangles = three_cycles(q);
    for v in 0..q.vertex_count() {
        let incident: Vec<ArrowId> = (0..q.arrows().len())
            .filter(|&a| q.arrow(a).src == v || q.arrow(a).tgt == v)
            .collect();
        let through_v: Vec<&[ArrowId; 3]> = triangles
            .iter()
            .filter(|t| t.iter().any(|&a| q.arrow(a).src == v))
            .collect();
        let in_triangle = |a: ArrowId| through_v.iter().filter(|t| t.contains(&a)).count();
        let covered = incident.iter().filter(|&&a| in_triangle(a) > 0).count();
        let shared = incident.iter().any(|&a| in_triangle(a) > 1);
        let ok = match incident.len() {
            0..=2 => true,
            3 => through_v.len() == 1 && covered == 2,
            4 => through_v.len() == 2 && covered == 4 && !shared,
            _ => false,
        };
        if !ok {
            return Some(format!(
                "vertex {} of valency {} violates the 3-cycle splitting",
                v + 1,
                incident.len()
            ));
        }
    }
    None
}

pub fn is_cluster_tilted_a(q: &Quiver) -> bool {
    cluster_tilted_a_violation(q).is_none()
}

/// Vertices of valency one, or of valency two on a 3-cycle. The one-vertex
/// quiver has its vertex as connecting vertex.
pub fn connecting_vertices(q: &Quiver) -> Result<BTreeSet<VertexId>> {
    if let Some(why) = cluster_tilted_a_violation(q) {
        return Err(Error::NotClusterTiltedA(why));
    }
    if q.vertex_count() == 1 {
        return Ok(BTreeSet::from([0]));
    }
    let triangles = three_cycles(q);
    Ok((0..q.vertex_count())
        .filter(|&v| match q.valency(v) {
            1 => true,
            2 => triangles.iter().flatten().any(|&a| q.arrow(a).src == v),
            _ => false,
        })
        .collect())
}
