//! Exhaustive isomorphism search for small quivers and presentations.

use super::{ArrowId, Presentation, Quiver, VertexId};
use crate::error::{Error, Result};

pub const ISO_VERTEX_LIMIT: usize = 12;

/// Per-vertex invariant used for pruning: (out-degree, in-degree, loops).
fn signature(q: &Quiver, v: VertexId) -> (usize, usize, usize) {
    let loops = q.arrows().iter().filter(|a| a.is_loop() && a.src == v).count();
    (q.out_arrows(v).count(), q.in_arrows(v).count(), loops)
}

fn check_size(q: &Quiver) -> Result<()> {
    if q.vertex_count() > ISO_VERTEX_LIMIT {
        return Err(Error::SizeLimit { size: q.vertex_count(), limit: ISO_VERTEX_LIMIT });
    }
    Ok(())
}

/// Every vertex bijection `perm` (vertex of `q1` to vertex of `q2`) preserving
/// arrow multiplicities and the pinned pairs, in lexicographic order; stops
/// as soon as `accept` returns true and returns that bijection.
fn search(
    q1: &Quiver,
    q2: &Quiver,
    pins: &[(VertexId, VertexId)],
    mut accept: impl FnMut(&[VertexId]) -> bool,
) -> Result<Option<Vec<VertexId>>> {
    check_size(q1)?;
    check_size(q2)?;
    let nv = q1.vertex_count();
    if nv != q2.vertex_count() || q1.arrows().len() != q2.arrows().len() {
        return Ok(None);
    }
    let c1 = q1.arrow_counts();
    let c2 = q2.arrow_counts();
    let s1: Vec<_> = (0..nv).map(|v| signature(q1, v)).collect();
    let s2: Vec<_> = (0..nv).map(|v| signature(q2, v)).collect();
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return Ok(None);
    }

    struct State<'a> {
        c1: &'a [Vec<usize>],
        c2: &'a [Vec<usize>],
        s1: &'a [(usize, usize, usize)],
        s2: &'a [(usize, usize, usize)],
        pins: &'a [(VertexId, VertexId)],
        perm: Vec<Option<VertexId>>,
        used: Vec<bool>,
    }

    fn go(st: &mut State<'_>, v: usize, accept: &mut dyn FnMut(&[VertexId]) -> bool) -> bool {
        let nv = st.perm.len();
        if v == nv {
            let perm: Vec<VertexId> = st.perm.iter().map(|p| p.expect("complete")).collect();
            return accept(&perm);
        }
        let pinned = st.pins.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b);
        for w in 0..nv {
            if st.used[w] || pinned.is_some_and(|b| b != w) || st.s1[v] != st.s2[w] {
                continue;
            }
            if st.pins.iter().any(|&(a, b)| b == w && a != v) {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let pu = st.perm[u].expect("assigned");
                st.c1[u][v] == st.c2[pu][w] && st.c1[v][u] == st.c2[w][pu]
            }) && st.c1[v][v] == st.c2[w][w];
            if !consistent {
                continue;
            }
            st.perm[v] = Some(w);
            st.used[w] = true;
            if go(st, v + 1, accept) {
                return true;
            }
            st.perm[v] = None;
            st.used[w] = false;
        }
        false
    }

    let mut st = State {
        c1: &c1,
        c2: &c2,
        s1: &s1,
        s2: &s2,
        pins,
        perm: vec![None; nv],
        used: vec![false; nv],
    };
    let mut found = None;
    let mut wrapped = |perm: &[VertexId]| {
        if accept(perm) {
            found = Some(perm.to_vec());
            true
        } else {
            false
        }
    };
    go(&mut st, 0, &mut wrapped);
    Ok(found)
}

/// A vertex bijection from `q1` to `q2` respecting arrow multiplicities and
/// sending each pinned `(v1, v2)` pair's first vertex to its second.
pub fn find_isomorphism(
    q1: &Quiver,
    q2: &Quiver,
    pins: &[(VertexId, VertexId)],
) -> Result<Option<Vec<VertexId>>> {
    search(q1, q2, pins, |_| true)
}

pub fn quivers_isomorphic(q1: &Quiver, q2: &Quiver) -> Result<bool> {
    Ok(find_isomorphism(q1, q2, &[])?.is_some())
}

/// Is there a vertex bijection together with an arrow bijection over it that
/// maps the relation set of `p1` onto that of `p2`?
pub fn presentations_isomorphic(p1: &Presentation, p2: &Presentation) -> Result<bool> {
    if p1.relations().len() != p2.relations().len() {
        return Ok(false);
    }
    let (q1, q2) = (p1.quiver(), p2.quiver());
    let found = search(q1, q2, &[], |perm| arrow_bijection(p1, p2, perm))?;
    Ok(found.is_some())
}

/// Backtracking over arrow images between corresponding vertex pairs.
fn arrow_bijection(p1: &Presentation, p2: &Presentation, perm: &[VertexId]) -> bool {
    let (q1, q2) = (p1.quiver(), p2.quiver());
    let na = q1.arrows().len();
    let mut image: Vec<Option<ArrowId>> = vec![None; na];
    let mut used = vec![false; na];

    fn go(
        p1: &Presentation,
        p2: &Presentation,
        perm: &[VertexId],
        a: usize,
        image: &mut Vec<Option<ArrowId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let (q1, q2) = (p1.quiver(), p2.quiver());
        if a == image.len() {
            return p1.relations().iter().all(|&(b, x)| {
                p2.is_relation(image[b].expect("mapped"), image[x].expect("mapped"))
            });
        }
        let arrow = q1.arrow(a);
        for b in 0..q2.arrows().len() {
            let target = q2.arrow(b);
            if used[b] || target.src != perm[arrow.src] || target.tgt != perm[arrow.tgt] {
                continue;
            }
            image[a] = Some(b);
            used[b] = true;
            if go(p1, p2, perm, a + 1, image, used) {
                return true;
            }
            image[a] = None;
            used[b] = false;
        }
        false
    }

    q1.arrows().len() == q2.arrows().len() && go(p1, p2, perm, 0, &mut image, &mut used)
}
