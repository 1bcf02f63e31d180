//! Special biserial and gentle conditions, and the Geiß-Reiten bound.

use std::fmt;

use serde::Serialize;

use super::{ArrowId, Presentation, VertexId};
use crate::error::{Error, Result};

/// First condition that fails, with the offending vertex or arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// More than two arrows start at a vertex.
    OutDegree { vertex: VertexId, count: usize },
    /// More than two arrows end at a vertex.
    InDegree { vertex: VertexId, count: usize },
    /// Several arrows `α` with `βα ∉ I` (`before`) or `γ` with `γβ ∉ I`.
    Continuations { arrow: String, before: bool, count: usize },
    /// Several arrows `α` with `βα ∈ I` (`before`) or `γ` with `γβ ∈ I`.
    Relations { arrow: String, before: bool, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |before: bool| if before { "into" } else { "out of" };
        match self {
            Violation::OutDegree { vertex, count } => {
                write!(f, "{count} arrows start at vertex {}", vertex + 1)
            }
            Violation::InDegree { vertex, count } => {
                write!(f, "{count} arrows end at vertex {}", vertex + 1)
            }
            Violation::Continuations { arrow, before, count } => write!(
                f,
                "{count} relation-free compositions {} arrow {arrow}",
                side(*before)
            ),
            Violation::Relations { arrow, before, count } => {
                write!(f, "{count} zero relations {} arrow {arrow}", side(*before))
            }
        }
    }
}

/// Arrows `α` ending at `s(β)`, split into (not in `I`, in `I`) counts for `βα`.
fn before_counts(p: &Presentation, beta: ArrowId) -> (usize, usize) {
    let q = p.quiver();
    let (mut free, mut zero) = (0, 0);
    for alpha in q.in_arrows(q.arrow(beta).src) {
        if p.is_relation(beta, alpha) {
            zero += 1;
        } else {
            free += 1;
        }
    }
    (free, zero)
}

/// Arrows `γ` starting at `e(β)`, split into counts for `γβ`.
fn after_counts(p: &Presentation, beta: ArrowId) -> (usize, usize) {
    let q = p.quiver();
    let (mut free, mut zero) = (0, 0);
    for gamma in q.out_arrows(q.arrow(beta).tgt) {
        if p.is_relation(gamma, beta) {
            zero += 1;
        } else {
            free += 1;
        }
    }
    (free, zero)
}

pub fn special_biserial_violation(p: &Presentation) -> Option<Violation> {
    let q = p.quiver();
    for v in 0..q.vertex_count() {
        let out = q.out_arrows(v).count();
        if out > 2 {
            return Some(Violation::OutDegree { vertex: v, count: out });
        }
        let inc = q.in_arrows(v).count();
        if inc > 2 {
            return Some(Violation::InDegree { vertex: v, count: inc });
        }
    }
    for (beta, a) in q.arrows().iter().enumerate() {
        let (free, _) = before_counts(p, beta);
        if free > 1 {
            return Some(Violation::Continuations { arrow: a.name.clone(), before: true, count: free });
        }
        let (free, _) = after_counts(p, beta);
        if free > 1 {
            return Some(Violation::Continuations { arrow: a.name.clone(), before: false, count: free });
        }
    }
    None
}

/// Relations are quadratic by construction, so gentleness adds only the dual
/// uniqueness condition on zero compositions.
pub fn gentle_violation(p: &Presentation) -> Option<Violation> {
    if let Some(v) = special_biserial_violation(p) {
        return Some(v);
    }
    for (beta, a) in p.quiver().arrows().iter().enumerate() {
        let (_, zero) = before_counts(p, beta);
        if zero > 1 {
            return Some(Violation::Relations { arrow: a.name.clone(), before: true, count: zero });
        }
        let (_, zero) = after_counts(p, beta);
        if zero > 1 {
            return Some(Violation::Relations { arrow: a.name.clone(), before: false, count: zero });
        }
    }
    None
}

pub fn is_special_biserial(p: &Presentation) -> bool {
    special_biserial_violation(p).is_none()
}

pub fn is_gentle(p: &Presentation) -> bool {
    gentle_violation(p).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GorensteinDimension {
    Exact(usize),
    AtMostOne,
}

impl fmt::Display for GorensteinDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GorensteinDimension::Exact(d) => write!(f, "dimension {d}"),
            GorensteinDimension::AtMostOne => f.write_str("dimension ≤ 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinBound {
    /// Supremum of lengths of critical paths starting with a gentle arrow.
    pub n_g: usize,
    pub gentle_arrows: Vec<String>,
    /// A longest critical path realizing `n_g`, first arrow first.
    pub witness: Vec<String>,
    pub arrow_count: usize,
    /// Some indecomposable projective has a dimension vector matching no
    /// indecomposable injective, so the algebra is not self-injective.
    pub projective_not_injective: Option<VertexId>,
    pub dimension: GorensteinDimension,
}

/// Geiß-Reiten: dimension `n_G` when positive, otherwise at most one. When
/// `n_G = 0` and some projective is visibly not injective, the algebra is not
/// self-injective and the dimension is exactly one.
pub fn gorenstein_bound(p: &Presentation) -> Result<GorensteinBound> {
    if let Some(v) = gentle_violation(p) {
        return Err(Error::NotGentle(v.to_string()));
    }
    let q = p.quiver();
    let na = q.arrows().len();
    let gentle: Vec<ArrowId> = (0..na).filter(|&a| before_counts(p, a).1 == 0).collect();

    // In a gentle algebra each arrow has at most one zero continuation, so a
    // critical path is determined by its first arrow; walk until it stops or
    // revisits an arrow (the latter only on infinite-dimensional input).
    let next_zero = |a: ArrowId| q.out_arrows(q.arrow(a).tgt).find(|&g| p.is_relation(g, a));
    let mut n_g = 0;
    let mut witness = Vec::new();
    for &start in &gentle {
        let mut path = vec![start];
        let mut cur = start;
        while let Some(g) = next_zero(cur) {
            if path.contains(&g) || path.len() > na {
                break;
            }
            path.push(g);
            cur = g;
        }
        if path.len() > n_g {
            n_g = path.len();
            witness = path;
        }
    }

    let projective_not_injective = visibly_not_self_injective(p);
    let dimension = if n_g > 0 {
        GorensteinDimension::Exact(n_g)
    } else if projective_not_injective.is_some() {
        GorensteinDimension::Exact(1)
    } else {
        GorensteinDimension::AtMostOne
    };
    Ok(GorensteinBound {
        n_g,
        gentle_arrows: gentle.iter().map(|&a| q.arrow(a).name.clone()).collect(),
        witness: witness.iter().map(|&a| q.arrow(a).name.clone()).collect(),
        arrow_count: na,
        projective_not_injective,
        dimension,
    })
}

/// `P_i` has dimension vector = row `i` of the path-count matrix, `I_j` has
/// column `j`. A row equal to no column belongs to a non-injective projective.
fn visibly_not_self_injective(p: &Presentation) -> Option<VertexId> {
    let m = p.count_paths().ok()?;
    let k = m.len();
    let column = |j: usize| -> Vec<u64> { (0..k).map(|i| m[i][j]).collect() };
    let columns: Vec<Vec<u64>> = (0..k).map(column).collect();
    (0..k).find(|&i| !columns.contains(&m[i]))
}
