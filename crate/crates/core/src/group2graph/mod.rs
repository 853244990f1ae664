//! The multigraph `Γ(G)` of a finite group: one vertex per element and one per
//! ordered triple `(u, v, w)`. Each triple receives an arc from `u` and from
//! `v`; when `u∘v = w` the arc from `v` has multiplicity 2 and the triple also
//! points at `w`.

mod cayley;

use thiserror::Error;

use crate::graphs::{multigraph_iso, DiMultigraph, GraphError};

pub use cayley::{corpus, read_cayley, write_cayley, CayleyGroup};

/// Smallest group order `Γ` is defined for; below it element vertices are not
/// separated from triple vertices by degree.
pub const GAMMA_MIN_ORDER: usize = 3;

/// Largest group order [`gamma_iso_check`] accepts.
pub const GAMMA_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group of order {0} is too small; at least {GAMMA_MIN_ORDER} elements needed")]
    TooSmall(usize),
    #[error("group of order {order} exceeds the limit {max}")]
    TooLarge { order: usize, max: usize },
    #[error("element map is not a group homomorphism")]
    NotHomomorphism,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex index of the triple `(u, v, w)` in `Γ(G)` for a group of order `m`.
pub fn triple_vertex(m: usize, u: usize, v: usize, w: usize) -> usize {
    m + (u * m + v) * m + w
}

pub fn build_gamma(g: &CayleyGroup) -> Result<DiMultigraph, GroupError> {
    let m = g.order();
    if m < GAMMA_MIN_ORDER {
        return Err(GroupError::TooSmall(m));
    }
    let mut gamma = DiMultigraph::new(m, m * m * m);
    for u in 0..m {
        for v in 0..m {
            let uv = g.op(u, v);
            for w in 0..m {
                let t = triple_vertex(m, u, v, w);
                gamma.add_arc(u, t, 1)?;
                if uv == w {
                    gamma.add_arc(v, t, 2)?;
                    gamma.add_arc(t, w, 1)?;
                } else {
                    gamma.add_arc(v, t, 1)?;
                }
            }
        }
    }
    Ok(gamma)
}

/// Extends a homomorphism `h: G → H` to the vertex map `Γ(G) → Γ(H)` sending
/// `u ↦ h(u)` and `(u, v, w) ↦ (h(u), h(v), h(w))`.
pub fn extend_homomorphism(h: &[usize], g: &CayleyGroup, target: &CayleyGroup) -> Result<Vec<usize>, GroupError> {
    for order in [g.order(), target.order()] {
        if order < GAMMA_MIN_ORDER {
            return Err(GroupError::TooSmall(order));
        }
    }
    if !g.is_homomorphism(target, h) {
        return Err(GroupError::NotHomomorphism);
    }
    let (m, mt) = (g.order(), target.order());
    let mut map = h.to_vec();
    for u in 0..m {
        for v in 0..m {
            for w in 0..m {
                map.push(triple_vertex(mt, h[u], h[v], h[w]));
            }
        }
    }
    Ok(map)
}

/// Whether `f` sends every arc of `a` onto an arc of `b` (multiplicities may grow).
pub fn is_arc_homomorphism(a: &DiMultigraph, b: &DiMultigraph, f: &[usize]) -> bool {
    f.len() == a.vertex_count() && a.arcs().all(|(s, t, _)| b.multiplicity(f[s], f[t]) > 0)
}

/// Decides `G ≅ H` through `Γ(G) ≅ Γ(H)`.
pub fn gamma_iso_check(g: &CayleyGroup, h: &CayleyGroup) -> Result<bool, GroupError> {
    for order in [g.order(), h.order()] {
        if order > GAMMA_MAX_ORDER {
            return Err(GroupError::TooLarge { order, max: GAMMA_MAX_ORDER });
        }
    }
    Ok(multigraph_iso(&build_gamma(g)?, &build_gamma(h)?).is_some())
}
