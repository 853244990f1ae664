use super::{AlgebraElement, AlgebraError, AlgebraKind, HAlgebra, StructureTable};
use crate::graphs::VertexBijection;
use crate::modarith::rank_mod_p;

/// A `Z/p³Z`-linear map given by the images of the basis generators of its
/// domain: vertex generators first, then central generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub v_images: Vec<AlgebraElement>,
    pub z_images: Vec<AlgebraElement>,
}

impl AlgebraMap {
    /// Image of `x`; `target` supplies the zero element.
    pub fn apply(&self, target: &StructureTable, x: &AlgebraElement) -> AlgebraElement {
        let mut out = target.zero();
        for (i, img) in self.v_images.iter().enumerate() {
            out.add_scaled(x.v.get(i), img);
        }
        for (k, img) in self.z_images.iter().enumerate() {
            out.add_scaled(x.z.get(k), img);
        }
        out
    }
}

/// Witness check for an arbitrary linear map between two algebras: true iff
/// the map is well defined on every cyclic summand, bijective, and
/// multiplicative on all pairs of basis generators.
pub fn check_map_witness(f: &AlgebraMap, a1: &StructureTable, a2: &StructureTable) -> bool {
    let p = a1.prime();
    if p != a2.prime() || a1.kind() != a2.kind() || a1.order_exponent() != a2.order_exponent() {
        return false;
    }
    if f.v_images.len() != a1.n() || f.z_images.len() != a1.central_profile().len() {
        return false;
    }
    if !f.v_images.iter().chain(&f.z_images).all(|x| a2.contains(x)) {
        return false;
    }
    // a generator of order m must land on an element killed by m
    let well_defined = f.v_images.iter().all(|x| x.scale(p.cube()).is_zero())
        && f.z_images.iter().zip(a1.central_profile().moduli()).all(|(x, &m)| x.scale(m).is_zero());
    if !well_defined {
        return false;
    }
    // equal orders + surjective onto A2/pA2 ⇒ bijective
    let rows: Vec<Vec<u64>> = f
        .v_images
        .iter()
        .chain(&f.z_images)
        .map(|x| x.v.values().iter().chain(x.z.values()).copied().collect())
        .collect();
    if rank_mod_p(&rows, p) != a2.basis_size() {
        return false;
    }
    let basis = a1.basis();
    let images: Vec<AlgebraElement> = basis.iter().map(|b| f.apply(a2, b)).collect();
    for (x, fx) in basis.iter().zip(&images) {
        for (y, fy) in basis.iter().zip(&images) {
            let lhs = f.apply(a2, &a1.multiply(x, y).expect("basis elements"));
            let rhs = a2.multiply(fx, fy).expect("images checked above");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The algebra map induced by a vertex permutation: `v_i ↦ v_{π(i)}`,
/// `a_ij ↦ ± a_{π(i)π(j)}`, with a minus sign in the Lie kind when `π`
/// reverses the order of the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraIso {
    vertex_map: VertexBijection,
    /// `pair_action[k] = (target pair, negated)`.
    pair_action: Vec<(usize, bool)>,
}

impl AlgebraIso {
    /// Derives the pair action of `b` without checking that it respects the
    /// edge/non-edge tagging. Use [`induced_iso`] for the checked version.
    pub fn from_vertex_map(b: &VertexBijection, a1: &HAlgebra, a2: &HAlgebra) -> Result<Self, AlgebraError> {
        if a1.prime() != a2.prime() {
            return Err(AlgebraError::Mismatch("prime"));
        }
        if a1.kind() != a2.kind() {
            return Err(AlgebraError::Mismatch("kind"));
        }
        if a1.n() != a2.n() || b.len() != a1.n() {
            return Err(AlgebraError::Mismatch("size"));
        }
        let pair_action = a1
            .pairs()
            .iter()
            .map(|&(i, j)| {
                let (x, y) = (b.apply(i), b.apply(j));
                (a2.pair_of(x, y), a1.kind() == AlgebraKind::Lie && x > y)
            })
            .collect();
        Ok(AlgebraIso { vertex_map: b.clone(), pair_action })
    }

    pub fn vertex_map(&self) -> &VertexBijection {
        &self.vertex_map
    }

    pub fn pair_action(&self) -> &[(usize, bool)] {
        &self.pair_action
    }

    pub fn identity(a: &HAlgebra) -> Self {
        Self::from_vertex_map(&VertexBijection::identity(a.n()), a, a).expect("same algebra")
    }

    pub fn inverse(&self) -> Self {
        let mut pair_action = vec![(0, false); self.pair_action.len()];
        for (k, &(t, neg)) in self.pair_action.iter().enumerate() {
            pair_action[t] = (k, neg);
        }
        AlgebraIso { vertex_map: self.vertex_map.inverse(), pair_action }
    }

    /// The general linear map this iso stands for.
    pub fn to_map(&self, a2: &HAlgebra) -> AlgebraMap {
        let v_images = (0..self.vertex_map.len()).map(|i| a2.v_gen(self.vertex_map.apply(i))).collect();
        let z_images =
            self.pair_action.iter().map(|&(t, neg)| if neg { a2.a_gen(t).neg() } else { a2.a_gen(t) }).collect();
        AlgebraMap { v_images, z_images }
    }

    pub fn apply(&self, a2: &HAlgebra, x: &AlgebraElement) -> AlgebraElement {
        self.to_map(a2).apply(a2.table(), x)
    }
}

/// `π*` for a vertex bijection `b`, present iff `b` maps edges onto edges and
/// non-edges onto non-edges.
pub fn induced_iso(b: &VertexBijection, a1: &HAlgebra, a2: &HAlgebra) -> Result<Option<AlgebraIso>, AlgebraError> {
    let f = AlgebraIso::from_vertex_map(b, a1, a2)?;
    let preserves = f.pair_action.iter().enumerate().all(|(k, &(t, _))| a1.is_edge_pair(k) == a2.is_edge_pair(t));
    Ok(preserves.then_some(f))
}

/// Whether `f` is an algebra isomorphism `a1 → a2`.
pub fn check_iso_witness(f: &AlgebraIso, a1: &HAlgebra, a2: &HAlgebra) -> bool {
    f.vertex_map.len() == a1.n()
        && f.pair_action.len() == a1.pair_count()
        && a1.n() == a2.n()
        && check_map_witness(&f.to_map(a2), a1.table(), a2.table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{graph_iso, Graph};
    use crate::halgebra::{build_graph_algebra, build_h_algebra};
    use crate::modarith::Prime;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn all_perms(n: usize) -> Vec<VertexBijection> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexBijection>) {
            if cur.len() == n {
                out.push(VertexBijection::new(cur.clone()).unwrap());
                return;
            }
            for x in 0..n {
                if !cur.contains(&x) {
                    cur.push(x);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn identity_is_a_witness() {
        for g in Graph::all_labeled(3) {
            let a = build_h_algebra(&g, p3());
            let f = induced_iso(&VertexBijection::identity(3), &a, &a).unwrap().unwrap();
            assert_eq!(f, AlgebraIso::identity(&a));
            assert!(check_iso_witness(&f, &a, &a));
        }
    }

    #[test]
    fn graph_witness_transports_products() {
        let g1 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let g2 = Graph::from_edges(4, &[(3, 0), (0, 2), (2, 1)]).unwrap();
        let b = graph_iso(&g1, &g2).unwrap();
        for a in [
            (build_h_algebra(&g1, p3()), build_h_algebra(&g2, p3())),
            (build_graph_algebra(&g1, p3()), build_graph_algebra(&g2, p3())),
        ] {
            let f = induced_iso(&b, &a.0, &a.1).unwrap().unwrap();
            assert!(check_iso_witness(&f, &a.0, &a.1));
            let t1 = a.0.table().basis();
            for x in &t1 {
                for y in &t1 {
                    let lhs = f.apply(&a.1, &a.0.multiply(x, y).unwrap());
                    let rhs = a.1.multiply(&f.apply(&a.1, x), &f.apply(&a.1, y)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn edge_to_nonedge_is_rejected() {
        let a = build_h_algebra(&Graph::path(3), p3());
        // swapping 0 and 1 keeps {0,1} but moves edge {1,2} onto non-edge {0,2}
        let b = VertexBijection::new(vec![1, 0, 2]).unwrap();
        assert!(induced_iso(&b, &a, &a).unwrap().is_none());
        let f = AlgebraIso::from_vertex_map(&b, &a, &a).unwrap();
        assert!(!check_iso_witness(&f, &a, &a));
    }

    #[test]
    fn size_mismatch_errors() {
        let a = build_h_algebra(&Graph::path(3), p3());
        let b = build_h_algebra(&Graph::path(2), p3());
        assert!(induced_iso(&VertexBijection::identity(3), &a, &b).is_err());
        let c = build_graph_algebra(&Graph::path(3), p3());
        assert!(induced_iso(&VertexBijection::identity(3), &a, &c).is_err());
    }

    /// induced_iso exists iff the bijection is a graph isomorphism, over all
    /// bijections and all graph pairs on up to 4 vertices (sampled on n = 4).
    #[test]
    fn induced_iso_iff_graph_iso_exhaustive() {
        for n in 1..=4 {
            let graphs = Graph::all_labeled(n);
            let step = if n == 4 { 7 } else { 1 };
            let perms = all_perms(n);
            for g1 in graphs.iter().step_by(step) {
                let a1 = build_h_algebra(g1, p3());
                for g2 in graphs.iter().step_by(step) {
                    let a2 = build_h_algebra(g2, p3());
                    for b in &perms {
                        let f = induced_iso(b, &a1, &a2).unwrap();
                        assert_eq!(f.is_some(), g1.is_isomorphism(g2, b));
                        if let Some(f) = f {
                            assert!(check_iso_witness(&f, &a1, &a2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2)]).unwrap();
        let a = build_h_algebra(&g, p3());
        let b = VertexBijection::new(vec![0, 2, 1, 3]).unwrap();
        let f = induced_iso(&b, &a, &a).unwrap().unwrap();
        let x = a.element(&[1, 2, 3, 4], &[1, 2, 3, 4, 5, 6]).unwrap();
        let back = f.inverse().apply(&a, &f.apply(&a, &x));
        assert_eq!(back, x);
        assert!(check_iso_witness(&f.inverse(), &a, &a));
    }

    #[test]
    fn non_bijective_map_rejected() {
        let a = build_h_algebra(&Graph::empty(2), p3());
        let mut f = AlgebraIso::identity(&a).to_map(&a);
        f.v_images[1] = a.v_gen(0);
        assert!(!check_map_witness(&f, a.table(), a.table()));
        // scaling a central generator by p is well defined but not onto
        let mut f = AlgebraIso::identity(&a).to_map(&a);
        f.z_images[0] = a.a_gen(0).scale(3);
        assert!(!check_map_witness(&f, a.table(), a.table()));
    }
}
