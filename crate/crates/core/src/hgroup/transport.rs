use super::{HGroup, HGroupElement, HGroupError};
use crate::graphs::VertexBijection;
use crate::halgebra::{check_iso_witness, AlgebraElement, AlgebraIso, AlgebraKind, AlgebraMap, StructureTable};
use crate::modarith::MixedVector;

/// Group isomorphism `G1 → G2` induced by an algebra isomorphism: generator
/// positions move by `π̃ = τ₂ π τ₁⁻¹`, central parts by the algebra map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupIsoWitness {
    positions: VertexBijection,
    algebra: AlgebraIso,
}

impl GroupIsoWitness {
    /// `π̃` on generator positions.
    pub fn positions(&self) -> &VertexBijection {
        &self.positions
    }

    pub fn algebra_iso(&self) -> &AlgebraIso {
        &self.algebra
    }

    /// `Φ(g_1^α_1 … g_n^α_n · a) = g'_{π̃(1)}^α_1 ⋯ g'_{π̃(n)}^α_n · π*(a)`,
    /// multiplied out in `target`.
    pub fn apply(&self, target: &HGroup, x: &HGroupElement) -> HGroupElement {
        let mut out = target.identity();
        for k in 0..x.alpha.len() {
            let e = x.alpha.get(k);
            if e != 0 {
                out = target.mul(&out, &target.generator_power(self.positions.apply(k), e));
            }
        }
        let a = AlgebraElement { v: MixedVector::zero(target.base().table().vprofile()), z: x.central.clone() };
        let image = self.algebra.apply(target.base(), &a);
        target.mul(&out, &target.central_element(image.z))
    }

    pub fn inverse(&self) -> Self {
        GroupIsoWitness { positions: self.positions.inverse(), algebra: self.algebra.inverse() }
    }
}

/// Lifts an algebra isomorphism between the bases of `g1` and `g2` to the
/// groups, checking it on every pair of generators.
pub fn transport_iso(f: &AlgebraIso, g1: &HGroup, g2: &HGroup) -> Result<GroupIsoWitness, HGroupError> {
    if !check_iso_witness(f, g1.base(), g2.base()) {
        return Err(HGroupError::InvalidIso);
    }
    let positions = g1.chi().inverse().then(f.vertex_map()).then(g2.chi());
    let w = GroupIsoWitness { positions, algebra: f.clone() };
    let gens: Vec<HGroupElement> = (0..g1.n())
        .map(|k| g1.generator(k))
        .chain((0..g1.base().pair_count()).map(|e| g1.central_generator(e)))
        .collect();
    let images: Vec<HGroupElement> = gens.iter().map(|x| w.apply(g2, x)).collect();
    for (x, fx) in gens.iter().zip(&images) {
        for (y, fy) in gens.iter().zip(&images) {
            if w.apply(g2, &g1.mul(x, y)) != g2.mul(fx, fy) {
                return Err(HGroupError::InvalidIso);
            }
        }
    }
    Ok(w)
}

pub(super) fn reconstruct(g: &HGroup) -> StructureTable {
    let n = g.n();
    let products = (0..n * n)
        .map(|x| g.commutator(&g.generator(x / n), &g.generator(x % n)).expect("generators").central)
        .collect();
    StructureTable::new(AlgebraKind::Lie, g.prime(), n, g.central_profile().clone(), products)
        .expect("commutators are alternating")
}

/// The map `v_i ↦ u_{χ(i)}`, `a_e ↦ z_e` from the base algebra of `g` to
/// [`HGroup::reconstruct_algebra`].
pub fn f2_map(g: &HGroup) -> AlgebraMap {
    let l = g.reconstruct_algebra();
    AlgebraMap {
        v_images: (0..g.n()).map(|i| l.v_gen(g.chi().apply(i))).collect(),
        z_images: (0..g.base().pair_count()).map(|e| l.z_gen(e)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{graph_iso, Graph};
    use crate::halgebra::{build_h_algebra, check_map_witness, induced_iso};
    use crate::modarith::Prime;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn identity_iso_is_identity_map() {
        let g = HGroup::from_graph(&Graph::path(3), p(3));
        let w = transport_iso(&AlgebraIso::identity(g.base()), &g, &g).unwrap();
        assert!(w.positions().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = g.random_element(&mut rng);
            assert_eq!(w.apply(&g, &x), x);
        }
    }

    #[test]
    fn generators_go_to_permuted_generators() {
        let (g1, g2) = (Graph::path(4), Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap());
        let b = graph_iso(&g1, &g2).unwrap();
        let chi1 = VertexBijection::new(vec![1, 3, 0, 2]).unwrap();
        let chi2 = VertexBijection::new(vec![3, 2, 1, 0]).unwrap();
        let h1 = HGroup::new(build_h_algebra(&g1, p(5)), chi1).unwrap();
        let h2 = HGroup::new(build_h_algebra(&g2, p(5)), chi2).unwrap();
        let f = induced_iso(&b, h1.base(), h2.base()).unwrap().unwrap();
        let w = transport_iso(&f, &h1, &h2).unwrap();
        for k in 0..4 {
            assert_eq!(w.apply(&h2, &h1.generator(k)), h2.generator(w.positions().apply(k)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let back = w.inverse();
        for _ in 0..300 {
            let (x, y) = (h1.random_element(&mut rng), h1.random_element(&mut rng));
            let lhs = w.apply(&h2, &h1.group_mul(&x, &y).unwrap());
            assert_eq!(lhs, h2.group_mul(&w.apply(&h2, &x), &w.apply(&h2, &y)).unwrap());
            assert_eq!(back.apply(&h1, &w.apply(&h2, &x)), x);
        }
    }

    #[test]
    fn invalid_iso_rejected() {
        let g = HGroup::from_graph(&Graph::path(3), p(3));
        let f = AlgebraIso::from_vertex_map(&VertexBijection::new(vec![1, 0, 2]).unwrap(), g.base(), g.base()).unwrap();
        assert_eq!(transport_iso(&f, &g, &g), Err(HGroupError::InvalidIso));
    }

    #[test]
    fn renewal_round_trip() {
        for n in 1..=4 {
            for graph in Graph::all_labeled(n) {
                let g = HGroup::from_graph(&graph, p(3));
                let l = g.reconstruct_algebra();
                assert!(check_map_witness(&f2_map(&g), g.base().table(), &l));
                // products of L are alternating
                for i in 0..n {
                    assert!(l.product(i, i).is_zero());
                    for j in 0..n {
                        assert_eq!(l.product(i, j), &l.product(j, i).neg());
                    }
                }
            }
        }
        let chi = VertexBijection::new(vec![2, 0, 1]).unwrap();
        let g = HGroup::new(build_h_algebra(&Graph::path(3), p(5)), chi).unwrap();
        assert!(check_map_witness(&f2_map(&g), g.base().table(), &g.reconstruct_algebra()));
    }

    #[test]
    fn f2_with_negated_brackets_fails() {
        // sending z to −z breaks multiplicativity unless every bracket vanishes
        let g = HGroup::from_graph(&Graph::complete(2), p(3));
        let l = g.reconstruct_algebra();
        let mut f = f2_map(&g);
        f.z_images[0] = f.z_images[0].neg();
        assert!(!check_map_witness(&f, g.base().table(), &l));
    }
}
