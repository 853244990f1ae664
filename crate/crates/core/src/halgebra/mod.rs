//! The commutative graph algebra `N(Γ)` and the class-2 nilpotent Lie algebra
//! (H-algebra) of a graph over `Z/p³Z`.
//!
//! Both are free `Z/p³Z`-modules on vertex generators `v_1..v_n` (order `p³`)
//! plus a central module spanned by one generator `a_ij` per pair `i < j`, of
//! order `p` when `ij` is an edge and `p²` otherwise. Only products of vertex
//! generators are nonzero: `v_i v_j = a_ij` (and `v_j v_i = a_ij` in the
//! commutative kind, `−a_ij` in the Lie kind).
//!
//! [`StructureTable`] is the basis-free view used for everything that is not
//! tied to the graph: scrambled bases, algebras rebuilt from groups, and
//! witness checking.

mod iso;
mod recover;

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graphs::{Graph, GraphError};
use crate::modarith::{MixedVector, ModArithError, Prime, Profile};

pub use iso::{check_iso_witness, check_map_witness, induced_iso, AlgebraIso, AlgebraMap};
pub use recover::{recover_graph, recover_standard_form, scramble_basis, BasisChange, RECOVER_MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    ModArith(#[from] ModArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("algebras differ in {0}")]
    Mismatch(&'static str),
    #[error("operation needs a Lie-kind algebra")]
    NotLie,
    #[error("{n} vertex generators exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("element does not belong to this algebra")]
    ForeignElement,
    #[error("not an isomorphism witness")]
    InvalidIso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// Symmetric products, the nilpotent part of the graph algebra.
    Commutative,
    /// Alternating bracket.
    Lie,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Commutative => "commutative",
            AlgebraKind::Lie => "lie",
        })
    }
}

/// Element `Σ x_i v_i + Σ z_k c_k`, split into the vertex part and the central part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub v: MixedVector,
    pub z: MixedVector,
}

impl AlgebraElement {
    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        Ok(AlgebraElement { v: self.v.add(&other.v)?, z: self.z.add(&other.z)? })
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement { v: self.v.neg(), z: self.z.neg() }
    }

    pub fn scale(&self, c: u64) -> AlgebraElement {
        AlgebraElement { v: self.v.scale(c), z: self.z.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.z.is_zero()
    }

    /// Additive order `p^e`; returns `e`.
    pub fn order_exponent(&self) -> u32 {
        self.v.order_exponent().max(self.z.order_exponent())
    }

    pub(crate) fn add_scaled(&mut self, c: u64, other: &AlgebraElement) {
        self.v.add_scaled_unchecked(c, &other.v);
        self.z.add_scaled_unchecked(c, &other.z);
    }
}

/// A class-2 nilpotent algebra in an arbitrary basis: `n` generators of order
/// `p³` spanning a complement, a central module with the given profile, and
/// the products of every ordered pair of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    kind: AlgebraKind,
    vprofile: Profile,
    zprofile: Profile,
    /// `products[i * n + j] = u_i · u_j`, a central vector.
    products: Vec<MixedVector>,
}

impl StructureTable {
    /// Builds a table from `products(i, j)`, checking the kind's symmetry.
    pub fn new(
        kind: AlgebraKind,
        p: Prime,
        n: usize,
        zprofile: Profile,
        products: Vec<MixedVector>,
    ) -> Result<Self, AlgebraError> {
        if zprofile.prime() != p {
            return Err(AlgebraError::Mismatch("prime"));
        }
        if products.len() != n * n || products.iter().any(|z| z.profile() != &zprofile) {
            return Err(AlgebraError::Mismatch("product table shape"));
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&products[i * n + j], &products[j * n + i]);
                let ok = match kind {
                    AlgebraKind::Commutative => a == b,
                    AlgebraKind::Lie => *a == b.neg() && (i != j || a.is_zero()),
                };
                if !ok {
                    return Err(AlgebraError::Mismatch("product symmetry"));
                }
            }
        }
        Ok(StructureTable { kind, vprofile: Profile::uniform_cube(p, n), zprofile, products })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn prime(&self) -> Prime {
        self.vprofile.prime()
    }

    /// Number of order-`p³` generators.
    pub fn n(&self) -> usize {
        self.vprofile.len()
    }

    pub fn central_profile(&self) -> &Profile {
        &self.zprofile
    }

    /// Total basis size `n + (number of central generators)`.
    pub fn basis_size(&self) -> usize {
        self.n() + self.zprofile.len()
    }

    /// `|A| = p^e`; returns `e`.
    pub fn order_exponent(&self) -> u32 {
        3 * self.n() as u32 + self.zprofile.order_exponent()
    }

    pub fn product(&self, i: usize, j: usize) -> &MixedVector {
        &self.products[i * self.n() + j]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { v: MixedVector::zero(&self.vprofile), z: MixedVector::zero(&self.zprofile) }
    }

    pub fn v_gen(&self, i: usize) -> AlgebraElement {
        AlgebraElement { v: MixedVector::unit(&self.vprofile, i), ..self.zero() }
    }

    pub fn z_gen(&self, k: usize) -> AlgebraElement {
        AlgebraElement { z: MixedVector::unit(&self.zprofile, k), ..self.zero() }
    }

    /// All basis generators: vertex part first, then central.
    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.n()).map(|i| self.v_gen(i)).chain((0..self.zprofile.len()).map(|k| self.z_gen(k))).collect()
    }

    pub fn element(&self, v: &[i64], z: &[i64]) -> Result<AlgebraElement, AlgebraError> {
        Ok(AlgebraElement {
            v: MixedVector::from_i64(&self.vprofile, v)?,
            z: MixedVector::from_i64(&self.zprofile, z)?,
        })
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        x.v.profile() == &self.vprofile && x.z.profile() == &self.zprofile
    }

    /// Bilinear product; the result is always central.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if !self.contains(x) || !self.contains(y) {
            return Err(AlgebraError::ForeignElement);
        }
        let n = self.n();
        let mut z = MixedVector::zero(&self.zprofile);
        for i in 0..n {
            let xi = x.v.get(i);
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                let c = xi * y.v.get(j);
                if c != 0 {
                    z.add_scaled_unchecked(c, &self.products[i * n + j]);
                }
            }
        }
        Ok(AlgebraElement { v: MixedVector::zero(&self.vprofile), z })
    }
}

/// Standard-basis algebra of a graph, in either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HAlgebra {
    graph: Graph,
    kind: AlgebraKind,
    pairs: Vec<(usize, usize)>,
    table: StructureTable,
}

/// Lexicographic index of the pair `i < j` among pairs of `0..n`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Name of the central generator for pair `(i, j)` (0-based input, 1-based text).
pub(crate) fn pair_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("a{}{}", i + 1, j + 1)
    } else {
        format!("a{}_{}", i + 1, j + 1)
    }
}

fn build(g: &Graph, p: Prime, kind: AlgebraKind) -> HAlgebra {
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let moduli = pairs.iter().map(|&(i, j)| if g.has_edge(i, j) { p.get() } else { p.pow(2) }).collect();
    let zprofile = Profile::new(p, moduli).expect("moduli are p or p²");
    let mut products = vec![MixedVector::zero(&zprofile); n * n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let a = MixedVector::unit(&zprofile, k);
        products[j * n + i] = match kind {
            AlgebraKind::Commutative => a.clone(),
            AlgebraKind::Lie => a.neg(),
        };
        products[i * n + j] = a;
    }
    let table = StructureTable::new(kind, p, n, zprofile, products).expect("standard table is consistent");
    HAlgebra { graph: g.clone(), kind, pairs, table }
}

/// `N(Γ)`: the graph algebra without its constant summand.
pub fn build_graph_algebra(g: &Graph, p: Prime) -> HAlgebra {
    build(g, p, AlgebraKind::Commutative)
}

/// The H-algebra `R⁰` of `g`.
pub fn build_h_algebra(g: &Graph, p: Prime) -> HAlgebra {
    build(g, p, AlgebraKind::Lie)
}

impl HAlgebra {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn prime(&self) -> Prime {
        self.table.prime()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair_of(&self, i: usize, j: usize) -> usize {
        pair_index(self.n(), i.min(j), i.max(j))
    }

    pub fn is_edge_pair(&self, k: usize) -> bool {
        let (i, j) = self.pairs[k];
        self.graph.has_edge(i, j)
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn basis_size(&self) -> usize {
        self.table.basis_size()
    }

    pub fn zero(&self) -> AlgebraElement {
        self.table.zero()
    }

    pub fn v_gen(&self, i: usize) -> AlgebraElement {
        self.table.v_gen(i)
    }

    pub fn a_gen(&self, k: usize) -> AlgebraElement {
        self.table.z_gen(k)
    }

    pub fn element(&self, v: &[i64], a: &[i64]) -> Result<AlgebraElement, AlgebraError> {
        self.table.element(v, a)
    }

    /// Closed-form product: only pair coordinates of the result are nonzero.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if !self.table.contains(x) || !self.table.contains(y) {
            return Err(AlgebraError::ForeignElement);
        }
        let coeffs: Vec<i64> = self
            .pairs
            .iter()
            .map(|&(i, j)| {
                let (xi, xj, yi, yj) = (x.v.get(i) as i64, x.v.get(j) as i64, y.v.get(i) as i64, y.v.get(j) as i64);
                match self.kind {
                    AlgebraKind::Commutative => xi * yj + xj * yi,
                    AlgebraKind::Lie => xi * yj - xj * yi,
                }
            })
            .collect();
        Ok(AlgebraElement {
            v: MixedVector::zero(self.table.vprofile()),
            z: MixedVector::from_i64(self.table.central_profile(), &coeffs)?,
        })
    }

    /// Text dump: `p n kind`, one `i j edge|nonedge` line per pair, then every
    /// nonzero product of vertex generators as `v<i> * v<j> = <c> * a<ij>`.
    pub fn dump(&self) -> String {
        let n = self.n();
        let mut out = format!("{} {} {}\n", self.prime(), n, self.kind);
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            let tag = if self.is_edge_pair(k) { "edge" } else { "nonedge" };
            writeln!(out, "{} {} {}", i + 1, j + 1, tag).unwrap();
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let k = self.pair_of(i, j);
                let c = self.table.product(i, j).get(k);
                if c != 0 {
                    let (lo, hi) = self.pairs[k];
                    writeln!(out, "v{} * v{} = {} * {}", i + 1, j + 1, c, pair_name(n, lo, hi)).unwrap();
                }
            }
        }
        out
    }
}

impl StructureTable {
    pub(crate) fn vprofile(&self) -> &Profile {
        &self.vprofile
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    fn random_element(a: &StructureTable, rng: &mut impl Rng) -> AlgebraElement {
        let v: Vec<i64> = (0..a.n()).map(|_| rng.gen_range(0..1000)).collect();
        let z: Vec<i64> = (0..a.central_profile().len()).map(|_| rng.gen_range(0..1000)).collect();
        a.element(&v, &z).unwrap()
    }

    #[test]
    fn pair_indexing_is_lexicographic() {
        let mut k = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                assert_eq!(pair_index(6, i, j), k);
                k += 1;
            }
        }
    }

    #[test]
    fn k2_commutative_edge_has_order_p() {
        let a = build_graph_algebra(&Graph::complete(2), p(3));
        let prod = a.multiply(&a.v_gen(0), &a.v_gen(1)).unwrap();
        assert_eq!(prod, a.a_gen(0));
        assert_eq!(a.multiply(&a.v_gen(1), &a.v_gen(0)).unwrap(), a.a_gen(0));
        assert!(prod.scale(3).is_zero());
    }

    #[test]
    fn nonedge_has_order_p_squared() {
        let a = build_graph_algebra(&Graph::empty(2), p(3));
        let prod = a.multiply(&a.v_gen(0), &a.v_gen(1)).unwrap();
        assert!(prod.scale(9).is_zero());
        assert!(!prod.scale(3).is_zero());
    }

    #[test]
    fn squares_vanish() {
        for g in Graph::all_labeled(3) {
            for alg in [build_graph_algebra(&g, p(3)), build_h_algebra(&g, p(3))] {
                for i in 0..3 {
                    assert!(alg.multiply(&alg.v_gen(i), &alg.v_gen(i)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn k2_lie_bracket_signs() {
        let a = build_h_algebra(&Graph::complete(2), p(3));
        assert_eq!(a.multiply(&a.v_gen(0), &a.v_gen(1)).unwrap(), a.a_gen(0));
        let back = a.multiply(&a.v_gen(1), &a.v_gen(0)).unwrap();
        assert_eq!(back, a.a_gen(0).scale(2));
        assert_eq!(back.z.get(0), 2);
    }

    /// [v1+v2, v1−v2] = −[v1,v2] + [v2,v1] = −2 a12 = a12 (mod 3).
    #[test]
    fn bilinear_expansion_example() {
        let a = build_h_algebra(&Graph::complete(2), p(3));
        let x = a.element(&[1, 1], &[0]).unwrap();
        let y = a.element(&[1, -1], &[0]).unwrap();
        assert_eq!(a.multiply(&x, &y).unwrap(), a.a_gen(0));
        assert!(a.multiply(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn central_generators_annihilate() {
        let a = build_h_algebra(&Graph::path(3), p(5));
        let x = a.element(&[3, 1, 4], &[1, 5, 9]).unwrap();
        for k in 0..3 {
            assert!(a.multiply(&a.a_gen(k), &x).unwrap().is_zero());
            assert!(a.multiply(&x, &a.a_gen(k)).unwrap().is_zero());
        }
    }

    #[test]
    fn additive_orders_match_direct_sum() {
        for prime in [3, 5] {
            for n in 1..=5 {
                let graphs = Graph::all_labeled(n);
                for g in graphs.iter().step_by(if n == 5 { 37 } else { 1 }) {
                    let a = build_h_algebra(g, p(prime));
                    for i in 0..n {
                        assert_eq!(a.v_gen(i).order_exponent(), 3);
                    }
                    let mut order_p = 0;
                    for k in 0..a.pair_count() {
                        let want = if a.is_edge_pair(k) { 1 } else { 2 };
                        assert_eq!(a.a_gen(k).order_exponent(), want);
                        order_p += usize::from(want == 1);
                    }
                    assert_eq!(order_p, g.edge_count());
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in Graph::all_labeled(4).iter().step_by(5) {
            for alg in [build_graph_algebra(g, p(3)), build_h_algebra(g, p(5))] {
                for _ in 0..50 {
                    let x = random_element(alg.table(), &mut rng);
                    let y = random_element(alg.table(), &mut rng);
                    assert_eq!(alg.multiply(&x, &y).unwrap(), alg.table().multiply(&x, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn lie_identities_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        for prime in [3, 5] {
            let a = build_h_algebra(&g, p(prime));
            for _ in 0..1000 {
                let (x, y, z) = (
                    random_element(a.table(), &mut rng),
                    random_element(a.table(), &mut rng),
                    random_element(a.table(), &mut rng),
                );
                let m = |u: &AlgebraElement, w: &AlgebraElement| a.multiply(u, w).unwrap();
                assert!(m(&x, &x).is_zero());
                assert!(m(&m(&x, &y), &z).is_zero());
                // bilinearity in the first slot
                assert_eq!(m(&x.add(&y).unwrap(), &z), m(&x, &z).add(&m(&y, &z)).unwrap());
                assert_eq!(m(&x.scale(7), &y), m(&x, &y).scale(7));
                // anticommutativity and Jacobi
                assert_eq!(m(&x, &y), m(&y, &x).neg());
                let jacobi = m(&x, &m(&y, &z)).add(&m(&y, &m(&z, &x))).unwrap().add(&m(&z, &m(&x, &y))).unwrap();
                assert!(jacobi.is_zero());
            }
        }
    }

    #[test]
    fn foreign_elements_rejected() {
        let a = build_h_algebra(&Graph::complete(2), p(3));
        let b = build_h_algebra(&Graph::empty(2), p(3));
        assert_eq!(a.multiply(&a.v_gen(0), &b.v_gen(1)), Err(AlgebraError::ForeignElement));
    }

    #[test]
    fn table_rejects_asymmetry() {
        let pr = p(3);
        let zp = Profile::new(pr, vec![3]).unwrap();
        let one = MixedVector::unit(&zp, 0);
        let zero = MixedVector::zero(&zp);
        let bad = vec![zero.clone(), one.clone(), one.clone(), zero.clone()];
        assert!(StructureTable::new(AlgebraKind::Lie, pr, 2, zp.clone(), bad.clone()).is_err());
        assert!(StructureTable::new(AlgebraKind::Commutative, pr, 2, zp, bad).is_ok());
    }

    #[test]
    fn dump_k2() {
        let a = build_h_algebra(&Graph::complete(2), p(3));
        assert_eq!(a.dump(), "3 2 lie\n1 2 edge\nv1 * v2 = 1 * a12\nv2 * v1 = 2 * a12\n");
        let c = build_graph_algebra(&Graph::empty(2), p(3));
        assert_eq!(c.dump(), "3 2 commutative\n1 2 nonedge\nv1 * v2 = 1 * a12\nv2 * v1 = 1 * a12\n");
    }
}
