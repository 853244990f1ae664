//! Self-check suites over small exhaustive corpora. Each check reports one
//! pass/fail line; [`Report`] ends with a machine-readable summary line.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphs::{graph_iso, Graph, VertexBijection};
use crate::group2graph::{build_gamma, corpus, extend_homomorphism, gamma_iso_check, is_arc_homomorphism, CayleyGroup};
use crate::halgebra::{build_h_algebra, check_map_witness, induced_iso, recover_graph, scramble_basis, RECOVER_MAX_N};
use crate::hgroup::{f2_map, group_iso_small, transport_iso, HGroup};
use crate::matrixwild::{center_order_bound, simsim, Matrix, MatrixPair};
use crate::modarith::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Algebra,
    Group,
    Gamma,
    Sizes,
    Matrix,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Suite::All,
            "algebra" => Suite::Algebra,
            "group" => Suite::Group,
            "gamma" => Suite::Gamma,
            "sizes" => Suite::Sizes,
            "matrix" => Suite::Matrix,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub p: Prime,
    pub max_n: usize,
    pub seed: u64,
    /// Random samples per sampled property.
    pub samples: usize,
}

impl VerifyConfig {
    pub fn new(p: Prime, max_n: usize, seed: u64) -> Self {
        VerifyConfig { p, max_n, seed, samples: 1000 }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Input size against output size for one construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub input: String,
    pub output: String,
    pub bound: &'static str,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub sizes: Vec<SizeReport>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    fn push(&mut self, name: &'static str, failures: usize, detail: String) {
        self.checks.push(CheckResult { name, passed: failures == 0, detail });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sizes {
            let ok = if s.satisfied { "ok" } else { "VIOLATED" };
            writeln!(f, "SIZE {} -> {} [{}] {}", s.input, s.output, s.bound, ok)?;
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        writeln!(f, "RESULT pass={} fail={}", self.passed(), self.failed())
    }
}

/// One graph per isomorphism class on `n` vertices.
pub fn class_representatives(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in Graph::all_labeled(n) {
        if !reps.iter().any(|r| graph_iso(r, &g).is_some()) {
            reps.push(g);
        }
    }
    reps
}

/// A fixed non-identity generator labelling (rotation by one).
fn rotation(n: usize) -> VertexBijection {
    VertexBijection::new((0..n).map(|i| (i + 1) % n).collect()).expect("rotation")
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Report {
    let mut report = Report::default();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Algebra) {
        check_graphs_to_rings(cfg, &mut report);
        check_renewal(cfg, &mut report);
    }
    if want(Suite::Group) {
        check_transport(cfg, &mut report);
        check_exponent(cfg, &mut report);
        check_presentation(cfg, &mut report);
    }
    if want(Suite::Gamma) {
        check_gamma_iso(&mut report);
        check_gamma_hom(&mut report);
    }
    if want(Suite::Sizes) {
        check_sizes(cfg, &mut report);
    }
    if want(Suite::Matrix) {
        check_simsim(cfg, &mut report);
        check_center_bound(cfg, &mut report);
    }
    report
}

/// Graphs are isomorphic iff their scrambled algebras recover to isomorphic graphs.
fn check_graphs_to_rings(cfg: &VerifyConfig, report: &mut Report) {
    // GL(3, p) enumeration is only quick at p = 3
    let top = cfg.max_n.min(if cfg.p.get() == 3 { RECOVER_MAX_N } else { 2 });
    let mut failures = 0;
    let mut pairs = 0;
    for n in 1..=top {
        let graphs = Graph::all_labeled(n);
        let recovered: Vec<Option<Graph>> = graphs
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let t = scramble_basis(build_h_algebra(g, cfg.p).table(), cfg.seed.wrapping_add(k as u64)).ok()?;
                recover_graph(&t, RECOVER_MAX_N).ok().flatten()
            })
            .collect();
        for (g1, r1) in graphs.iter().zip(&recovered) {
            for (g2, r2) in graphs.iter().zip(&recovered) {
                pairs += 1;
                let agree = match (r1, r2) {
                    (Some(r1), Some(r2)) => graph_iso(g1, g2).is_some() == graph_iso(r1, r2).is_some(),
                    _ => false,
                };
                failures += usize::from(!agree);
            }
        }
    }
    report.push(
        "graphs-to-rings",
        failures,
        format!("{pairs} graph pairs on <= {top} vertices, {failures} mismatches"),
    );
}

/// The renewal map is an algebra isomorphism for every graph.
fn check_renewal(cfg: &VerifyConfig, report: &mut Report) {
    let mut failures = 0;
    let mut count = 0;
    for n in 1..=cfg.max_n {
        for g in Graph::all_labeled(n) {
            for chi in [VertexBijection::identity(n), rotation(n)] {
                let h = HGroup::new(build_h_algebra(&g, cfg.p), chi).expect("lie algebra");
                count += 1;
                failures += usize::from(!check_map_witness(&f2_map(&h), h.base().table(), &h.reconstruct_algebra()));
            }
        }
    }
    report.push("renewal", failures, format!("{count} groups, {failures} failures"));
}

/// Graph isomorphisms transport to multiplicative group bijections.
fn check_transport(cfg: &VerifyConfig, report: &mut Report) {
    let mut rng = cfg.rng(2);
    let mut failures = 0;
    let mut pairs = 0;
    for n in 1..=cfg.max_n {
        let graphs = Graph::all_labeled(n);
        let groups: Vec<(HGroup, HGroup)> = graphs
            .iter()
            .map(|g| {
                let a = build_h_algebra(g, cfg.p);
                (HGroup::new(a.clone(), VertexBijection::identity(n)).unwrap(), HGroup::new(a, rotation(n)).unwrap())
            })
            .collect();
        for (i, g1) in graphs.iter().enumerate() {
            for (j, g2) in graphs.iter().enumerate() {
                let Some(b) = graph_iso(g1, g2) else { continue };
                pairs += 1;
                let (h1, h2) = (&groups[i].0, &groups[j].1);
                let ok = induced_iso(&b, h1.base(), h2.base())
                    .ok()
                    .flatten()
                    .and_then(|f| transport_iso(&f, h1, h2).ok())
                    .is_some_and(|w| {
                        (0..cfg.samples).all(|_| {
                            let (x, y) = (h1.random_element(&mut rng), h1.random_element(&mut rng));
                            let xy = h1.group_mul(&x, &y).unwrap();
                            w.apply(h2, &xy) == h2.group_mul(&w.apply(h2, &x), &w.apply(h2, &y)).unwrap()
                        })
                    });
                failures += usize::from(!ok);
            }
        }
    }
    report.push(
        "transport",
        failures,
        format!("{pairs} isomorphic graph pairs x {} samples, {failures} failures", cfg.samples),
    );
}

/// Exponent `p³`, class 2, and generator orders.
fn check_exponent(cfg: &VerifyConfig, report: &mut Report) {
    let mut rng = cfg.rng(6);
    let cube = cfg.p.cube();
    let mut failures = 0;
    let mut groups = 0;
    for n in 1..=cfg.max_n {
        for g in class_representatives(n) {
            let h = HGroup::from_graph(&g, cfg.p);
            groups += 1;
            for _ in 0..cfg.samples {
                let (x, y, z) = (h.random_element(&mut rng), h.random_element(&mut rng), h.random_element(&mut rng));
                let c = h.commutator(&x, &y).unwrap();
                let ok = h.pow(&x, cube).unwrap() == h.identity() && h.commutator(&c, &z).unwrap() == h.identity();
                failures += usize::from(!ok);
            }
            failures += (0..n).filter(|&k| h.element_order(&h.generator(k)).unwrap() != cube).count();
        }
    }
    report.push("exponent", failures, format!("{groups} groups x {} samples, {failures} failures", cfg.samples));
}

fn check_presentation(cfg: &VerifyConfig, report: &mut Report) {
    let mut failures = 0;
    let mut relators = 0;
    for n in 1..=cfg.max_n {
        for g in Graph::all_labeled(n) {
            let h = HGroup::from_graph(&g, cfg.p);
            let pres = h.export_presentation();
            for r in pres.relators() {
                relators += 1;
                failures += usize::from(pres.evaluate(&h, r) != h.identity());
            }
        }
    }
    report.push("presentation", failures, format!("{relators} relators, {failures} do not hold"));
}

fn check_gamma_iso(report: &mut Report) {
    let groups = corpus();
    let mut failures = 0;
    let mut pairs = 0;
    for (_, g) in &groups {
        for (_, h) in &groups {
            pairs += 1;
            let via_gamma = gamma_iso_check(g, h);
            let direct = group_iso_small(g, h);
            failures += usize::from(!matches!((via_gamma, direct), (Ok(a), Ok(b)) if a == b.is_some()));
        }
    }
    report.push("gamma-iso", failures, format!("{pairs} group pairs, {failures} disagreements"));
}

/// Ten homomorphisms between corpus groups (targets of order >= 3).
pub fn sample_homomorphisms() -> Vec<(&'static str, CayleyGroup, CayleyGroup, Vec<usize>)> {
    let z = CayleyGroup::cyclic;
    let klein = CayleyGroup::direct_product(&z(2), &z(2));
    vec![
        ("Z6->Z3", z(6), z(3), (0..6).map(|x| x % 3).collect()),
        ("Z8->Z4", z(8), z(4), (0..8).map(|x| x % 4).collect()),
        ("Z4->Z8", z(4), z(8), (0..4).map(|x| 2 * x).collect()),
        ("Z3->Z6", z(3), z(6), (0..3).map(|x| 2 * x).collect()),
        ("Z5->Z5", z(5), z(5), (0..5).map(|x| 2 * x % 5).collect()),
        ("Z7->Z7", z(7), z(7), (0..7).map(|x| 3 * x % 7).collect()),
        ("Z6->S3", z(6), CayleyGroup::symmetric3(), (0..6).map(|x| 2 * (x % 3)).collect()),
        ("Z2xZ4->Z4", CayleyGroup::direct_product(&z(2), &z(4)), z(4), (0..8).map(|x| x % 4).collect()),
        ("D4->Z2xZ2", CayleyGroup::dihedral(4), klein.clone(), (0..8).map(|x| (x / 2 % 2) * 2 + x % 2).collect()),
        ("Q8->Z2xZ2", CayleyGroup::quaternion(), klein, (0..8).map(|x| [0, 2, 1, 3][x / 2]).collect()),
    ]
}

fn check_gamma_hom(report: &mut Report) {
    let homs = sample_homomorphisms();
    let mut failures = 0;
    for (_, g, h, f) in &homs {
        let ok = extend_homomorphism(f, g, h)
            .is_ok_and(|ext| is_arc_homomorphism(&build_gamma(g).unwrap(), &build_gamma(h).unwrap(), &ext));
        failures += usize::from(!ok);
    }
    report.push("gamma-hom", failures, format!("{} homomorphisms, {failures} violations", homs.len()));
}

fn check_sizes(cfg: &VerifyConfig, report: &mut Report) {
    let mut failures = 0;
    let mut max_ratio: f64 = 0.0;
    for (name, g) in corpus() {
        let m = g.order();
        let v = build_gamma(&g).map(|x| x.vertex_count()).unwrap_or(0);
        let ok = v == m + m * m * m;
        max_ratio = max_ratio.max(v as f64 / (m * m * m) as f64);
        failures += usize::from(!ok);
        report.sizes.push(SizeReport {
            input: format!("group {name} m={m}"),
            output: format!("multigraph vertices={v}"),
            bound: "m + m^3",
            satisfied: ok,
        });
    }
    for n in 1..=cfg.max_n {
        let b = build_h_algebra(&Graph::empty(n), cfg.p).basis_size();
        let ok = b == n + n * (n - 1) / 2
            && Graph::all_labeled(n).iter().all(|g| build_h_algebra(g, cfg.p).basis_size() == b);
        failures += usize::from(!ok);
        report.sizes.push(SizeReport {
            input: format!("graph n={n}"),
            output: format!("algebra basis={b}"),
            bound: "n + n(n-1)/2",
            satisfied: ok,
        });
    }
    report.push(
        "sizes",
        failures,
        format!("{} constructions, max |V|/m^3 = {max_ratio:.3}, {failures} violations", report.sizes.len()),
    );
}

/// Reflexivity, symmetry and transitivity witnesses for simultaneous similarity at n = 2, p = 3.
fn check_simsim(cfg: &VerifyConfig, report: &mut Report) {
    let p = Prime::new(3).expect("prime");
    let mut rng = cfg.rng(9);
    let mut failures = 0;
    let pairs = 50;
    for _ in 0..pairs {
        let q1 = MatrixPair::new(Matrix::random(p, 2, &mut rng), Matrix::random(p, 2, &mut rng)).unwrap();
        let q2 = q1.conjugate(&Matrix::random_invertible(p, 2, &mut rng)).unwrap();
        let q3 = q2.conjugate(&Matrix::random_invertible(p, 2, &mut rng)).unwrap();
        let find = |a: &MatrixPair, b: &MatrixPair| simsim(a, b, p).ok().flatten();
        let reflexive =
            find(&q1, &q1).is_some_and(|s| q1.is_witness(&q1, &s)) && q1.is_witness(&q1, &Matrix::identity(p, 2));
        let symmetric = find(&q1, &q2).is_some_and(|s| s.inverse().is_some_and(|si| q2.is_witness(&q1, &si)))
            && find(&q2, &q1).is_some();
        let transitive = match (find(&q1, &q2), find(&q2, &q3)) {
            (Some(s12), Some(s23)) => {
                s23.mul(&s12).is_ok_and(|s13| q1.is_witness(&q3, &s13)) && find(&q1, &q3).is_some()
            }
            _ => false,
        };
        failures += usize::from(!(reflexive && symmetric && transitive));
        // an unrelated random pair must be answered consistently in both directions
        let r = MatrixPair::new(Matrix::random(p, 2, &mut rng), Matrix::random(p, 2, &mut rng)).unwrap();
        failures += usize::from(find(&q1, &r).is_some() != find(&r, &q1).is_some());
    }
    report.push("simsim", failures, format!("{pairs} random pairs at n=2 p=3, {failures} failures"));
}

fn check_center_bound(cfg: &VerifyConfig, report: &mut Report) {
    let cube = num_bigint::BigUint::from(cfg.p.cube());
    let mut failures = 0;
    let mut count = 0;
    for n in 3..=cfg.max_n.max(3) {
        for g in Graph::all_labeled(n) {
            count += 1;
            let h = HGroup::from_graph(&g, cfg.p);
            let expected = num_bigint::BigUint::from(cfg.p.get())
                .pow((g.edge_count() + 2 * (n * (n - 1) / 2 - g.edge_count())) as u32);
            failures += usize::from(!center_order_bound(&h).is_ok_and(|c| c >= cube && c == expected));
        }
    }
    report.push("center-bound", failures, format!("{count} graphs on >= 3 vertices, {failures} failures"));
}
