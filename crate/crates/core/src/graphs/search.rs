//! Exact isomorphism search: joint color refinement of both inputs to a stable
//! partition, then individualization of one vertex from the smallest
//! non-singleton cell and recursion. Vertices and cells are visited in a fixed
//! order, so the returned witness is deterministic.

use std::collections::{BTreeMap, HashMap};

use super::{DiMultigraph, Graph, VertexBijection};

/// Vertex-colored digraph with weighted arcs. Undirected graphs store each
/// edge in both directions and set `symmetric`.
struct Colored {
    colors: Vec<u32>,
    out: Vec<Vec<(usize, u32)>>,
    inn: Vec<Vec<(usize, u32)>>,
    symmetric: bool,
    arcs: HashMap<(usize, usize), u32>,
}

impl Colored {
    fn from_graph(g: &Graph) -> Self {
        let out: Vec<Vec<(usize, u32)>> =
            (0..g.n()).map(|v| g.neighbors(v).iter().map(|&w| (w, 1)).collect()).collect();
        let arcs = g.edges().flat_map(|(i, j)| [((i, j), 1), ((j, i), 1)]).collect();
        Colored { colors: vec![0; g.n()], inn: Vec::new(), out, symmetric: true, arcs }
    }

    fn from_multigraph(m: &DiMultigraph) -> Self {
        let n = m.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (s, t, k) in m.arcs() {
            out[s].push((t, k));
            inn[t].push((s, k));
        }
        let colors = (0..n).map(|v| m.sort(v) as u32).collect();
        let arcs = m.arcs().map(|(s, t, k)| ((s, t), k)).collect();
        Colored { colors, out, inn, symmetric: false, arcs }
    }

    fn n(&self) -> usize {
        self.colors.len()
    }

    fn signature(&self, v: usize, colors: &[u32]) -> (u32, Vec<(u8, u32, u32)>) {
        let mut nb: Vec<(u8, u32, u32)> = self.out[v].iter().map(|&(w, k)| (0, k, colors[w])).collect();
        if !self.symmetric {
            nb.extend(self.inn[v].iter().map(|&(w, k)| (1, k, colors[w])));
        }
        nb.sort_unstable();
        (colors[v], nb)
    }

    fn maps_onto(&self, other: &Colored, f: &[usize]) -> bool {
        self.arcs.len() == other.arcs.len()
            && (0..self.n()).all(|v| self.colors[v] == other.colors[f[v]])
            && self.arcs.iter().all(|(&(s, t), &k)| other.arcs.get(&(f[s], f[t])) == Some(&k))
    }
}

fn histogram(colors: &[u32], k: usize) -> Vec<usize> {
    let mut h = vec![0; k];
    for &c in colors {
        h[c as usize] += 1;
    }
    h
}

/// Refines `c1`, `c2` jointly until the number of classes stops growing.
/// Color ids are ranks of signatures sorted over both graphs, so they mean
/// the same thing on both sides. Returns the class count, or `None` as soon
/// as the two class histograms differ.
fn refine(g1: &Colored, g2: &Colored, c1: &mut Vec<u32>, c2: &mut Vec<u32>) -> Option<usize> {
    let mut classes = {
        let mut all: Vec<u32> = c1.iter().chain(c2.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    loop {
        let s1: Vec<_> = (0..g1.n()).map(|v| g1.signature(v, c1)).collect();
        let s2: Vec<_> = (0..g2.n()).map(|v| g2.signature(v, c2)).collect();
        let mut ids: BTreeMap<&(u32, Vec<(u8, u32, u32)>), u32> = BTreeMap::new();
        for s in s1.iter().chain(&s2) {
            ids.insert(s, 0);
        }
        for (rank, id) in ids.values_mut().enumerate() {
            *id = rank as u32;
        }
        let k = ids.len();
        *c1 = s1.iter().map(|s| ids[s]).collect();
        *c2 = s2.iter().map(|s| ids[s]).collect();
        if histogram(c1, k) != histogram(c2, k) {
            return None;
        }
        if k == classes {
            return Some(k);
        }
        classes = k;
    }
}

fn search(g1: &Colored, g2: &Colored, mut c1: Vec<u32>, mut c2: Vec<u32>) -> Option<Vec<usize>> {
    let k = refine(g1, g2, &mut c1, &mut c2)?;
    let sizes = histogram(&c1, k);
    let target = (0..k).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let mut pos = vec![0; k];
        for (w, &c) in c2.iter().enumerate() {
            pos[c as usize] = w;
        }
        let f: Vec<usize> = c1.iter().map(|&c| pos[c as usize]).collect();
        return g1.maps_onto(g2, &f).then_some(f);
    };
    let cell = cell as u32;
    let v = c1.iter().position(|&c| c == cell).unwrap();
    let fresh = k as u32;
    for w in (0..g2.n()).filter(|&w| c2[w] == cell) {
        let mut d1 = c1.clone();
        let mut d2 = c2.clone();
        d1[v] = fresh;
        d2[w] = fresh;
        if let Some(f) = search(g1, g2, d1, d2) {
            return Some(f);
        }
    }
    None
}

fn isomorphism(g1: &Colored, g2: &Colored) -> Option<VertexBijection> {
    if g1.n() != g2.n() || g1.arcs.len() != g2.arcs.len() {
        return None;
    }
    let f = search(g1, g2, g1.colors.clone(), g2.colors.clone())?;
    Some(VertexBijection::new(f).expect("search yields a permutation"))
}

/// An edge-preserving bijection `g1 → g2`, if one exists.
pub fn graph_iso(g1: &Graph, g2: &Graph) -> Option<VertexBijection> {
    isomorphism(&Colored::from_graph(g1), &Colored::from_graph(g2))
}

/// A bijection `m1 → m2` preserving sorts, arcs and multiplicities, if one exists.
pub fn multigraph_iso(m1: &DiMultigraph, m2: &DiMultigraph) -> Option<VertexBijection> {
    if m1.n_elem() != m2.n_elem() || m1.n_triple() != m2.n_triple() {
        return None;
    }
    isomorphism(&Colored::from_multigraph(m1), &Colored::from_multigraph(m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::read_multigraph;

    /// Independent oracle: try every permutation.
    fn brute_iso(g1: &Graph, g2: &Graph) -> bool {
        fn rec(g1: &Graph, g2: &Graph, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let v = f.len();
            if v == g1.n() {
                return g1.is_isomorphism(g2, &VertexBijection::new(f.clone()).unwrap());
            }
            for w in 0..g2.n() {
                if !used[w] {
                    used[w] = true;
                    f.push(w);
                    if rec(g1, g2, f, used) {
                        return true;
                    }
                    f.pop();
                    used[w] = false;
                }
            }
            false
        }
        g1.n() == g2.n() && rec(g1, g2, &mut Vec::new(), &mut vec![false; g2.n()])
    }

    #[test]
    fn triangle_vs_path() {
        assert!(graph_iso(&Graph::complete(3), &Graph::path(3)).is_none());
    }

    #[test]
    fn relabeled_four_cycle() {
        let a = Graph::cycle(4);
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let f = graph_iso(&a, &b).expect("isomorphic");
        assert!(a.is_isomorphism(&b, &f));
    }

    /// Partition all 64 labeled graphs on 4 vertices; 11 classes.
    #[test]
    fn eleven_classes_on_four_vertices() {
        let all = Graph::all_labeled(4);
        let mut reps: Vec<&Graph> = Vec::new();
        for g in &all {
            if !reps.iter().any(|r| graph_iso(r, g).is_some()) {
                reps.push(g);
            }
        }
        assert_eq!(reps.len(), 11);
    }

    #[test]
    fn agrees_with_brute_force_and_witnesses_check() {
        for n in 0..=4 {
            let all = Graph::all_labeled(n);
            for a in &all {
                for b in &all {
                    let got = graph_iso(a, b);
                    assert_eq!(got.is_some(), brute_iso(a, b));
                    if let Some(f) = got {
                        assert!(a.is_isomorphism(b, &f));
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_relation_on_small_corpus() {
        let all = Graph::all_labeled(4);
        let corpus: Vec<&Graph> = all.iter().step_by(3).collect();
        for a in &corpus {
            assert!(graph_iso(a, a).is_some());
            for b in &corpus {
                if let Some(f) = graph_iso(a, b) {
                    assert!(b.is_isomorphism(a, &f.inverse()));
                    for c in &corpus {
                        if let Some(h) = graph_iso(b, c) {
                            assert!(a.is_isomorphism(c, &f.then(&h)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // C6 vs two triangles: both 2-regular, refinement alone cannot split them
        let c6 = Graph::cycle(6);
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(graph_iso(&c6, &tt).is_none());
        let c6b = c6.relabel(&VertexBijection::new(vec![3, 5, 1, 0, 2, 4]).unwrap()).unwrap();
        let f = graph_iso(&c6, &c6b).unwrap();
        assert!(c6.is_isomorphism(&c6b, &f));
    }

    #[test]
    fn deterministic_witness() {
        let a = Graph::cycle(5);
        let b = a.relabel(&VertexBijection::new(vec![4, 2, 0, 3, 1]).unwrap()).unwrap();
        assert_eq!(graph_iso(&a, &b), graph_iso(&a, &b));
    }

    #[test]
    fn multigraph_identity_and_multiplicity_change() {
        let m = read_multigraph("2 2\ne1 t1 1\ne2 t1 2\nt1 e1 1\ne1 t2 1\ne2 t2 1\n").unwrap();
        let f = multigraph_iso(&m, &m).unwrap();
        assert!(f.is_identity());
        let m2 = read_multigraph("2 2\ne1 t1 2\ne2 t1 2\nt1 e1 1\ne1 t2 1\ne2 t2 1\n").unwrap();
        assert!(multigraph_iso(&m, &m2).is_none());
    }

    #[test]
    fn multigraph_respects_sorts_and_direction() {
        let a = read_multigraph("1 1\ne1 t1 1\n").unwrap();
        let b = read_multigraph("1 1\nt1 e1 1\n").unwrap();
        assert!(multigraph_iso(&a, &b).is_none());
        let c = read_multigraph("2 0\ne1 e2 1\n").unwrap();
        assert!(multigraph_iso(&a, &c).is_none());
    }
}
