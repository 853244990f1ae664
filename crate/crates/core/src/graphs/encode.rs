use super::{DiMultigraph, Graph, GraphError, Sort};

/// Largest multiplicity [`encode_simple`] accepts; `Γ(G)` never exceeds it.
pub const MAX_ENCODABLE_MULTIPLICITY: u32 = 3;

const PENDANT_LEN: usize = 3;

/// Encodes a directed multigraph as a simple undirected graph such that two
/// multigraphs are isomorphic iff their encodings are.
///
/// Vertex `v` of the input keeps index `v`. Each arc `u → v` of multiplicity
/// `k` becomes `k` paths `u − x − y − v` where `x` carries a pendant leaf
/// marking the tail side. A vertex of sort `s` gets `s + 1` pendant paths of
/// length 3 (one for elements, two for triples).
///
/// The encoding is decodable: leaves hanging off a degree-3 vertex are tail
/// markers, leaves hanging off a degree-2 vertex end pendant paths, and the
/// original vertices sit exactly three steps up each pendant path.
pub fn encode_simple(m: &DiMultigraph) -> Result<Graph, GraphError> {
    if let Some((src, dst, mult)) = m.arcs().find(|&(_, _, k)| k > MAX_ENCODABLE_MULTIPLICITY) {
        return Err(GraphError::MultiplicityTooLarge { src, dst, mult, max: MAX_ENCODABLE_MULTIPLICITY });
    }
    let n = m.vertex_count();
    let pendants: usize = (0..n).map(|v| pendant_count(m.sort(v))).sum();
    let units: usize = m.arcs().map(|(_, _, k)| k as usize).sum();
    let total = n + pendants * PENDANT_LEN + units * 3;

    let mut edges = Vec::with_capacity(pendants * PENDANT_LEN + units * 4);
    let mut next = n;
    for v in 0..n {
        for _ in 0..pendant_count(m.sort(v)) {
            let mut prev = v;
            for _ in 0..PENDANT_LEN {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    for (u, v, k) in m.arcs() {
        for _ in 0..k {
            let (x, y, leaf) = (next, next + 1, next + 2);
            next += 3;
            edges.extend([(u, x), (x, y), (y, v), (x, leaf)]);
        }
    }
    debug_assert_eq!(next, total);
    Graph::from_edges(total, &edges)
}

fn pendant_count(s: Sort) -> usize {
    match s {
        Sort::Element => 1,
        Sort::Triple => 2,
    }
}
