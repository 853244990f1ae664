//! Simple undirected graphs, directed multigraphs with two vertex sorts, their
//! text formats, and exact isomorphism oracles.
//!
//! Vertices are 0-based in memory and 1-based in every text format.

mod encode;
mod search;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

pub use encode::{encode_simple, MAX_ENCODABLE_MULTIPLICITY};
pub use search::{graph_iso, multigraph_iso};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("not a bijection on {0} points")]
    NotBijection(usize),
    #[error("arc {src} -> {dst} has multiplicity {mult}, encoding supports at most {max}")]
    MultiplicityTooLarge { src: usize, dst: usize, mult: u32, max: u32 },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

/// A permutation `i ↦ forward[i]` of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexBijection {
    forward: Vec<usize>,
}

impl VertexBijection {
    pub fn identity(n: usize) -> Self {
        VertexBijection { forward: (0..n).collect() }
    }

    pub fn new(forward: Vec<usize>) -> Result<Self, GraphError> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &x in &forward {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GraphError::NotBijection(n));
            }
        }
        Ok(VertexBijection { forward })
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.forward.len()];
        for (i, &x) in self.forward.iter().enumerate() {
            inv[x] = i;
        }
        VertexBijection { forward: inv }
    }

    /// `x ↦ next(self(x))`.
    pub fn then(&self, next: &VertexBijection) -> Self {
        VertexBijection { forward: self.forward.iter().map(|&x| next.forward[x]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Simple undirected loopless graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).unwrap();
        }
        g
    }

    /// All `2^(n(n-1)/2)` labeled graphs on `n` vertices, in order of the
    /// bitmask over lexicographic pairs.
    pub fn all_labeled(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                Graph::from_edges(n, &edges).unwrap()
            })
            .collect()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        for v in [i, j] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(GraphError::Loop(i));
        }
        if self.has_edge(i, j) {
            return Err(GraphError::DuplicateEdge(i.min(j), i.max(j)));
        }
        let pos = self.adj[i].binary_search(&j).unwrap_err();
        self.adj[i].insert(pos, j);
        let pos = self.adj[j].binary_search(&i).unwrap_err();
        self.adj[j].insert(pos, i);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adj[i].binary_search(&j).is_ok()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// The image graph under `b`.
    pub fn relabel(&self, b: &VertexBijection) -> Result<Graph, GraphError> {
        if b.len() != self.n {
            return Err(GraphError::SizeMismatch(b.len(), self.n));
        }
        let edges: Vec<_> = self.edges().map(|(i, j)| (b.apply(i), b.apply(j))).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Whether `b` carries the edge set of `self` exactly onto that of `other`.
    pub fn is_isomorphism(&self, other: &Graph, b: &VertexBijection) -> bool {
        self.n == other.n
            && b.len() == self.n
            && self.edge_count() == other.edge_count()
            && self.edges().all(|(i, j)| other.has_edge(b.apply(i), b.apply(j)))
    }
}

/// Reads the graph text format: first line `n`, then one `i j` line per edge (1-based).
pub fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = header.parse().map_err(|_| parse_err(first, format!("bad vertex count {header:?}")))?;
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "expected two vertex ids"));
        }
        let mut ids = [0usize; 2];
        for (slot, f) in ids.iter_mut().zip(&fields) {
            let v: usize = f.parse().map_err(|_| parse_err(line, format!("bad vertex id {f:?}")))?;
            if v == 0 || v > n {
                return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
            }
            *slot = v - 1;
        }
        g.add_edge(ids[0], ids[1]).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (i, j) in g.edges() {
        writeln!(out, "{} {}", i + 1, j + 1).unwrap();
    }
    out
}

/// Vertex sort of a [`DiMultigraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Element,
    Triple,
}

/// Directed multigraph whose vertices `0..n_elem` are of sort `Element` and
/// `n_elem..n_elem + n_triple` of sort `Triple`. Parallel arcs are merged by
/// summing multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiMultigraph {
    n_elem: usize,
    n_triple: usize,
    arcs: BTreeMap<(usize, usize), u32>,
}

impl DiMultigraph {
    pub fn new(n_elem: usize, n_triple: usize) -> Self {
        DiMultigraph { n_elem, n_triple, arcs: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n_elem + self.n_triple
    }

    pub fn n_elem(&self) -> usize {
        self.n_elem
    }

    pub fn n_triple(&self) -> usize {
        self.n_triple
    }

    pub fn sort(&self, v: usize) -> Sort {
        if v < self.n_elem {
            Sort::Element
        } else {
            Sort::Triple
        }
    }

    /// Adds `mult` parallel arcs `src → dst`.
    pub fn add_arc(&mut self, src: usize, dst: usize, mult: u32) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for v in [src, dst] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        if mult > 0 {
            *self.arcs.entry((src, dst)).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Multiplicity of `src → dst`, 0 when absent.
    pub fn multiplicity(&self, src: usize, dst: usize) -> u32 {
        self.arcs.get(&(src, dst)).copied().unwrap_or(0)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.arcs.iter().map(|(&(s, d), &m)| (s, d, m))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Degree counted with multiplicity, in- and out-arcs together.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.vertex_count()];
        for (s, t, m) in self.arcs() {
            d[s] += m as u64;
            d[t] += m as u64;
        }
        d
    }

    /// Whether `b` preserves sorts, arcs and multiplicities exactly.
    pub fn is_isomorphism(&self, other: &DiMultigraph, b: &VertexBijection) -> bool {
        self.n_elem == other.n_elem
            && self.n_triple == other.n_triple
            && b.len() == self.vertex_count()
            && (0..self.vertex_count()).all(|v| self.sort(v) == other.sort(b.apply(v)))
            && self.arcs.len() == other.arcs.len()
            && self.arcs().all(|(s, t, m)| other.multiplicity(b.apply(s), b.apply(t)) == m)
    }

    fn vertex_name(&self, v: usize) -> String {
        if v < self.n_elem {
            format!("e{}", v + 1)
        } else {
            format!("t{}", v - self.n_elem + 1)
        }
    }
}

/// Reads the multigraph text format: `n_elem n_triple`, then `src dst mult`
/// lines with vertices named `e<k>` / `t<k>` (1-based within each sort).
pub fn read_multigraph(text: &str) -> Result<DiMultigraph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let counts: Vec<usize> = header
        .split_whitespace()
        .map(|f| f.parse().map_err(|_| parse_err(first, format!("bad count {f:?}"))))
        .collect::<Result<_, _>>()?;
    let [n_elem, n_triple] = counts[..] else {
        return Err(parse_err(first, "expected `n_elem n_triple`"));
    };
    let mut m = DiMultigraph::new(n_elem, n_triple);
    let vertex = |line: usize, name: &str| -> Result<usize, GraphError> {
        let (base, limit, digits) = match name.split_at_checked(1) {
            Some(("e", rest)) => (0, n_elem, rest),
            Some(("t", rest)) => (n_elem, n_triple, rest),
            _ => return Err(parse_err(line, format!("bad vertex name {name:?}"))),
        };
        let k: usize = digits.parse().map_err(|_| parse_err(line, format!("bad vertex name {name:?}")))?;
        if k == 0 || k > limit {
            return Err(parse_err(line, format!("vertex {name} out of range")));
        }
        Ok(base + k - 1)
    };
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [src, dst, mult] = fields[..] else {
            return Err(parse_err(line, "expected `src dst mult`"));
        };
        let (s, d) = (vertex(line, src)?, vertex(line, dst)?);
        let mult: u32 = mult.parse().map_err(|_| parse_err(line, format!("bad multiplicity {mult:?}")))?;
        if mult == 0 {
            return Err(parse_err(line, "multiplicity must be at least 1"));
        }
        m.add_arc(s, d, mult).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(m)
}

pub fn write_multigraph(m: &DiMultigraph) -> String {
    let mut out = format!("{} {}\n", m.n_elem, m.n_triple);
    for (s, t, k) in m.arcs() {
        writeln!(out, "{} {} {}", m.vertex_name(s), m.vertex_name(t), k).unwrap();
    }
    out
}
