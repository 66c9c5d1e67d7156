//! Node-coloured undirected graphs. Composition is disjoint union plus
//! any set of cross edges between the two parts.
//!
//! Edges carry a small label (0 for plain graphs). Grid images with a
//! locked orientation label horizontal and vertical edges differently.

pub mod canon;
pub mod format;
pub mod grid;
mod system;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AssemblyError, Result};
use crate::pathway::{Pathway, Slot};
use crate::search::{assembly_index, assembly_index_from, IndexResult, SearchConfig};

pub use canon::{canonical_form, canonical_order};
pub use system::{GraphSystem, DEFAULT_CROSS_PAIR_LIMIT, DEFAULT_FRAGMENT_LIMIT};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ColouredGraph {
    colours: Vec<u32>,
    edges: BTreeMap<(usize, usize), u8>,
}

impl ColouredGraph {
    pub fn new(colours: Vec<u32>) -> Self {
        Self {
            colours,
            edges: BTreeMap::new(),
        }
    }

    pub fn with_edges(colours: Vec<u32>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(colours);
        for &(u, v) in edges {
            g.add_edge(u, v, 0)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: u8) -> Result<()> {
        let n = self.node_count();
        if u >= n || v >= n {
            return Err(AssemblyError::InvalidArgument(format!(
                "edge {u}-{v} refers to a missing node (graph has {n})"
            )));
        }
        if u == v {
            return Err(AssemblyError::InvalidArgument(format!("self-loop at node {u}")));
        }
        if self.edges.insert((u.min(v), u.max(v)), label).is_some() {
            return Err(AssemblyError::InvalidArgument(format!("duplicate edge {u}-{v}")));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.colours.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    /// Edges as `(u, v, label)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.edges.iter().map(|(&(u, v), &l)| (u, v, l))
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<u8> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, u8)>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for (u, v, l) in self.edges() {
            adj[u].push((v, l));
            adj[v].push((u, l));
        }
        adj
    }

    /// The subgraph induced by `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[usize]) -> ColouredGraph {
        let mut pos = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = ColouredGraph::new(nodes.iter().map(|&v| self.colours[v]).collect());
        for (u, v, l) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.edges.insert((pos[u].min(pos[v]), pos[u].max(pos[v])), l);
            }
        }
        g
    }

    /// Renames node `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ColouredGraph> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(AssemblyError::InvalidArgument("not a permutation of the nodes".into()));
        }
        let mut colours = vec![0; n];
        for i in 0..n {
            colours[perm[i]] = self.colours[i];
        }
        let mut g = ColouredGraph::new(colours);
        for (u, v, l) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.edges.insert((a.min(b), a.max(b)), l);
        }
        Ok(g)
    }

    /// Number of nodes of each colour `0..palette_len`.
    pub fn colour_counts(&self, palette_len: usize) -> Vec<u64> {
        let mut c = vec![0u64; palette_len];
        for &x in &self.colours {
            if let Some(slot) = c.get_mut(x as usize) {
                *slot += 1;
            }
        }
        c
    }
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_parts(&self.colours, self.edges()))
    }
}

fn render_parts(colours: &[u32], edges: impl Iterator<Item = (usize, usize, u8)>) -> String {
    let cs: Vec<String> = colours.iter().map(|c| c.to_string()).collect();
    let es: Vec<String> = edges
        .map(|(u, v, l)| if l == 0 { format!("{u}-{v}") } else { format!("{u}-{v}/{l}") })
        .collect();
    format!("{}:{}:{}", colours.len(), cs.join(","), es.join(","))
}

/// Disjoint union of `a` and `b` (b's nodes numbered after a's) plus the
/// given cross edges `(a_node, b_node, label)`.
pub fn disjoint_union(
    a: &ColouredGraph,
    b: &ColouredGraph,
    cross: &[(usize, usize, u8)],
) -> Result<ColouredGraph> {
    let na = a.node_count();
    let mut colours = a.colours.clone();
    colours.extend_from_slice(&b.colours);
    let mut g = ColouredGraph::new(colours);
    g.edges = a.edges.clone();
    for (u, v, l) in b.edges() {
        g.edges.insert((u + na, v + na), l);
    }
    for &(u, v, l) in cross {
        if u >= na || v >= b.node_count() {
            return Err(AssemblyError::InvalidArgument(format!(
                "cross edge {u}-{v} is out of range"
            )));
        }
        g.add_edge(u, na + v, l)?;
    }
    Ok(g)
}

/// A colour-respecting isomorphism class, stored as the encoding of a
/// canonical vertex order: node count (u16), colours (u32 each), edge
/// count (u32), then the sorted edges as (u16, u16, label). All integers
/// are big-endian. Byte order sorts by node count first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalGraph(Vec<u8>);

impl CanonicalGraph {
    /// Encodes `g` with node `order[i]` placed at position `i`.
    pub(crate) fn encode(g: &ColouredGraph, order: &[usize]) -> Self {
        let n = order.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<(u16, u16, u8)> = g
            .edges()
            .map(|(u, v, l)| {
                let (a, b) = (pos[u], pos[v]);
                (a.min(b) as u16, a.max(b) as u16, l)
            })
            .collect();
        edges.sort_unstable();
        let mut out = Vec::with_capacity(6 + 4 * n + 5 * edges.len());
        out.extend_from_slice(&(n as u16).to_be_bytes());
        for &v in order {
            out.extend_from_slice(&g.colours[v].to_be_bytes());
        }
        out.extend_from_slice(&(edges.len() as u32).to_be_bytes());
        for (a, b, l) in edges {
            out.extend_from_slice(&a.to_be_bytes());
            out.extend_from_slice(&b.to_be_bytes());
            out.push(l);
        }
        CanonicalGraph(out)
    }

    pub fn of(g: &ColouredGraph) -> Self {
        canonical_form(g)
    }

    /// Reads back a byte string produced by [`CanonicalGraph::as_bytes`].
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let g = decode(bytes)?;
        let c = canonical_form(&g);
        if c.0 != bytes {
            return Err(AssemblyError::InvalidArgument("bytes are not in canonical form".into()));
        }
        Ok(c)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn node_count(&self) -> usize {
        u16::from_be_bytes([self.0[0], self.0[1]]) as usize
    }

    pub fn to_graph(&self) -> ColouredGraph {
        decode(&self.0).expect("well-formed by construction")
    }

    pub fn single(colour: u32) -> Self {
        canonical_form(&ColouredGraph::new(vec![colour]))
    }
}

fn decode(bytes: &[u8]) -> Result<ColouredGraph> {
    let bad = || AssemblyError::InvalidArgument("malformed canonical graph bytes".into());
    let take = |at: usize, k: usize| bytes.get(at..at + k).ok_or_else(bad);
    let n = u16::from_be_bytes(take(0, 2)?.try_into().expect("2 bytes")) as usize;
    let mut at = 2;
    let mut colours = Vec::with_capacity(n);
    for _ in 0..n {
        colours.push(u32::from_be_bytes(take(at, 4)?.try_into().expect("4 bytes")));
        at += 4;
    }
    let m = u32::from_be_bytes(take(at, 4)?.try_into().expect("4 bytes")) as usize;
    at += 4;
    let mut g = ColouredGraph::new(colours);
    for _ in 0..m {
        let e = take(at, 5)?;
        let u = u16::from_be_bytes([e[0], e[1]]) as usize;
        let v = u16::from_be_bytes([e[2], e[3]]) as usize;
        g.add_edge(u, v, e[4]).map_err(|_| bad())?;
        at += 5;
    }
    if at != bytes.len() {
        return Err(bad());
    }
    Ok(g)
}

impl fmt::Debug for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_graph())
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_graph())
    }
}

/// Parses the `n:colours:edges` rendering used by `Display`, for example
/// `3:0,0,1:0-1,1-2/1`.
pub fn parse_rendered(s: &str) -> Result<ColouredGraph> {
    let bad = |m: &str| AssemblyError::InvalidArgument(format!("graph {s:?}: {m}"));
    let mut parts = s.trim().splitn(3, ':');
    let n: usize = parts
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| bad("missing node count"))?;
    let cs = parts.next().ok_or_else(|| bad("missing colours"))?;
    let colours: Vec<u32> = if cs.is_empty() {
        Vec::new()
    } else {
        cs.split(',')
            .map(|c| c.parse().map_err(|_| bad("bad colour")))
            .collect::<Result<_>>()?
    };
    if colours.len() != n {
        return Err(bad("colour count does not match node count"));
    }
    let mut g = ColouredGraph::new(colours);
    let es = parts.next().unwrap_or("");
    for e in es.split(',').filter(|e| !e.is_empty()) {
        let (pair, label) = match e.split_once('/') {
            Some((p, l)) => (p, l.parse::<u8>().map_err(|_| bad("bad edge label"))?),
            None => (e, 0),
        };
        let (u, v) = pair.split_once('-').ok_or_else(|| bad("bad edge"))?;
        let u = u.parse().map_err(|_| bad("bad edge"))?;
        let v = v.parse().map_err(|_| bad("bad edge"))?;
        g.add_edge(u, v, label)?;
    }
    Ok(g)
}

/// Every graph obtainable from `a` and `b` by disjoint union plus a
/// subset of cross edges, each cross edge carrying one of `labels`.
/// Fails when more than `2^16` cross-edge assignments would be needed.
pub fn compose_graphs(
    a: &ColouredGraph,
    b: &ColouredGraph,
    labels: &[u8],
) -> Result<Vec<CanonicalGraph>> {
    let (na, nb) = (a.node_count(), b.node_count());
    let pairs = na * nb;
    let choices = labels.len() as u64 + 1;
    let total = u32::try_from(pairs)
        .ok()
        .and_then(|p| choices.checked_pow(p))
        .filter(|&t| t <= 1 << 16)
        .ok_or_else(|| {
            AssemblyError::BudgetExceeded(format!(
                "composing graphs of {na} and {nb} nodes needs {choices}^{pairs} cross-edge sets"
            ))
        })?;
    let mut out = std::collections::BTreeSet::new();
    let mut cross = Vec::with_capacity(pairs);
    for mut code in 0..total {
        cross.clear();
        for k in 0..pairs {
            let c = (code % choices) as usize;
            code /= choices;
            if c > 0 {
                cross.push((k / nb, k % nb, labels[c - 1]));
            }
        }
        out.insert(canonical_form(&disjoint_union(a, b, &cross)?));
    }
    Ok(out.into_iter().collect())
}

/// Assembly index of `g` in the system of its own colours and labels.
pub fn graph_assembly_index(
    g: &ColouredGraph,
    search: &SearchConfig,
) -> Result<IndexResult<CanonicalGraph>> {
    let sys = GraphSystem::for_graph(g);
    assembly_index(&sys, &canonical_form(g), search)
}

/// Exhaustive search that may stop at the length of a known pathway.
pub fn graph_assembly_index_with_hint(
    sys: &GraphSystem,
    g: &ColouredGraph,
    search: &SearchConfig,
    hint: &Pathway<CanonicalGraph>,
) -> Result<IndexResult<CanonicalGraph>> {
    assembly_index_from(sys, &[canonical_form(g)], search, hint)
}

/// Builds a graph by `k` self-doublings: each step joins two copies of
/// the previous graph with one cross edge per node (`i` to its copy).
/// The result is the `k`-dimensional hypercube; the pathway has `k` steps.
pub fn doubling_pathway(k: usize, colour: u32) -> (ColouredGraph, Pathway<CanonicalGraph>) {
    let mut g = ColouredGraph::new(vec![colour]);
    let mut p = Pathway::new(vec![canonical_form(&g)]);
    let mut last = Slot::Basis(0);
    for _ in 0..k {
        let n = g.node_count();
        let cross: Vec<(usize, usize, u8)> = (0..n).map(|i| (i, i, 0)).collect();
        g = disjoint_union(&g, &g, &cross).expect("valid cross edges");
        last = p.push(last, last, canonical_form(&g));
    }
    (g, p)
}
