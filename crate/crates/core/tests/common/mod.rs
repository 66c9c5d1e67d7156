//! Independent reference implementations shared by the integration tests.
//!
//! None of these call the library's search, fragment or canonical-form
//! code; they enumerate pathways directly.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use pathway_assembly::graphs::{canonical_form, disjoint_union, CanonicalGraph, ColouredGraph, GraphSystem};
use pathway_assembly::strings::TextSystem;
use pathway_assembly::{Pathway, Slot};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------- chains

/// Shortest addition chain lengths for 1..=max by breadth-first search
/// over ascending chains, keeping every distinct chain of each length.
pub fn chain_lengths_bfs(max: u64) -> Vec<usize> {
    let mut best = vec![usize::MAX; max as usize + 1];
    best[1] = 0;
    let mut level: HashSet<Vec<u64>> = HashSet::from([vec![1]]);
    let mut depth = 0;
    while best[1..].iter().any(|&b| b == usize::MAX) {
        depth += 1;
        let mut next = HashSet::new();
        for c in &level {
            let top = *c.last().unwrap();
            for i in 0..c.len() {
                for j in i..c.len() {
                    let v = c[i] + c[j];
                    if v <= top || v > max {
                        continue;
                    }
                    if best[v as usize] == usize::MAX {
                        best[v as usize] = depth;
                    }
                    let mut d = c.clone();
                    d.push(v);
                    next.insert(d);
                }
            }
        }
        level = next;
    }
    best
}

// --------------------------------------------------------------- strings

fn counts(s: &[u8], alphabet: &[u8]) -> Vec<u8> {
    alphabet.iter().map(|a| s.iter().filter(|c| *c == a).count() as u8).collect()
}

fn within(x: &[u8], c: &[u8]) -> bool {
    x.iter().zip(c).all(|(a, b)| a <= b)
}

fn str_key(s: &[u8]) -> (usize, &[u8]) {
    (s.len(), s)
}

struct StringSearch<'a> {
    alphabet: &'a [u8],
    target_counts: Vec<u8>,
    len: usize,
    wanted: &'a HashSet<Vec<u8>>,
    found: HashMap<Vec<u8>, usize>,
}

impl StringSearch<'_> {
    /// Pathways of at most `limit` steps whose intermediate products
    /// increase in (length, lexicographic) order. Every pathway can be so
    /// ordered because parents are strictly shorter than products.
    fn dfs(&mut self, pool: &mut Vec<Vec<u8>>, steps: usize, limit: usize) {
        for i in 0..pool.len() {
            for j in 0..pool.len() {
                if pool[i].len() + pool[j].len() != self.len {
                    continue;
                }
                let mut p = pool[i].clone();
                p.extend_from_slice(&pool[j]);
                if self.wanted.contains(&p) {
                    self.found.entry(p).or_insert(steps + 1);
                }
            }
        }
        if steps + 1 >= limit || self.found.len() == self.wanted.len() {
            return;
        }
        let last = pool.last().unwrap().clone();
        for i in 0..pool.len() {
            for j in 0..pool.len() {
                if pool[i].len() + pool[j].len() >= self.len {
                    continue;
                }
                let mut p = pool[i].clone();
                p.extend_from_slice(&pool[j]);
                if str_key(&p) <= str_key(&last)
                    || pool.contains(&p)
                    || !within(&counts(&p, self.alphabet), &self.target_counts)
                {
                    continue;
                }
                pool.push(p);
                self.dfs(pool, steps + 1, limit);
                pool.pop();
            }
        }
    }
}

/// Exact indices of `targets`, all sharing one letter-count vector, by
/// iterative deepening over unrestricted concatenation pathways.
pub fn string_indices_same_counts(alphabet: &[u8], targets: &HashSet<Vec<u8>>) -> HashMap<Vec<u8>, usize> {
    let any = targets.iter().next().expect("non-empty group");
    let len = any.len();
    if len == 1 {
        return targets.iter().map(|t| (t.clone(), 0)).collect();
    }
    let c = counts(any, alphabet);
    let mut basis: Vec<Vec<u8>> = alphabet.iter().zip(&c).filter(|(_, &n)| n > 0).map(|(&a, _)| vec![a]).collect();
    basis.sort();
    let mut search = StringSearch {
        alphabet,
        target_counts: c,
        len,
        wanted: targets,
        found: HashMap::new(),
    };
    for limit in 1..len {
        search.dfs(&mut basis.clone(), 0, limit);
        if search.found.len() == targets.len() {
            break;
        }
    }
    assert_eq!(search.found.len(), targets.len(), "every string has index at most len - 1");
    search.found
}

pub fn string_index_oracle(alphabet: &[u8], s: &[u8]) -> usize {
    string_indices_same_counts(alphabet, &HashSet::from([s.to_vec()]))[s]
}

/// Every string of length 1..=max_len over `alphabet`.
pub fn all_strings(alphabet: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                alphabet.iter().map(move |&a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Oracle indices for every string of length 1..=max_len.
pub fn string_oracle_table(alphabet: &[u8], max_len: usize) -> HashMap<Vec<u8>, usize> {
    let mut groups: HashMap<Vec<u8>, HashSet<Vec<u8>>> = HashMap::new();
    for s in all_strings(alphabet, max_len) {
        groups.entry(counts(&s, alphabet)).or_default().insert(s);
    }
    let mut out = HashMap::new();
    for g in groups.values() {
        out.extend(string_indices_same_counts(alphabet, g));
    }
    out
}

// ---------------------------------------------------------------- graphs

/// A graph on at most five nodes with colours 0 and 1, packed as
/// `n << 15 | colours << 10 | adjacency` so that ordering by key orders
/// by node count first.
pub type SmallKey = u32;

const PAIRS: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_bit(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    PAIRS.iter().position(|&p| p == (u, v)).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    pub colours: Vec<u8>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SmallGraph {
    fn pack(&self, perm: &[usize]) -> SmallKey {
        let n = self.colours.len();
        let mut colours = 0u32;
        for (v, &c) in self.colours.iter().enumerate() {
            colours |= (c as u32) << perm[v];
        }
        let mut adj = 0u32;
        for &(u, v) in &self.edges {
            adj |= 1 << pair_bit(perm[u], perm[v]);
        }
        (n as u32) << 15 | colours << 10 | adj
    }

    /// Smallest packing over all node orders.
    pub fn key(&self) -> SmallKey {
        permutations(self.colours.len()).iter().map(|p| self.pack(p)).min().unwrap()
    }

    pub fn unpack(key: SmallKey) -> Self {
        let n = (key >> 15) as usize;
        let colours = (0..n).map(|v| ((key >> 10 >> v) & 1) as u8).collect();
        let edges = PAIRS
            .iter()
            .enumerate()
            .filter(|(b, _)| key & (1 << b) != 0)
            .map(|(_, &p)| p)
            .collect();
        Self { colours, edges }
    }

    pub fn to_coloured(&self) -> ColouredGraph {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        ColouredGraph::with_edges(self.colours.iter().map(|&c| c as u32).collect(), &edges).unwrap()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn key_size(k: SmallKey) -> usize {
    (k >> 15) as usize
}

fn key_counts(k: SmallKey) -> [usize; 2] {
    let g = SmallGraph::unpack(k);
    let ones = g.colours.iter().filter(|&&c| c == 1).count();
    [g.colours.len() - ones, ones]
}

/// Isomorphism classes of 0/1-coloured graphs on 1..=max_nodes nodes.
pub fn all_small_graphs(max_nodes: usize) -> Vec<SmallKey> {
    let mut keys = BTreeSet::new();
    for n in 1..=max_nodes {
        let pairs: Vec<(usize, usize)> = PAIRS.iter().copied().filter(|&(_, v)| v < n).collect();
        for colouring in 0u32..1 << n {
            for adj in 0u32..1 << pairs.len() {
                let g = SmallGraph {
                    colours: (0..n).map(|v| (colouring >> v & 1) as u8).collect(),
                    edges: pairs.iter().enumerate().filter(|(b, _)| adj & (1 << b) != 0).map(|(_, &p)| p).collect(),
                };
                keys.insert(g.key());
            }
        }
    }
    keys.into_iter().collect()
}

/// Every graph obtained from copies of `a` and `b` by adding any set of
/// edges between them.
fn small_compose(a: SmallKey, b: SmallKey) -> Vec<SmallKey> {
    let (ga, gb) = (SmallGraph::unpack(a), SmallGraph::unpack(b));
    let na = ga.colours.len();
    let mut colours = ga.colours.clone();
    colours.extend_from_slice(&gb.colours);
    let mut edges = ga.edges.clone();
    edges.extend(gb.edges.iter().map(|&(u, v)| (u + na, v + na)));
    let cross: Vec<(usize, usize)> = (0..na).flat_map(|u| (0..gb.colours.len()).map(move |v| (u, na + v))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << cross.len() {
        let mut e = edges.clone();
        e.extend(cross.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &p)| p));
        out.insert(
            SmallGraph {
                colours: colours.clone(),
                edges: e,
            }
            .key(),
        );
    }
    out.into_iter().collect()
}

struct GraphSearch {
    n: usize,
    counts: [usize; 2],
    memo: HashMap<(SmallKey, SmallKey), Vec<SmallKey>>,
    best: HashMap<SmallKey, usize>,
}

impl GraphSearch {
    fn compose(&mut self, a: SmallKey, b: SmallKey) -> Vec<SmallKey> {
        self.memo.entry((a, b)).or_insert_with(|| small_compose(a, b)).clone()
    }

    fn dfs(&mut self, pool: &mut Vec<SmallKey>, steps: usize, limit: usize) {
        for i in 0..pool.len() {
            for j in i..pool.len() {
                let (a, b) = (pool[i], pool[j]);
                let (ca, cb) = (key_counts(a), key_counts(b));
                if key_size(a) + key_size(b) == self.n && ca[0] + cb[0] == self.counts[0] {
                    for p in self.compose(a, b) {
                        let e = self.best.entry(p).or_insert(usize::MAX);
                        *e = (*e).min(steps + 1);
                    }
                }
            }
        }
        if steps + 1 >= limit {
            return;
        }
        let last = *pool.last().unwrap();
        for i in 0..pool.len() {
            for j in i..pool.len() {
                let (a, b) = (pool[i], pool[j]);
                let (ca, cb) = (key_counts(a), key_counts(b));
                if key_size(a) + key_size(b) >= self.n
                    || ca[0] + cb[0] > self.counts[0]
                    || ca[1] + cb[1] > self.counts[1]
                {
                    continue;
                }
                for p in self.compose(a, b) {
                    if p <= last || pool.contains(&p) {
                        continue;
                    }
                    pool.push(p);
                    self.dfs(pool, steps + 1, limit);
                    pool.pop();
                }
            }
        }
    }
}

/// Exact indices of every graph in `keys` by exhaustive pathway search
/// with unrestricted intermediate graphs. Any graph on `n` nodes can be
/// built one node at a time, so the search stops at `n - 2` steps and
/// anything not reached by then has index `n - 1`.
pub fn small_graph_indices(keys: &[SmallKey]) -> HashMap<SmallKey, usize> {
    let mut by_counts: HashMap<[usize; 2], Vec<SmallKey>> = HashMap::new();
    for &k in keys {
        by_counts.entry(key_counts(k)).or_default().push(k);
    }
    let mut out = HashMap::new();
    for (counts, group) in by_counts {
        let n = counts[0] + counts[1];
        if n == 1 {
            out.extend(group.iter().map(|&k| (k, 0)));
            continue;
        }
        let mut basis = Vec::new();
        for (c, &m) in counts.iter().enumerate() {
            if m > 0 {
                basis.push(SmallGraph {
                    colours: vec![c as u8],
                    edges: BTreeSet::new(),
                }
                .key());
            }
        }
        let mut search = GraphSearch {
            n,
            counts,
            memo: HashMap::new(),
            best: HashMap::new(),
        };
        search.dfs(&mut basis, 0, n - 2);
        for k in group {
            out.insert(k, search.best.get(&k).copied().unwrap_or(n - 1).min(n - 1));
        }
    }
    out
}

// -------------------------------------------------------- random pathways

/// A random pathway over `letters` ending at its last product.
pub fn random_string_pathway(rng: &mut ChaCha8Rng, sys: &TextSystem, max_steps: usize) -> Pathway<Vec<u32>> {
    let basis: Vec<Vec<u32>> = sys.alphabet().iter().map(|&c| vec![c]).collect();
    let mut p = Pathway::new(basis);
    let steps = rng.gen_range(1..=max_steps);
    let mut seen: HashSet<Vec<u32>> = p.basis.iter().cloned().collect();
    let mut tries = 0;
    while p.steps.len() < steps && tries < 1000 {
        tries += 1;
        let (l, r) = (random_slot(rng, &p), random_slot(rng, &p));
        let mut prod = p.get(l).unwrap().clone();
        prod.extend_from_slice(p.get(r).unwrap());
        if prod.len() <= 48 && seen.insert(prod.clone()) {
            p.push(l, r, prod);
        }
    }
    let last = p.last().unwrap().clone();
    p.prune_to(&[last])
}

/// A random pathway of coloured graphs with any cross edges, ending at
/// its last product.
pub fn random_graph_pathway(
    rng: &mut ChaCha8Rng,
    sys: &GraphSystem,
    max_steps: usize,
    max_nodes: usize,
) -> Pathway<CanonicalGraph> {
    let mut p = Pathway::new(sys.basis_graphs());
    let steps = rng.gen_range(1..=max_steps);
    let mut seen: HashSet<CanonicalGraph> = p.basis.iter().cloned().collect();
    let mut tries = 0;
    while p.steps.len() < steps && tries < 1000 {
        tries += 1;
        let (l, r) = (random_slot(rng, &p), random_slot(rng, &p));
        let (a, b) = (p.get(l).unwrap().to_graph(), p.get(r).unwrap().to_graph());
        if a.node_count() + b.node_count() > max_nodes {
            continue;
        }
        let mut cross = Vec::new();
        for u in 0..a.node_count() {
            for v in 0..b.node_count() {
                if rng.gen_bool(0.3) {
                    cross.push((u, v, *sys.labels().choose(rng).unwrap()));
                }
            }
        }
        let prod = canonical_form(&disjoint_union(&a, &b, &cross).unwrap());
        if seen.insert(prod.clone()) {
            p.push(l, r, prod);
        }
    }
    let last = p.last().unwrap().clone();
    p.prune_to(&[last])
}

fn random_slot<O: Clone + PartialEq>(rng: &mut ChaCha8Rng, p: &Pathway<O>) -> Slot {
    let k = rng.gen_range(0..p.basis.len() + p.steps.len());
    if k < p.basis.len() {
        Slot::Basis(k)
    } else {
        Slot::Step(k - p.basis.len())
    }
}

trait BasisGraphs {
    fn basis_graphs(&self) -> Vec<CanonicalGraph>;
}

impl BasisGraphs for GraphSystem {
    fn basis_graphs(&self) -> Vec<CanonicalGraph> {
        use pathway_assembly::AssemblySystem;
        self.basis()
    }
}

// ------------------------------------------------------------- fixtures

/// The three-colour graph pathway: colours red 0, green 1, blue 2.
/// Red counts along it are 1,0,0,2,2,4,2,6 and node counts 1,1,1,2,3,6,3,9.
pub fn three_colour_pathway() -> Pathway<CanonicalGraph> {
    let doc: pathway_assembly::PathwayDoc =
        serde_json::from_str(include_str!("../fixtures/three_colour_pathway.json")).unwrap();
    doc.to_pathway(|s| Ok(canonical_form(&pathway_assembly::graphs::parse_rendered(s)?)))
        .unwrap()
}

// ---------------------------------------------------------------- groups

/// Exact co-assembly index of `targets` in the group with Cayley table
/// `table`, from the generators `gens`, by iterative deepening over
/// pools of elements. Each step adds one product `x*y`, `y*x` or either
/// with `x` and/or `y` inverted. `None` if some target is unreachable.
pub fn group_index_oracle(table: &[Vec<usize>], gens: &[usize], targets: &[usize]) -> Option<usize> {
    let n = table.len();
    let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))?;
    let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a][b] == e).unwrap()).collect();
    let products = |a: usize, b: usize| {
        let (ai, bi) = (inv[a], inv[b]);
        [(a, b), (ai, b), (a, bi), (ai, bi)]
            .into_iter()
            .flat_map(|(x, y)| [table[x][y], table[y][x]])
            .collect::<BTreeSet<usize>>()
    };
    fn dfs(
        pool: &mut Vec<usize>,
        targets: &[usize],
        left: usize,
        products: &dyn Fn(usize, usize) -> BTreeSet<usize>,
    ) -> bool {
        let missing = targets.iter().filter(|t| !pool.contains(t)).count();
        if missing == 0 {
            return true;
        }
        if missing > left {
            return false;
        }
        let mut next = BTreeSet::new();
        for i in 0..pool.len() {
            for j in i..pool.len() {
                next.extend(products(pool[i], pool[j]));
            }
        }
        for p in next {
            if pool.contains(&p) {
                continue;
            }
            pool.push(p);
            let ok = dfs(pool, targets, left - 1, products);
            pool.pop();
            if ok {
                return true;
            }
        }
        false
    }
    let mut pool: Vec<usize> = gens.to_vec();
    (0..=n).find(|&d| dfs(&mut pool, targets, d, &products))
}
