use std::collections::{BTreeSet, HashMap};

use super::{canonical_form, compose_graphs, CanonicalGraph, ColouredGraph};
use crate::error::{AssemblyError, Result};
use crate::system::{AssemblySystem, MeasureSpec, TargetSpace};

/// Largest `|a|·|b|` for which [`AssemblySystem::compose`] lists products.
pub const DEFAULT_CROSS_PAIR_LIMIT: usize = 16;

/// Largest target (in nodes) whose subgraphs are enumerated for a
/// target-directed search.
pub const DEFAULT_FRAGMENT_LIMIT: usize = 14;

const EMBED_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSystem {
    palette: Vec<u32>,
    labels: Vec<u8>,
    pub cross_pair_limit: usize,
    pub fragment_limit: usize,
}

impl GraphSystem {
    /// A system with one single-node basis graph per palette colour.
    /// Cross edges may carry any of `labels` (plain graphs use `[0]`).
    pub fn new(palette: impl IntoIterator<Item = u32>, labels: impl IntoIterator<Item = u8>) -> Result<Self> {
        let palette: BTreeSet<u32> = palette.into_iter().collect();
        if palette.is_empty() {
            return Err(AssemblyError::InvalidArgument("palette is empty".into()));
        }
        let mut labels: BTreeSet<u8> = labels.into_iter().collect();
        if labels.is_empty() {
            labels.insert(0);
        }
        Ok(Self {
            palette: palette.into_iter().collect(),
            labels: labels.into_iter().collect(),
            cross_pair_limit: DEFAULT_CROSS_PAIR_LIMIT,
            fragment_limit: DEFAULT_FRAGMENT_LIMIT,
        })
    }

    /// The colours and edge labels that occur in `g`.
    pub fn for_graph(g: &ColouredGraph) -> Self {
        let palette: Vec<u32> = if g.node_count() == 0 { vec![0] } else { g.colours().to_vec() };
        Self::new(palette, g.edges().map(|e| e.2)).expect("non-empty palette")
    }

    pub fn palette(&self) -> &[u32] {
        &self.palette
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    fn colour_profile(&self, g: &CanonicalGraph) -> Vec<u64> {
        let mut counts = vec![0u64; self.palette.len()];
        for &c in g.to_graph().colours() {
            if let Ok(k) = self.palette.binary_search(&c) {
                counts[k] += 1;
            }
        }
        counts
    }
}

impl AssemblySystem for GraphSystem {
    type Object = CanonicalGraph;

    fn basis(&self) -> Vec<CanonicalGraph> {
        self.palette.iter().map(|&c| CanonicalGraph::single(c)).collect()
    }

    fn compose(&self, a: &CanonicalGraph, b: &CanonicalGraph) -> Result<Vec<CanonicalGraph>> {
        let pairs = a.node_count() * b.node_count();
        if pairs > self.cross_pair_limit {
            return Err(AssemblyError::BudgetExceeded(format!(
                "{pairs} cross pairs exceed the limit of {}",
                self.cross_pair_limit
            )));
        }
        compose_graphs(&a.to_graph(), &b.to_graph(), &self.labels)
    }

    fn can_compose(&self, a: &CanonicalGraph, b: &CanonicalGraph, product: &CanonicalGraph) -> Result<bool> {
        if a.node_count() + b.node_count() != product.node_count() {
            return Ok(false);
        }
        let (pa, pb, pp) = (self.colour_profile(a), self.colour_profile(b), self.colour_profile(product));
        if pa.iter().zip(&pb).map(|(x, y)| x + y).ne(pp.iter().copied()) {
            return Ok(false);
        }
        let p = product.to_graph();
        if p.edges().any(|e| self.labels.binary_search(&e.2).is_err()) {
            return Ok(false);
        }
        let mut budget = EMBED_BUDGET;
        split_exists(&p, &a.to_graph(), b, &mut budget)
    }

    fn render(&self, x: &CanonicalGraph) -> String {
        x.to_string()
    }

    fn size(&self, x: &CanonicalGraph) -> Option<u64> {
        Some(x.node_count() as u64)
    }

    fn is_basis(&self, x: &CanonicalGraph) -> bool {
        x.node_count() == 1 && self.palette.binary_search(&x.to_graph().colour(0)).is_ok()
    }

    fn measures(&self) -> Vec<MeasureSpec<CanonicalGraph>> {
        let basis = self.basis();
        self.palette
            .iter()
            .zip(&basis)
            .map(|(c, b)| MeasureSpec::indicator(format!("colour {c}"), &basis, b))
            .collect()
    }

    fn target_space<'a>(
        &'a self,
        targets: &[CanonicalGraph],
    ) -> Result<Option<Box<dyn TargetSpace<CanonicalGraph> + 'a>>> {
        Ok(Some(Box::new(GraphSpace::build(targets, self.fragment_limit)?)))
    }
}

/// Whether `p` splits into an induced copy of `a` and an induced copy of
/// `b` on the remaining nodes. Cross edges are unconstrained, so this is
/// exactly membership of `p` in the composition of `a` and `b`.
fn split_exists(p: &ColouredGraph, a: &ColouredGraph, b: &CanonicalGraph, budget: &mut u64) -> Result<bool> {
    let na = a.node_count();
    if na == 0 {
        return Ok(canonical_form(p) == *b);
    }
    let a_adj = a.adjacency();
    let p_adj = p.adjacency();
    // Breadth-first order keeps each new node adjacent to a placed one.
    let mut order = Vec::with_capacity(na);
    let mut anchor = vec![None; na];
    let mut seen = vec![false; na];
    let mut starts: Vec<usize> = (0..na).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(a_adj[v].len()));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in &a_adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    anchor[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; na];
    let mut used = vec![false; p.node_count()];
    let mut e = Embed {
        p,
        a,
        b,
        a_adj: &a_adj,
        p_adj: &p_adj,
        order: &order,
        anchor: &anchor,
        budget,
    };
    e.extend(0, &mut map, &mut used)
}

struct Embed<'x> {
    p: &'x ColouredGraph,
    a: &'x ColouredGraph,
    b: &'x CanonicalGraph,
    a_adj: &'x [Vec<(usize, u8)>],
    p_adj: &'x [Vec<(usize, u8)>],
    order: &'x [usize],
    anchor: &'x [Option<usize>],
    budget: &'x mut u64,
}

impl Embed<'_> {
    fn extend(&mut self, k: usize, map: &mut [usize], used: &mut [bool]) -> Result<bool> {
        if *self.budget == 0 {
            return Err(AssemblyError::BudgetExceeded(
                "subgraph embedding search exceeded its budget".into(),
            ));
        }
        *self.budget -= 1;
        if k == self.order.len() {
            let rest: Vec<usize> = (0..used.len()).filter(|&v| !used[v]).collect();
            return Ok(canonical_form(&self.p.induced(&rest)) == *self.b);
        }
        let v = self.order[k];
        let cands: Vec<usize> = match self.anchor[v] {
            Some(u) => self.p_adj[map[u]].iter().map(|x| x.0).collect(),
            None => (0..self.p.node_count()).collect(),
        };
        for c in cands {
            if used[c] || self.p.colour(c) != self.a.colour(v) || self.p_adj[c].len() < self.a_adj[v].len() {
                continue;
            }
            let consistent = self.order[..k]
                .iter()
                .all(|&w| self.a.edge(v, w) == self.p.edge(c, map[w]));
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            let found = self.extend(k + 1, map, used)?;
            used[c] = false;
            map[v] = usize::MAX;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Induced subgraphs of the targets up to isomorphism, with a product
/// table built from their splits. Induced subgraphs are enough: the
/// parents of any step are induced subgraphs of its product, because a
/// step only adds edges between its two parts.
struct GraphSpace {
    ids: HashMap<CanonicalGraph, u32>,
    classes: Vec<CanonicalGraph>,
    products: HashMap<(u32, u32), Vec<u32>>,
    splits: Vec<Vec<(u32, u32)>>,
}

impl GraphSpace {
    fn build(targets: &[CanonicalGraph], limit: usize) -> Result<Self> {
        let mut space = GraphSpace {
            ids: HashMap::new(),
            classes: Vec::new(),
            products: HashMap::new(),
            splits: Vec::new(),
        };
        for t in targets {
            let n = t.node_count();
            if n > limit {
                return Err(AssemblyError::BudgetExceeded(format!(
                    "a {n}-node target exceeds the fragment limit of {limit} nodes"
                )));
            }
            let g = t.to_graph();
            let full = (1usize << n) - 1;
            let mut mask_id = vec![0u32; full + 1];
            let mut reps = Vec::new();
            for mask in 1..=full {
                let nodes: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let c = canonical_form(&g.induced(&nodes));
                let next = space.classes.len() as u32;
                let id = *space.ids.entry(c.clone()).or_insert(next);
                if id == next {
                    space.classes.push(c);
                    space.splits.push(Vec::new());
                    reps.push(mask);
                }
                mask_id[mask] = id;
            }
            for mask in reps {
                let p = mask_id[mask];
                let low = mask & mask.wrapping_neg();
                let mut sub = (mask - 1) & mask;
                while sub > 0 {
                    if sub & low != 0 {
                        let (x, y) = (mask_id[sub], mask_id[mask ^ sub]);
                        let key = (x.min(y), x.max(y));
                        let prods = space.products.entry(key).or_default();
                        if !prods.contains(&p) {
                            prods.push(p);
                            space.splits[p as usize].push(key);
                        }
                    }
                    sub = (sub - 1) & mask;
                }
            }
        }
        Ok(space)
    }
}

impl TargetSpace<CanonicalGraph> for GraphSpace {
    fn contains(&self, x: &CanonicalGraph) -> bool {
        self.ids.contains_key(x)
    }

    fn compose(&self, a: &CanonicalGraph, b: &CanonicalGraph) -> Vec<CanonicalGraph> {
        let (Some(&x), Some(&y)) = (self.ids.get(a), self.ids.get(b)) else {
            return Vec::new();
        };
        self.products
            .get(&(x.min(y), x.max(y)))
            .map(|v| v.iter().map(|&p| self.classes[p as usize].clone()).collect())
            .unwrap_or_default()
    }

    fn splits(&self, x: &CanonicalGraph) -> Vec<(CanonicalGraph, CanonicalGraph)> {
        let Some(&p) = self.ids.get(x) else {
            return Vec::new();
        };
        self.splits[p as usize]
            .iter()
            .map(|&(a, b)| (self.classes[a as usize].clone(), self.classes[b as usize].clone()))
            .collect()
    }
}
