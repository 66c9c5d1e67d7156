//! Colour-preserving canonical labelling by individualization and
//! refinement, with automorphism pruning.
//!
//! Every leaf of the search tree is a discrete ordered partition, that
//! is, a vertex order. The canonical form is the smallest encoding over
//! all leaves. Leaves with equal encodings give automorphisms, which
//! prune sibling subtrees in the same orbit and let the search jump back
//! to the node where the two leaves' paths diverge.

use super::{CanonicalGraph, ColouredGraph};

/// A canonical vertex order: `order[i]` is the vertex placed at position `i`.
pub fn canonical_order(g: &ColouredGraph) -> Vec<usize> {
    let n = g.node_count();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut ctx = Ctx {
        g,
        n,
        adj: g.adjacency(),
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_colour: Vec<(u32, usize)> = (0..n).map(|v| (g.colour(v), v)).collect();
    by_colour.sort_unstable();
    for (c, v) in by_colour {
        match cells.last_mut() {
            Some(cell) if g.colour(cell[0]) == c => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut path = Vec::new();
    ctx.search(cells, &mut path);
    ctx.best.expect("at least one leaf").perm
}

pub fn canonical_form(g: &ColouredGraph) -> CanonicalGraph {
    let order = canonical_order(g);
    CanonicalGraph::encode(g, &order)
}

struct Leaf {
    code: CanonicalGraph,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Ctx<'g> {
    g: &'g ColouredGraph,
    n: usize,
    adj: Vec<Vec<(usize, u8)>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Ctx<'_> {
    /// Splits cells by neighbour-cell signatures until stable. The cell
    /// order depends only on the graph up to isomorphism.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let mut cell_of = vec![0u32; self.n];
        loop {
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci as u32;
                }
            }
            let mut changed = false;
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sigs: Vec<(Vec<(u32, u8)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut s: Vec<(u32, u8)> =
                            self.adj[v].iter().map(|&(w, l)| (cell_of[w], l)).collect();
                        s.sort_unstable();
                        (s, v)
                    })
                    .collect();
                sigs.sort();
                changed |= sigs[0].0 != sigs[sigs.len() - 1].0;
                let mut start = 0;
                for k in 1..=sigs.len() {
                    if k == sigs.len() || sigs[k].0 != sigs[start].0 {
                        next.push(sigs[start..k].iter().map(|x| x.1).collect());
                        start = k;
                    }
                }
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn orbit_roots(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.autos {
            if path.iter().any(|&v| a[v] != v) {
                continue;
            }
            for v in 0..self.n {
                let (x, y) = (find(&mut parent, v), find(&mut parent, a[v]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    /// Returns `Some(level)` to abandon the search up to the node whose
    /// path has that length.
    fn search(&mut self, mut cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        self.refine(&mut cells);
        if cells.len() == self.n {
            let perm: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            return self.leaf(perm, path);
        }
        let t = cells
            .iter()
            .position(|c| c.len() > 1)
            .expect("non-discrete partition");
        let members = cells[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() {
                let roots = self.orbit_roots(path);
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(vec![v]);
            child.push(members.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[t + 1..]);
            path.push(v);
            let r = self.search(child, path);
            path.pop();
            explored.push(v);
            if let Some(level) = r {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, perm: Vec<usize>, path: &[usize]) -> Option<usize> {
        let code = CanonicalGraph::encode(self.g, &perm);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                code: code.clone(),
                perm: perm.clone(),
                path: path.to_vec(),
            };
            self.first = Some(leaf);
            self.best = Some(Leaf {
                code,
                perm,
                path: path.to_vec(),
            });
            return None;
        };
        let best = self.best.as_ref().expect("set with first");
        let twin = if code == first.code {
            Some((first.perm.clone(), common_prefix(&first.path, path)))
        } else if code == best.code {
            Some((best.perm.clone(), common_prefix(&best.path, path)))
        } else {
            None
        };
        if let Some((other, level)) = twin {
            let mut gamma = vec![0; self.n];
            for i in 0..self.n {
                gamma[other[i]] = perm[i];
            }
            self.autos.push(gamma);
            return Some(level);
        }
        if code < best.code {
            self.best = Some(Leaf {
                code,
                perm,
                path: path.to_vec(),
            });
        }
        None
    }
}
