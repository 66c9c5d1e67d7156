//! Straight-line programs: pathways for long strings.
//!
//! [`build_slp`] tiles a string longest-repeat-first using a suffix
//! array, recurses into each distinct tile and each gap, and joins the
//! pieces with a balanced tree. Nodes with equal content are shared.

use std::collections::{BTreeMap, HashMap};

use super::suffix::{lcp_array, lcp_intervals, suffix_array};
use super::Str;
use crate::error::{AssemblyError, Result};
use crate::pathway::{Pathway, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlpKind {
    Leaf(u32),
    /// Concatenation of two earlier nodes, left then right.
    Pair(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlpNode {
    pub len: usize,
    pub kind: SlpKind,
}

/// Every node's children have smaller ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Slp {
    pub nodes: Vec<SlpNode>,
    pub root: Option<usize>,
}

impl Slp {
    /// Number of concatenation steps.
    pub fn steps(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, SlpKind::Pair(..)))
            .count()
    }

    pub fn expand(&self, id: usize) -> Str {
        let mut out = Vec::with_capacity(self.nodes[id].len);
        let mut stack = vec![id];
        while let Some(k) = stack.pop() {
            match self.nodes[k].kind {
                SlpKind::Leaf(c) => out.push(c),
                SlpKind::Pair(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    pub fn text(&self) -> Str {
        self.root.map(|r| self.expand(r)).unwrap_or_default()
    }

    /// The equivalent pathway, leaves as basis and pairs as steps in id
    /// order.
    pub fn to_pathway(&self) -> Pathway<Str> {
        let mut leaves: Vec<(u32, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n.kind {
                SlpKind::Leaf(c) => Some((c, i)),
                SlpKind::Pair(..) => None,
            })
            .collect();
        leaves.sort();
        let mut slot = vec![Slot::Basis(0); self.nodes.len()];
        let mut p = Pathway::new(leaves.iter().map(|&(c, _)| vec![c]).collect());
        for (k, &(_, i)) in leaves.iter().enumerate() {
            slot[i] = Slot::Basis(k);
        }
        let mut content: Vec<Option<Str>> = vec![None; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            match n.kind {
                SlpKind::Leaf(c) => content[i] = Some(vec![c]),
                SlpKind::Pair(l, r) => {
                    let mut v = content[l].clone().expect("child first");
                    v.extend_from_slice(content[r].as_ref().expect("child first"));
                    slot[i] = p.push(slot[l], slot[r], v.clone());
                    content[i] = Some(v);
                }
            }
        }
        match self.root {
            Some(r) => {
                let t = content[r].clone().expect("root built");
                p.prune_to(&[t])
            }
            None => p,
        }
    }

    /// Reads a concatenation pathway whose last entry is the text. Each
    /// step's product must be one of its parents followed by the other.
    pub fn from_pathway(p: &Pathway<Str>, text: &[u32]) -> Result<Slp> {
        if text.is_empty() {
            return Ok(Slp::default());
        }
        let mut slp = Slp::default();
        let mut ids = Vec::with_capacity(p.basis.len());
        for b in &p.basis {
            if b.len() != 1 {
                return Err(AssemblyError::InvalidArgument(
                    "basis entries must be single characters".into(),
                ));
            }
            ids.push(slp.nodes.len());
            slp.nodes.push(SlpNode {
                len: 1,
                kind: SlpKind::Leaf(b[0]),
            });
        }
        let nb = ids.len();
        let id_of = |ids: &Vec<usize>, s: Slot| match s {
            Slot::Basis(k) => ids[k],
            Slot::Step(j) => ids[nb + j],
        };
        for (j, s) in p.steps.iter().enumerate() {
            let (a, b) = (p.get(s.left).expect("valid"), p.get(s.right).expect("valid"));
            let (l, r) = (id_of(&ids, s.left), id_of(&ids, s.right));
            let prod = &s.product;
            let kind = if prod.len() == a.len() + b.len() && prod[..a.len()] == a[..] && prod[a.len()..] == b[..] {
                SlpKind::Pair(l, r)
            } else if prod.len() == a.len() + b.len() && prod[..b.len()] == b[..] && prod[b.len()..] == a[..] {
                SlpKind::Pair(r, l)
            } else {
                return Err(AssemblyError::Unsupported(format!(
                    "step {} is not a plain concatenation",
                    j + 1
                )));
            };
            ids.push(slp.nodes.len());
            slp.nodes.push(SlpNode {
                len: prod.len(),
                kind,
            });
        }
        let root = p
            .objects()
            .position(|o| o.as_slice() == text)
            .ok_or_else(|| AssemblyError::InvalidArgument("pathway does not build the text".into()))?;
        slp.root = Some(ids[root]);
        Ok(slp)
    }
}

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 0x1f35_a7c9_d3e1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

struct PrefixHash {
    h: Vec<u64>,
    pow: Vec<u64>,
}

impl PrefixHash {
    fn new(s: &[u32]) -> Self {
        let mut h = Vec::with_capacity(s.len() + 1);
        let mut pow = Vec::with_capacity(s.len() + 1);
        h.push(0);
        pow.push(1);
        for (i, &c) in s.iter().enumerate() {
            h.push((mul_mod(h[i], BASE) + c as u64 + 1) % MODULUS);
            pow.push(mul_mod(pow[i], BASE));
        }
        Self { h, pow }
    }

    fn get(&self, start: usize, len: usize) -> u64 {
        let a = self.h[start + len];
        let b = mul_mod(self.h[start], self.pow[len]);
        (a + MODULUS - b) % MODULUS
    }
}

struct Builder<'t> {
    text: &'t [u32],
    hash: PrefixHash,
    starts: Vec<usize>,
    nodes: Vec<SlpNode>,
    index: HashMap<(u64, usize), Vec<usize>>,
}

enum Task {
    Expand(usize, usize),
    Combine(usize, usize, Vec<(usize, usize)>),
}

impl<'t> Builder<'t> {
    fn find(&self, start: usize, len: usize) -> Option<usize> {
        let key = (self.hash.get(start, len), len);
        let want = &self.text[start..start + len];
        self.index.get(&key)?.iter().copied().find(|&id| {
            let s = self.starts[id];
            &self.text[s..s + len] == want
        })
    }

    fn add(&mut self, start: usize, len: usize, kind: SlpKind) -> usize {
        let id = self.nodes.len();
        self.nodes.push(SlpNode { len, kind });
        self.starts.push(start);
        self.index
            .entry((self.hash.get(start, len), len))
            .or_default()
            .push(id);
        id
    }

    fn build(&mut self, start: usize, len: usize) -> usize {
        let mut stack = vec![Task::Expand(start, len)];
        while let Some(task) = stack.pop() {
            match task {
                Task::Expand(s, l) => {
                    if self.find(s, l).is_some() {
                        continue;
                    }
                    if l == 1 {
                        self.add(s, 1, SlpKind::Leaf(self.text[s]));
                        continue;
                    }
                    let pieces = self.tile(s, l);
                    stack.push(Task::Combine(s, l, pieces.clone()));
                    for &(ps, pl) in pieces.iter().rev() {
                        stack.push(Task::Expand(ps, pl));
                    }
                }
                Task::Combine(s, l, pieces) => {
                    if self.find(s, l).is_some() {
                        continue;
                    }
                    let ids: Vec<usize> = pieces
                        .iter()
                        .map(|&(ps, pl)| self.find(ps, pl).expect("piece built"))
                        .collect();
                    self.join(&pieces, &ids, 0, pieces.len());
                }
            }
        }
        self.find(start, len).expect("built")
    }

    fn join(&mut self, pieces: &[(usize, usize)], ids: &[usize], i: usize, j: usize) -> usize {
        if j - i == 1 {
            return ids[i];
        }
        let start = pieces[i].0;
        let len = pieces[j - 1].0 + pieces[j - 1].1 - start;
        if let Some(id) = self.find(start, len) {
            return id;
        }
        let mid = (i + j) / 2;
        let l = self.join(pieces, ids, i, mid);
        let r = self.join(pieces, ids, mid, j);
        self.add(start, len, SlpKind::Pair(l, r))
    }

    /// Chooses non-overlapping repeated tiles, longest first, and returns
    /// the tiles and the gaps between them in text order.
    fn tile(&self, start: usize, len: usize) -> Vec<(usize, usize)> {
        let chars = || (start..start + len).map(|i| (i, 1)).collect::<Vec<_>>();
        if len < 4 {
            return chars();
        }
        let local = &self.text[start..start + len];
        let sa = suffix_array(local);
        let lcp = lcp_array(local, &sa);
        let mut ivs = lcp_intervals(&lcp, 2);
        ivs.sort_by(|a, b| b.lcp.cmp(&a.lcp).then(a.lb.cmp(&b.lb)));
        let mut covered: BTreeMap<usize, usize> = BTreeMap::new();
        let mut free = len;
        let mut positions = Vec::new();
        let mut chosen = Vec::new();
        for iv in ivs {
            let l = iv.lcp;
            if free < 4 {
                break;
            }
            if free < 2 * l {
                continue;
            }
            positions.clear();
            positions.extend_from_slice(&sa[iv.lb..=iv.rb]);
            positions.sort_unstable();
            chosen.clear();
            let mut next_ok = 0;
            for &p in &positions {
                if p < next_ok {
                    continue;
                }
                let clash = covered
                    .range(..p + l)
                    .next_back()
                    .is_some_and(|(_, &end)| end > p);
                if !clash {
                    chosen.push(p);
                    next_ok = p + l;
                }
            }
            if chosen.len() >= 2 {
                for &p in &chosen {
                    covered.insert(p, p + l);
                    free -= l;
                }
            }
        }
        if covered.is_empty() {
            return chars();
        }
        let mut pieces = Vec::new();
        let mut at = 0;
        for (&s, &e) in &covered {
            if s > at {
                pieces.push((start + at, s - at));
            }
            pieces.push((start + s, e - s));
            at = e;
        }
        if at < len {
            pieces.push((start + at, len - at));
        }
        pieces
    }
}

/// Builds a straight-line program for `text`.
pub fn build_slp(text: &[u32]) -> Slp {
    if text.is_empty() {
        return Slp::default();
    }
    let mut b = Builder {
        text,
        hash: PrefixHash::new(text),
        starts: Vec::new(),
        nodes: Vec::new(),
        index: HashMap::new(),
    };
    let root = b.build(0, text.len());
    Slp {
        nodes: b.nodes,
        root: Some(root),
    }
}
