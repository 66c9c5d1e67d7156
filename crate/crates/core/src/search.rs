//! Exact assembly and co-assembly indices by iterative deepening.
//!
//! Sized systems build steps in ascending `(size, object)` order. Sizes
//! are additive, so every parent is smaller than its product and any
//! shortest pathway can be reordered that way; this removes permutation
//! duplicates without a visited table. Systems without sizes fall back to
//! a table of failed object sets keyed by the remaining depth.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::schonhage_lower_bound;
use crate::error::{AssemblyError, Result};
use crate::pathway::{validate_pathway, Pathway, Slot};
use crate::system::{AssemblySystem, TargetSpace};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5041_5448_5741_5953;

/// Default cap on search nodes for one query.
pub const DEFAULT_NODE_BUDGET: u64 = 400_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Exhaustive,
    Tree,
    Sampled,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Exhaustive => "exhaustive",
            Algorithm::Tree => "tree",
            Algorithm::Sampled => "sampled",
        })
    }
}

impl FromStr for Algorithm {
    type Err = AssemblyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Algorithm::Exhaustive),
            "tree" => Ok(Algorithm::Tree),
            "sampled" => Ok(Algorithm::Sampled),
            _ => Err(AssemblyError::InvalidArgument(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub max_index: Option<usize>,
    pub dedup: bool,
    pub seed: u64,
    pub sample_count: usize,
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Exhaustive,
            max_index: None,
            dedup: true,
            seed: DEFAULT_SEED,
            sample_count: 64,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexResult<O> {
    pub index: usize,
    pub witness: Pathway<O>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub exact: bool,
}

pub fn assembly_index<S: AssemblySystem>(
    sys: &S,
    x: &S::Object,
    cfg: &SearchConfig,
) -> Result<IndexResult<S::Object>> {
    co_assembly_index(sys, std::slice::from_ref(x), cfg)
}

pub fn co_assembly_index<S: AssemblySystem>(
    sys: &S,
    targets: &[S::Object],
    cfg: &SearchConfig,
) -> Result<IndexResult<S::Object>> {
    match cfg.algorithm {
        Algorithm::Exhaustive => exhaustive(sys, targets, cfg, None),
        Algorithm::Tree | Algorithm::Sampled => heuristic(sys, targets, cfg),
    }
}

/// Exhaustive search that may stop early at the length of a known valid
/// pathway once every shorter length has been refuted.
pub fn assembly_index_from<S: AssemblySystem>(
    sys: &S,
    targets: &[S::Object],
    cfg: &SearchConfig,
    hint: &Pathway<S::Object>,
) -> Result<IndexResult<S::Object>> {
    exhaustive(sys, targets, cfg, Some(hint))
}

fn prepare_targets<S: AssemblySystem>(sys: &S, targets: &[S::Object]) -> Result<Vec<S::Object>> {
    if targets.is_empty() {
        return Err(AssemblyError::InvalidArgument("no targets given".into()));
    }
    let mut t: Vec<S::Object> = targets.iter().map(|x| sys.canonicalize(x)).collect();
    t.sort_by(|a, b| crate::system::size_order(sys, a, b));
    t.dedup();
    Ok(t)
}

/// Lower bound known before searching: one step per non-basis target,
/// and the one-bit chain bound on each target's size.
pub fn a_priori_lower_bound<S: AssemblySystem>(sys: &S, targets: &[S::Object]) -> usize {
    let mut lb = targets.iter().filter(|t| !sys.is_basis(t)).count();
    for t in targets {
        if let Some(s) = sys.size(t) {
            lb = lb.max(schonhage_lower_bound(s) as usize);
        }
    }
    lb
}

fn exhaustive<S: AssemblySystem>(
    sys: &S,
    targets: &[S::Object],
    cfg: &SearchConfig,
    hint: Option<&Pathway<S::Object>>,
) -> Result<IndexResult<S::Object>> {
    let targets = prepare_targets(sys, targets)?;
    if let Some(h) = hint {
        let report = validate_pathway(sys, h)?;
        if !report.valid {
            return Err(AssemblyError::InvalidArgument(format!("hint pathway: {report}")));
        }
        if let Some(t) = targets.iter().find(|t| !h.contains(t)) {
            return Err(AssemblyError::InvalidArgument(format!(
                "hint pathway does not contain {}",
                sys.render(t)
            )));
        }
    }
    let lb = a_priori_lower_bound(sys, &targets);
    let mut ub = sys.upper_bound(&targets);
    if let Some(h) = hint {
        ub = Some(ub.map_or(h.len(), |u| u.min(h.len())));
    }
    let mut engine = Engine::new(sys, targets.clone(), cfg);
    let mut depth = lb;
    loop {
        if let Some(h) = hint {
            if depth >= h.len() {
                let witness = h.prune_to(&targets);
                let index = witness.len();
                return Ok(IndexResult {
                    index,
                    witness,
                    lower_bound: index,
                    upper_bound: index,
                    exact: true,
                });
            }
        }
        if let Some(m) = cfg.max_index {
            if depth > m {
                return Err(AssemblyError::BoundExceeded {
                    lower_bound: depth,
                    upper_bound: ub,
                });
            }
        }
        let found = match engine.run(depth) {
            Err(AssemblyError::BudgetExceeded(_)) => {
                return Err(AssemblyError::SearchIncomplete {
                    lower_bound: depth,
                    upper_bound: ub,
                })
            }
            r => r?,
        };
        if found {
            let witness = engine.witness();
            let index = witness.len();
            return Ok(IndexResult {
                index,
                witness,
                lower_bound: index,
                upper_bound: index,
                exact: true,
            });
        }
        if !engine.hit_cutoff {
            // Every branch ended for lack of moves: no pathway exists.
            return Err(AssemblyError::BoundExceeded {
                lower_bound: depth + 1,
                upper_bound: None,
            });
        }
        depth += 1;
    }
}

fn heuristic<S: AssemblySystem>(
    sys: &S,
    targets: &[S::Object],
    cfg: &SearchConfig,
) -> Result<IndexResult<S::Object>> {
    let targets = prepare_targets(sys, targets)?;
    let lb = a_priori_lower_bound(sys, &targets);
    if let Some(m) = cfg.max_index {
        if lb > m {
            return Err(AssemblyError::BoundExceeded {
                lower_bound: lb,
                upper_bound: None,
            });
        }
    }
    let witness = match cfg.algorithm {
        Algorithm::Tree => crate::tree::tree_pathway(sys, &targets, cfg)?,
        _ => {
            let samples = crate::sample::sample_pathways(sys, &targets, cfg)?;
            samples
                .into_iter()
                .min_by_key(|p| p.len())
                .ok_or_else(|| {
                    AssemblyError::BudgetExceeded("sampling found no pathway".into())
                })?
        }
    };
    let index = witness.len();
    if let Some(m) = cfg.max_index {
        if index > m {
            return Err(AssemblyError::BoundExceeded {
                lower_bound: lb,
                upper_bound: Some(index),
            });
        }
    }
    Ok(IndexResult {
        index,
        witness,
        lower_bound: lb.min(index),
        upper_bound: index,
        exact: index <= lb,
    })
}

struct Engine<'a, S: AssemblySystem> {
    sys: &'a S,
    targets: Vec<S::Object>,
    target_sizes: Vec<u64>,
    max_target_size: u64,
    sized: bool,
    ordered: bool,
    dedup: bool,
    space: Option<Box<dyn TargetSpace<S::Object> + 'a>>,
    space_built: bool,
    pool: Vec<S::Object>,
    sizes: Vec<u64>,
    parents: Vec<(usize, usize)>,
    in_pool: HashSet<S::Object>,
    basis_len: usize,
    nodes: u64,
    budget: u64,
    hit_cutoff: bool,
    failed: HashMap<Vec<S::Object>, (usize, bool)>,
}

impl<'a, S: AssemblySystem> Engine<'a, S> {
    fn new(sys: &'a S, targets: Vec<S::Object>, cfg: &SearchConfig) -> Self {
        let sizes: Option<Vec<u64>> = targets.iter().map(|t| sys.size(t)).collect();
        let sized = sizes.is_some();
        let target_sizes = sizes.unwrap_or_default();
        let basis = sys.basis();
        let basis_sizes = basis.iter().map(|b| sys.size(b).unwrap_or(1)).collect();
        Self {
            sys,
            max_target_size: target_sizes.iter().copied().max().unwrap_or(0),
            targets,
            target_sizes,
            sized,
            ordered: sized && cfg.dedup,
            dedup: cfg.dedup,
            space: None,
            space_built: false,
            in_pool: basis.iter().cloned().collect(),
            basis_len: basis.len(),
            pool: basis,
            sizes: basis_sizes,
            parents: Vec::new(),
            nodes: 0,
            budget: cfg.node_budget,
            hit_cutoff: false,
            failed: HashMap::new(),
        }
    }

    fn run(&mut self, depth: usize) -> Result<bool> {
        self.hit_cutoff = false;
        self.dfs(depth)
    }

    fn ensure_space(&mut self) -> Result<()> {
        if !self.space_built {
            self.space = self.sys.target_space(&self.targets)?;
            self.space_built = true;
        }
        Ok(())
    }

    fn key_less(&self, a: (u64, &S::Object), b: (u64, &S::Object)) -> bool {
        (a.0, a.1) < (b.0, b.1)
    }

    fn dfs(&mut self, r: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AssemblyError::BudgetExceeded(format!(
                "exhaustive search exceeded {} nodes",
                self.budget
            )));
        }
        let missing: Vec<usize> = (0..self.targets.len())
            .filter(|&k| !self.in_pool.contains(&self.targets[k]))
            .collect();
        if missing.is_empty() {
            return Ok(true);
        }
        if missing.len() > r {
            self.hit_cutoff = true;
            return Ok(false);
        }
        if self.sized {
            if self.ordered && self.pool.len() > self.basis_len {
                let last = self.pool.len() - 1;
                let last_key = (self.sizes[last], &self.pool[last]);
                if missing.iter().any(|&k| {
                    self.key_less((self.target_sizes[k], &self.targets[k]), last_key)
                }) {
                    return Ok(false);
                }
            }
            let max = *self.sizes.iter().max().expect("non-empty basis") as u128;
            let need = missing.iter().map(|&k| self.target_sizes[k]).max().unwrap_or(0);
            if r < 128 && (max << r) < need as u128 {
                self.hit_cutoff = true;
                return Ok(false);
            }
        }
        let memo_key = if !self.sized && self.dedup {
            let mut k = self.pool.clone();
            k.sort();
            if let Some(&(done, cut)) = self.failed.get(&k) {
                if done >= r {
                    self.hit_cutoff |= cut;
                    return Ok(false);
                }
            }
            Some(k)
        } else {
            None
        };
        // Restricting the last steps to targets is itself a depth cut.
        let outer_cut = std::mem::replace(&mut self.hit_cutoff, missing.len() == r);
        let cands = self.candidates(r, &missing)?;
        let mut found = false;
        for (p, size, i, j) in cands {
            self.in_pool.insert(p.clone());
            self.pool.push(p);
            self.sizes.push(size);
            self.parents.push((i, j));
            found = self.dfs(r - 1)?;
            if found {
                break;
            }
            self.parents.pop();
            self.sizes.pop();
            let p = self.pool.pop().expect("pushed above");
            self.in_pool.remove(&p);
        }
        let sub_cut = self.hit_cutoff;
        self.hit_cutoff = outer_cut || sub_cut;
        if !found {
            if let Some(k) = memo_key {
                let e = self.failed.entry(k).or_insert((r, sub_cut));
                if e.0 < r {
                    *e = (r, sub_cut);
                }
            }
        }
        Ok(found)
    }

    fn candidates(
        &mut self,
        r: usize,
        missing: &[usize],
    ) -> Result<Vec<(S::Object, u64, usize, usize)>> {
        self.ensure_space()?;
        let only_targets = missing.len() == r;
        let last = if self.ordered && self.pool.len() > self.basis_len {
            Some(self.pool.len() - 1)
        } else {
            None
        };
        let mut out: Vec<(S::Object, u64, usize, usize)> = Vec::new();
        let n = self.pool.len();
        for i in 0..n {
            for j in i..n {
                let prods = match &self.space {
                    Some(sp) => sp.compose(&self.pool[i], &self.pool[j]),
                    None => self.sys.compose(&self.pool[i], &self.pool[j])?,
                };
                for p in prods {
                    if self.in_pool.contains(&p) {
                        continue;
                    }
                    if only_targets && !missing.iter().any(|&k| self.targets[k] == p) {
                        continue;
                    }
                    let size = if self.sized {
                        let s = self.sys.size(&p).unwrap_or(u64::MAX);
                        if s > self.max_target_size {
                            continue;
                        }
                        if let Some(l) = last {
                            if !self.key_less((self.sizes[l], &self.pool[l]), (s, &p)) {
                                continue;
                            }
                        }
                        s
                    } else {
                        0
                    };
                    out.push((p, size, i, j));
                }
            }
        }
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)).then((a.2, a.3).cmp(&(b.2, b.3))));
        out.dedup_by(|a, b| a.0 == b.0);
        Ok(out)
    }

    fn witness(&self) -> Pathway<S::Object> {
        let nb = self.basis_len;
        let slot = |k: usize| {
            if k < nb {
                Slot::Basis(k)
            } else {
                Slot::Step(k - nb)
            }
        };
        let mut p = Pathway::new(self.pool[..nb].to_vec());
        for (k, &(i, j)) in self.parents.iter().enumerate() {
            p.push(slot(i), slot(j), self.pool[nb + k].clone());
        }
        p.prune_to(&self.targets)
    }
}
