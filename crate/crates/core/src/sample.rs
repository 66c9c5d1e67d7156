//! Random pathways built by greedy composition.

use std::collections::HashSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AssemblyError, Result};
use crate::pathway::{Pathway, Slot};
use crate::search::SearchConfig;
use crate::system::AssemblySystem;

/// Up to `cfg.sample_count` distinct valid pathways containing every
/// target, reproducible from `cfg.seed`.
///
/// Each attempt starts from the basis and repeatedly adds a new product
/// of two pool members, taking a target as soon as one is available and
/// otherwise choosing at random with weight `size^2`. Steps no target
/// depends on are removed afterwards. An empty result means no attempt
/// reached the targets.
pub fn sample_pathways<S: AssemblySystem>(
    sys: &S,
    targets: &[S::Object],
    cfg: &SearchConfig,
) -> Result<Vec<Pathway<S::Object>>> {
    if cfg.sample_count == 0 {
        return Err(AssemblyError::InvalidArgument(
            "sample_count must be positive".into(),
        ));
    }
    let mut targets: Vec<S::Object> = targets.iter().map(|t| sys.canonicalize(t)).collect();
    targets.sort();
    targets.dedup();
    if targets.iter().all(|t| sys.is_basis(t)) {
        return Ok(vec![Pathway::new(targets)]);
    }
    let space = sys.target_space(&targets)?;
    let max_steps = sys
        .upper_bound(&targets)
        .map_or(256, |u| 4 * u + 16);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen: HashSet<Pathway<S::Object>> = HashSet::new();
    let mut out = Vec::new();
    let attempts = cfg.sample_count.saturating_mul(4);
    let mut work = 0u64;

    for _ in 0..attempts {
        if out.len() >= cfg.sample_count {
            break;
        }
        let basis = sys.basis();
        let nb = basis.len();
        let mut pool = basis.clone();
        let mut in_pool: HashSet<S::Object> = pool.iter().cloned().collect();
        let mut path = Pathway::new(basis);
        let slot = |k: usize| if k < nb { Slot::Basis(k) } else { Slot::Step(k - nb) };
        let mut ok = false;
        while path.len() < max_steps {
            if targets.iter().all(|t| in_pool.contains(t)) {
                ok = true;
                break;
            }
            let mut cands: Vec<(S::Object, usize, usize)> = Vec::new();
            let mut fresh: HashSet<S::Object> = HashSet::new();
            for i in 0..pool.len() {
                for j in i..pool.len() {
                    work += 1;
                    if work > cfg.node_budget {
                        return Err(AssemblyError::BudgetExceeded(format!(
                            "sampling exceeded {} compositions",
                            cfg.node_budget
                        )));
                    }
                    let prods = match &space {
                        Some(sp) => sp.compose(&pool[i], &pool[j]),
                        None => sys.compose(&pool[i], &pool[j])?,
                    };
                    for p in prods {
                        if !in_pool.contains(&p) && fresh.insert(p.clone()) {
                            cands.push((p, i, j));
                        }
                    }
                }
            }
            if cands.is_empty() {
                break;
            }
            let pick = match cands.iter().position(|c| targets.contains(&c.0)) {
                Some(k) => k,
                None => {
                    let weights: Vec<f64> = cands
                        .iter()
                        .map(|c| sys.size(&c.0).map_or(1.0, |s| (s as f64) * (s as f64)))
                        .collect();
                    match WeightedIndex::new(&weights) {
                        Ok(w) => w.sample(&mut rng),
                        Err(_) => rng.gen_range(0..cands.len()),
                    }
                }
            };
            let (p, i, j) = cands.swap_remove(pick);
            in_pool.insert(p.clone());
            pool.push(p.clone());
            path.push(slot(i), slot(j), p);
        }
        if !ok && targets.iter().all(|t| in_pool.contains(t)) {
            ok = true;
        }
        if ok {
            let pruned = path.prune_to(&targets);
            if seen.insert(pruned.clone()) {
                out.push(pruned);
            }
        }
    }
    Ok(out)
}
