//! The tree heuristic: split an object into reused parts, bound each part
//! recursively, and keep the cheapest combination.
//!
//! A plan maps each built object to the parents it was built from. The
//! cost of a plan is its number of entries, so shared sub-objects are
//! paid for once.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use crate::error::{AssemblyError, Result};
use crate::pathway::{Pathway, Slot};
use crate::search::{a_priori_lower_bound, IndexResult, SearchConfig};
use crate::system::{AssemblySystem, JoinRef, TargetSpace};

pub type Plan<O> = BTreeMap<O, (O, O)>;

/// Best pathway the tree heuristic finds for `x`. Never marked exact
/// unless it meets the a-priori lower bound.
pub fn tree_upper_bound<S: AssemblySystem>(
    sys: &S,
    x: &S::Object,
    cfg: &SearchConfig,
) -> Result<IndexResult<S::Object>> {
    let targets = [sys.canonicalize(x)];
    let witness = tree_pathway(sys, &targets, cfg)?;
    let lb = a_priori_lower_bound(sys, &targets);
    let index = witness.len();
    Ok(IndexResult {
        index,
        witness,
        lower_bound: lb.min(index),
        upper_bound: index,
        exact: index <= lb,
    })
}

/// Runs the tree heuristic for every target and merges the plans.
pub fn tree_pathway<S: AssemblySystem>(
    sys: &S,
    targets: &[S::Object],
    cfg: &SearchConfig,
) -> Result<Pathway<S::Object>> {
    let space = sys.target_space(targets)?.ok_or_else(|| {
        AssemblyError::Unsupported("the tree heuristic needs target fragments".into())
    })?;
    let mut t = Tree {
        sys,
        space: space.as_ref(),
        memo: HashMap::new(),
        active: HashSet::new(),
        work: 0,
        budget: cfg.node_budget,
    };
    let mut plan = Plan::new();
    for x in targets {
        let sub = t.plan(x)?;
        merge(&mut plan, &sub);
    }
    Ok(plan_to_pathway(sys, &plan, targets))
}

fn merge<O: Ord + Clone>(into: &mut Plan<O>, from: &Plan<O>) {
    for (k, v) in from {
        into.entry(k.clone()).or_insert_with(|| v.clone());
    }
}

struct Tree<'a, S: AssemblySystem> {
    sys: &'a S,
    space: &'a dyn TargetSpace<S::Object>,
    memo: HashMap<S::Object, Rc<Plan<S::Object>>>,
    active: HashSet<S::Object>,
    work: u64,
    budget: u64,
}

impl<S: AssemblySystem> Tree<'_, S> {
    fn plan(&mut self, x: &S::Object) -> Result<Rc<Plan<S::Object>>> {
        if self.sys.is_basis(x) {
            return Ok(Rc::new(Plan::new()));
        }
        if let Some(p) = self.memo.get(x) {
            return Ok(p.clone());
        }
        self.active.insert(x.clone());
        let decs = self.sys.decompositions(x, self.space)?;
        let mut best: Option<Plan<S::Object>> = None;
        'dec: for d in decs {
            self.work += 1;
            if self.work > self.budget {
                return Err(AssemblyError::BudgetExceeded(format!(
                    "tree search exceeded {} decompositions",
                    self.budget
                )));
            }
            if d.parts.iter().any(|p| self.active.contains(p)) {
                continue;
            }
            let mut acc = Plan::new();
            for part in &d.parts {
                let sub = self.plan(part)?;
                merge(&mut acc, &sub);
                if best.as_ref().is_some_and(|b| acc.len() >= b.len()) {
                    continue 'dec;
                }
            }
            let mut made: Vec<S::Object> = Vec::with_capacity(d.joins.len());
            for (l, r, prod) in &d.joins {
                let get = |j: &JoinRef| match *j {
                    JoinRef::Part(i) => d.parts[i].clone(),
                    JoinRef::Join(k) => made[k].clone(),
                };
                let (lo, ro) = (get(l), get(r));
                if !self.sys.is_basis(prod) {
                    acc.entry(prod.clone()).or_insert((lo, ro));
                }
                made.push(prod.clone());
            }
            if best.as_ref().map_or(true, |b| acc.len() < b.len()) {
                best = Some(acc);
            }
        }
        self.active.remove(x);
        let best = best.ok_or_else(|| {
            AssemblyError::Unsupported(format!("no decomposition of {}", self.sys.render(x)))
        })?;
        let best = Rc::new(best);
        self.memo.insert(x.clone(), best.clone());
        Ok(best)
    }
}

/// Orders a plan into a pathway. Products are sorted by size, so every
/// parent precedes its product.
pub fn plan_to_pathway<S: AssemblySystem>(
    sys: &S,
    plan: &Plan<S::Object>,
    targets: &[S::Object],
) -> Pathway<S::Object> {
    let mut basis: BTreeSet<S::Object> = BTreeSet::new();
    for (l, r) in plan.values() {
        for o in [l, r] {
            if !plan.contains_key(o) {
                basis.insert(o.clone());
            }
        }
    }
    for t in targets {
        if !plan.contains_key(t) {
            basis.insert(t.clone());
        }
    }
    let mut order: Vec<&S::Object> = plan.keys().collect();
    order.sort_by(|a, b| crate::system::size_order(sys, a, b));
    let mut p = Pathway::new(basis.iter().cloned().collect());
    let mut slots: HashMap<&S::Object, Slot> = basis
        .iter()
        .enumerate()
        .map(|(k, b)| (b, Slot::Basis(k)))
        .collect();
    for o in order {
        let (l, r) = &plan[o];
        let s = p.push(slots[l], slots[r], o.clone());
        slots.insert(o, s);
    }
    p.prune_to(targets)
}
