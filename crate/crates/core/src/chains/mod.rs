//! Addition chains and vectorial addition chains.
//!
//! The exact solver here is the lower-bound oracle for every other
//! domain: any uniquely decomposable object of size `n` needs at least
//! `l(n)` steps.

mod vector;

pub use vector::{
    project_pathway_to_vector_chain, validate_vector_chain, vector_chain_lower_bound,
    VectorAdditionSystem, VectorBound, VectorChain,
};

use serde::Serialize;

use crate::bounds::schonhage_lower_bound;
use crate::error::{AssemblyError, Result};
use crate::measure::evaluate_measure;
use crate::pathway::Pathway;
use crate::system::{AssemblySystem, MeasureSpec};

/// Largest `n` the exact solver accepts.
pub const CHAIN_LIMIT: u64 = 1 << 20;

/// Default node budget for a single chain search.
pub const DEFAULT_CHAIN_BUDGET: u64 = 2_000_000_000;

/// An addition chain: starts at 1, every later entry is the sum of two
/// (not necessarily distinct) earlier entries. Entries need not increase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditionChain {
    pub values: Vec<u64>,
}

impl AdditionChain {
    /// Number of steps (entries after the leading 1).
    pub fn len(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn last(&self) -> Option<u64> {
        self.values.last().copied()
    }
}

/// Optimal chain length for `n` with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainResult {
    pub n: u64,
    pub length: usize,
    pub chain: AdditionChain,
}

pub fn optimal_chain_length(n: u64) -> Result<ChainResult> {
    optimal_chain_with_budget(n, DEFAULT_CHAIN_BUDGET)
}

/// Iterative deepening over ascending chains, starting at the larger of
/// `ceil(log2 n)` and the one-bit bound.
pub fn optimal_chain_with_budget(n: u64, budget: u64) -> Result<ChainResult> {
    if n == 0 {
        return Err(AssemblyError::InvalidArgument("n must be at least 1".into()));
    }
    if n > CHAIN_LIMIT {
        return Err(AssemblyError::BudgetExceeded(format!(
            "n = {n} is above the exact solver limit {CHAIN_LIMIT}"
        )));
    }
    let ceil_log = 64 - (n - 1).leading_zeros() as usize;
    let start = ceil_log.max(schonhage_lower_bound(n) as usize);
    let mut solver = ChainSolver {
        n,
        chain: vec![1],
        nodes: 0,
        budget,
    };
    for depth in start.. {
        solver.chain.truncate(1);
        if solver.dfs(depth)? {
            return Ok(ChainResult {
                n,
                length: depth,
                chain: AdditionChain {
                    values: solver.chain.clone(),
                },
            });
        }
    }
    unreachable!("the binary method always terminates the loop")
}

struct ChainSolver {
    n: u64,
    chain: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl ChainSolver {
    fn dfs(&mut self, depth: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AssemblyError::BudgetExceeded(format!(
                "chain search for {} exceeded {} nodes",
                self.n, self.budget
            )));
        }
        let last = *self.chain.last().expect("chain starts at 1");
        if last == self.n {
            return Ok(true);
        }
        let done = self.chain.len() - 1;
        if done == depth {
            return Ok(false);
        }
        let remaining = (depth - done) as u32;
        if (last as u128) << remaining < self.n as u128 {
            return Ok(false);
        }
        if remaining == 1 {
            if self.is_sum(self.n) {
                self.chain.push(self.n);
                return Ok(true);
            }
            return Ok(false);
        }
        let mut cands = Vec::with_capacity(self.chain.len() * 2);
        for i in (0..self.chain.len()).rev() {
            for j in (0..=i).rev() {
                let s = self.chain[i] + self.chain[j];
                if s <= last {
                    break;
                }
                if s <= self.n {
                    cands.push(s);
                }
            }
        }
        cands.sort_unstable_by(|a, b| b.cmp(a));
        cands.dedup();
        for s in cands {
            if (s as u128) << (remaining - 1) < self.n as u128 {
                break;
            }
            self.chain.push(s);
            if self.dfs(depth)? {
                return Ok(true);
            }
            self.chain.pop();
        }
        Ok(false)
    }

    fn is_sum(&self, v: u64) -> bool {
        let c = &self.chain;
        c.iter().any(|&a| a <= v && c.contains(&(v - a)))
    }
}

/// True iff `c` starts at 1, every later entry is a sum of two earlier
/// entries, and the chain ends at `n`.
pub fn validate_chain(c: &AdditionChain, n: u64) -> bool {
    is_addition_chain(&c.values) && c.last() == Some(n)
}

fn is_addition_chain(v: &[u64]) -> bool {
    if v.first() != Some(&1) {
        return false;
    }
    for i in 1..v.len() {
        let prev = &v[..i];
        let ok = prev
            .iter()
            .any(|&a| a <= v[i] && prev.contains(&(v[i] - a)));
        if !ok {
            return false;
        }
    }
    true
}

/// Both sides of `l(2^n - 1) = l(n) + n - 1`, reported without judgement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScholzBrauer {
    pub n: u32,
    pub left: usize,
    pub right: usize,
}

pub fn scholz_brauer_gap(n: u32) -> Result<ScholzBrauer> {
    if n == 0 {
        return Err(AssemblyError::InvalidArgument("n must be at least 1".into()));
    }
    if n > 20 {
        return Err(AssemblyError::BudgetExceeded(format!(
            "2^{n} - 1 is above the exact solver limit"
        )));
    }
    let left = optimal_chain_length((1u64 << n) - 1)?.length;
    let right = optimal_chain_length(n as u64)?.length + n as usize - 1;
    Ok(ScholzBrauer { n, left, right })
}

/// Maps a pathway to the sequence of measure values along it.
///
/// The measure must take values in {0, 1} on the basis. The chain keeps
/// a single leading 1 for the basis part; a step is dropped when its value
/// is 0 or when one parent is 0 (the step then only copies the other
/// parent's value).
pub fn project_pathway_to_chain<S: AssemblySystem>(
    sys: &S,
    m: &MeasureSpec<S::Object>,
    p: &Pathway<S::Object>,
) -> Result<AdditionChain> {
    check_zero_one(sys, m)?;
    let values = evaluate_measure(sys, m, p)?;
    let ints: Vec<u64> = values.iter().map(|v| v.round() as u64).collect();
    let nb = p.basis.len();
    let slot_value = |s: crate::pathway::Slot| match s {
        crate::pathway::Slot::Basis(k) => ints[k],
        crate::pathway::Slot::Step(j) => ints[nb + j],
    };
    let mut out = Vec::new();
    if ints[..nb].contains(&1) {
        out.push(1);
    }
    for (j, s) in p.steps.iter().enumerate() {
        let v = ints[nb + j];
        if v == 0 || slot_value(s.left) == 0 || slot_value(s.right) == 0 {
            continue;
        }
        if out.is_empty() {
            // Unreachable for valid pathways: a positive step needs a
            // positive basis ancestor.
            out.push(1);
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(AssemblyError::MeasureOutOfRange(format!(
            "measure {} is zero on every pathway entry",
            m.name
        )));
    }
    Ok(AdditionChain { values: out })
}

fn check_zero_one<S: AssemblySystem>(sys: &S, m: &MeasureSpec<S::Object>) -> Result<()> {
    for (b, v) in &m.basis_values {
        if *v != 0.0 && *v != 1.0 {
            return Err(AssemblyError::MeasureOutOfRange(format!(
                "measure {} has value {} on basis object {}",
                m.name,
                v,
                sys.render(b)
            )));
        }
    }
    if !m.basis_values.values().any(|v| *v == 1.0) {
        return Err(AssemblyError::MeasureOutOfRange(format!(
            "measure {} is not 1 on any basis object",
            m.name
        )));
    }
    Ok(())
}
