//! Assembly pathways: a basis part followed by composition steps.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AssemblyError, Result};
use crate::system::AssemblySystem;

/// A reference to an earlier pathway entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Basis(usize),
    Step(usize),
}

impl Slot {
    /// JSON index: basis slot `k` is `-(k+1)`, step `j` is `j+1`. Zero is never used.
    pub fn to_index(self) -> i64 {
        match self {
            Slot::Basis(k) => -(k as i64) - 1,
            Slot::Step(j) => j as i64 + 1,
        }
    }

    pub fn from_index(i: i64) -> Option<Slot> {
        match i {
            0 => None,
            i if i < 0 => Some(Slot::Basis((-i - 1) as usize)),
            i => Some(Slot::Step((i - 1) as usize)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step<O> {
    pub left: Slot,
    pub right: Slot,
    pub product: O,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pathway<O> {
    pub basis: Vec<O>,
    pub steps: Vec<Step<O>>,
}

impl<O> Default for Pathway<O> {
    fn default() -> Self {
        Self {
            basis: Vec::new(),
            steps: Vec::new(),
        }
    }
}

impl<O: Clone + PartialEq> Pathway<O> {
    pub fn new(basis: Vec<O>) -> Self {
        Self {
            basis,
            steps: Vec::new(),
        }
    }

    /// Number of composition steps. Basis entries do not count.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn get(&self, slot: Slot) -> Option<&O> {
        match slot {
            Slot::Basis(k) => self.basis.get(k),
            Slot::Step(j) => self.steps.get(j).map(|s| &s.product),
        }
    }

    /// Every entry in pathway order, basis first.
    pub fn objects(&self) -> impl Iterator<Item = &O> {
        self.basis.iter().chain(self.steps.iter().map(|s| &s.product))
    }

    pub fn slot_of(&self, x: &O) -> Option<Slot> {
        if let Some(j) = self.steps.iter().position(|s| &s.product == x) {
            return Some(Slot::Step(j));
        }
        self.basis.iter().position(|b| b == x).map(Slot::Basis)
    }

    pub fn contains(&self, x: &O) -> bool {
        self.objects().any(|o| o == x)
    }

    pub fn push(&mut self, left: Slot, right: Slot, product: O) -> Slot {
        self.steps.push(Step {
            left,
            right,
            product,
        });
        Slot::Step(self.steps.len() - 1)
    }

    /// The last entry of the pathway, if any.
    pub fn last(&self) -> Option<&O> {
        self.steps
            .last()
            .map(|s| &s.product)
            .or_else(|| self.basis.last())
    }
}

impl<O: Clone + Eq + std::hash::Hash> Pathway<O> {
    /// Drops steps that no target depends on and basis entries no step
    /// uses (targets that are basis objects are kept).
    pub fn prune_to(&self, targets: &[O]) -> Pathway<O> {
        let nb = self.basis.len();
        let mut needed = vec![false; nb + self.steps.len()];
        let idx = |s: Slot| match s {
            Slot::Basis(k) => k,
            Slot::Step(j) => nb + j,
        };
        let wanted: HashSet<&O> = targets.iter().collect();
        for (k, b) in self.basis.iter().enumerate() {
            if wanted.contains(b) {
                needed[k] = true;
            }
        }
        for (j, s) in self.steps.iter().enumerate() {
            if wanted.contains(&s.product) {
                needed[nb + j] = true;
            }
        }
        for j in (0..self.steps.len()).rev() {
            if needed[nb + j] {
                let s = &self.steps[j];
                needed[idx(s.left)] = true;
                needed[idx(s.right)] = true;
            }
        }
        let mut remap = vec![None; needed.len()];
        let mut out = Pathway::default();
        for k in 0..nb {
            if needed[k] {
                remap[k] = Some(Slot::Basis(out.basis.len()));
                out.basis.push(self.basis[k].clone());
            }
        }
        for (j, s) in self.steps.iter().enumerate() {
            if needed[nb + j] {
                let l = remap[idx(s.left)].expect("parent kept");
                let r = remap[idx(s.right)].expect("parent kept");
                remap[nb + j] = Some(out.push(l, r, s.product.clone()));
            }
        }
        out
    }
}

/// Outcome of [`validate_pathway`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    /// Zero-based step index of the first violation, or `None` when the
    /// problem is in the basis part (or there is none).
    pub step: Option<usize>,
    pub reason: Option<String>,
}

impl ValidityReport {
    fn ok() -> Self {
        Self {
            valid: true,
            step: None,
            reason: None,
        }
    }

    fn fail(step: Option<usize>, reason: String) -> Self {
        Self {
            valid: false,
            step,
            reason: Some(reason),
        }
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.reason, self.step) {
            (None, _) => write!(f, "valid"),
            (Some(r), Some(s)) => write!(f, "invalid at step {}: {}", s + 1, r),
            (Some(r), None) => write!(f, "invalid basis: {r}"),
        }
    }
}

/// Checks that every basis entry is a basis object and every step's
/// product can be formed from its parents. Returns an error only when the
/// system cannot decide membership (for instance a composition too large
/// to enumerate).
pub fn validate_pathway<S: AssemblySystem>(
    sys: &S,
    p: &Pathway<S::Object>,
) -> Result<ValidityReport> {
    let basis: HashSet<S::Object> = sys.basis().into_iter().collect();
    for (k, b) in p.basis.iter().enumerate() {
        if !basis.contains(&sys.canonicalize(b)) {
            return Ok(ValidityReport::fail(
                None,
                format!("entry {} ({}) is not a basis object", k, sys.render(b)),
            ));
        }
    }
    for (i, s) in p.steps.iter().enumerate() {
        for parent in [s.left, s.right] {
            let ok = match parent {
                Slot::Basis(k) => k < p.basis.len(),
                Slot::Step(j) => j < i,
            };
            if !ok {
                return Ok(ValidityReport::fail(
                    Some(i),
                    format!("parent {} does not precede this step", parent.to_index()),
                ));
            }
        }
        let a = p.get(s.left).expect("checked");
        let b = p.get(s.right).expect("checked");
        if !sys.can_compose(a, b, &s.product)? {
            return Ok(ValidityReport::fail(
                Some(i),
                format!(
                    "{} cannot be formed from {} and {}",
                    sys.render(&s.product),
                    sys.render(a),
                    sys.render(b)
                ),
            ));
        }
    }
    Ok(ValidityReport::ok())
}

/// Pathway length: the number of non-basis entries.
pub fn pathway_length<O: Clone + PartialEq>(p: &Pathway<O>) -> usize {
    p.len()
}

/// Serialized pathway: rendered objects and signed slot indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathwayDoc {
    pub basis: Vec<String>,
    pub steps: Vec<StepDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub left: i64,
    pub right: i64,
    pub product: String,
}

impl PathwayDoc {
    pub fn from_pathway<O: Clone + PartialEq>(
        p: &Pathway<O>,
        render: impl Fn(&O) -> String,
    ) -> Self {
        Self {
            basis: p.basis.iter().map(&render).collect(),
            steps: p
                .steps
                .iter()
                .map(|s| StepDoc {
                    left: s.left.to_index(),
                    right: s.right.to_index(),
                    product: render(&s.product),
                })
                .collect(),
        }
    }

    pub fn to_pathway<O: Clone + PartialEq>(
        &self,
        parse: impl Fn(&str) -> Result<O>,
    ) -> Result<Pathway<O>> {
        let mut p = Pathway::default();
        for b in &self.basis {
            p.basis.push(parse(b)?);
        }
        for (i, s) in self.steps.iter().enumerate() {
            let slot = |v: i64| {
                Slot::from_index(v).ok_or_else(|| {
                    AssemblyError::InvalidArgument(format!("step {}: index 0 is not a slot", i + 1))
                })
            };
            p.push(slot(s.left)?, slot(s.right)?, parse(&s.product)?);
        }
        Ok(p)
    }
}
