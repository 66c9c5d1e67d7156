//! The abstract assembly system: a basis and a composition rule.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{AssemblyError, Result};

/// A content-preserving measure, fixed by its values on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpec<O: Ord> {
    pub name: String,
    pub basis_values: BTreeMap<O, f64>,
}

impl<O: Ord + Clone> MeasureSpec<O> {
    pub fn new(name: impl Into<String>, basis_values: BTreeMap<O, f64>) -> Self {
        Self {
            name: name.into(),
            basis_values,
        }
    }

    /// The measure assigning 1 to every basis object.
    pub fn unit(basis: &[O]) -> Self {
        Self::new("size", basis.iter().map(|b| (b.clone(), 1.0)).collect())
    }

    /// The measure counting occurrences of a single basis object.
    pub fn indicator(name: impl Into<String>, basis: &[O], unit: &O) -> Self {
        Self::new(
            name,
            basis
                .iter()
                .map(|b| (b.clone(), if b == unit { 1.0 } else { 0.0 }))
                .collect(),
        )
    }
}

/// A node of a decomposition's join tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinRef {
    Part(usize),
    Join(usize),
}

/// One way of writing an object as a combination of smaller parts.
/// The last join produces the object itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<O> {
    pub parts: Vec<O>,
    pub joins: Vec<(JoinRef, JoinRef, O)>,
}

impl<O: Clone> Decomposition<O> {
    pub fn binary(a: O, b: O, product: O) -> Self {
        Self {
            parts: vec![a, b],
            joins: vec![(JoinRef::Part(0), JoinRef::Part(1), product)],
        }
    }

    /// Joins the parts left to right: `((p0 p1) p2) ...`.
    pub fn chain(parts: Vec<O>, prefixes: Vec<O>) -> Self {
        debug_assert_eq!(prefixes.len() + 1, parts.len());
        let mut joins = Vec::with_capacity(prefixes.len());
        for (k, prod) in prefixes.into_iter().enumerate() {
            let left = if k == 0 {
                JoinRef::Part(0)
            } else {
                JoinRef::Join(k - 1)
            };
            joins.push((left, JoinRef::Part(k + 1), prod));
        }
        Self { parts, joins }
    }
}

/// The set of objects a target-directed search may build, with
/// composition restricted to it.
pub trait TargetSpace<O> {
    fn contains(&self, x: &O) -> bool;

    /// Products of `a` and `b` (in either order) that lie in the space.
    fn compose(&self, a: &O, b: &O) -> Vec<O>;

    /// Pairs `(a, b)` in the space with `x` among their products.
    fn splits(&self, _x: &O) -> Vec<(O, O)> {
        Vec::new()
    }
}

/// A target space given by an explicit fragment set and the system's
/// composition rule.
pub struct FragmentSpace<'a, S: AssemblySystem> {
    sys: &'a S,
    fragments: HashSet<S::Object>,
}

impl<'a, S: AssemblySystem> FragmentSpace<'a, S> {
    pub fn new(sys: &'a S, fragments: impl IntoIterator<Item = S::Object>) -> Self {
        Self {
            sys,
            fragments: fragments.into_iter().collect(),
        }
    }

    pub fn fragments(&self) -> &HashSet<S::Object> {
        &self.fragments
    }
}

impl<S: AssemblySystem> TargetSpace<S::Object> for FragmentSpace<'_, S> {
    fn contains(&self, x: &S::Object) -> bool {
        self.fragments.contains(x)
    }

    fn compose(&self, a: &S::Object, b: &S::Object) -> Vec<S::Object> {
        match self.sys.compose(a, b) {
            Ok(v) => v.into_iter().filter(|p| self.fragments.contains(p)).collect(),
            Err(_) => Vec::new(),
        }
    }
}

/// A basis set and a composition rule.
pub trait AssemblySystem {
    type Object: Clone + Ord + Hash + Debug;

    /// Canonical basis objects, sorted.
    fn basis(&self) -> Vec<Self::Object>;

    /// All objects formable from `a` and `b` in one step, canonical and
    /// without duplicates.
    fn compose(&self, a: &Self::Object, b: &Self::Object) -> Result<Vec<Self::Object>>;

    /// Membership test for a single product. Systems whose composition
    /// sets are too large to list override this.
    fn can_compose(
        &self,
        a: &Self::Object,
        b: &Self::Object,
        product: &Self::Object,
    ) -> Result<bool> {
        let p = self.canonicalize(product);
        Ok(self.compose(a, b)?.contains(&p))
    }

    fn canonicalize(&self, x: &Self::Object) -> Self::Object {
        x.clone()
    }

    fn render(&self, x: &Self::Object) -> String;

    /// The unit-measure size of `x`, for systems where it is known to be
    /// pathway independent.
    fn size(&self, _x: &Self::Object) -> Option<u64> {
        None
    }

    fn measures(&self) -> Vec<MeasureSpec<Self::Object>> {
        Vec::new()
    }

    fn is_basis(&self, x: &Self::Object) -> bool {
        self.basis().contains(x)
    }

    /// The restricted object space for a target-directed search, or
    /// `None` when the system has no such restriction.
    fn target_space<'a>(
        &'a self,
        _targets: &[Self::Object],
    ) -> Result<Option<Box<dyn TargetSpace<Self::Object> + 'a>>> {
        Ok(None)
    }

    /// Candidate decompositions for the tree heuristic. Every part must
    /// be strictly smaller than `x`.
    fn decompositions(
        &self,
        x: &Self::Object,
        space: &dyn TargetSpace<Self::Object>,
    ) -> Result<Vec<Decomposition<Self::Object>>> {
        if self.size(x).is_none() {
            return Err(AssemblyError::Unsupported(
                "tree decomposition needs object sizes".into(),
            ));
        }
        Ok(space
            .splits(x)
            .into_iter()
            .map(|(a, b)| Decomposition::binary(a, b, x.clone()))
            .collect())
    }

    /// A trivially valid upper bound on the co-assembly index.
    fn upper_bound(&self, targets: &[Self::Object]) -> Option<usize> {
        let mut seen = HashSet::new();
        let mut total = 0usize;
        for t in targets {
            if seen.insert(t) {
                total += self.size(t)?.checked_sub(1)? as usize;
            }
        }
        Some(total)
    }
}

/// Orders objects by size, then by their own ordering. This is the
/// canonical step order used by the exhaustive search.
pub fn size_order<S: AssemblySystem>(sys: &S, a: &S::Object, b: &S::Object) -> Ordering {
    match (sys.size(a), sys.size(b)) {
        (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        _ => a.cmp(b),
    }
}
