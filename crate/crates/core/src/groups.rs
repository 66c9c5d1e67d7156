//! Finite groups given by a composition table. Composition of `a` and `b`
//! yields every product of `a` or its inverse with `b` or its inverse, in
//! either order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AssemblyError, Result};
use crate::search::{assembly_index, co_assembly_index, IndexResult, SearchConfig};
use crate::system::{AssemblySystem, MeasureSpec};

/// Largest group order accepted. The associativity check is cubic.
pub const MAX_ORDER: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Shape,
    Closure,
    Identity,
    Inverses,
    Associativity,
}

/// Outcome of [`verify_group_axioms`]. On failure `witness` holds the
/// first counterexample: one element for identity and inverses, a pair
/// for closure, a triple for associativity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub valid: bool,
    pub axiom: Option<Axiom>,
    pub witness: Vec<usize>,
    pub message: String,
}

impl GroupReport {
    fn fail(axiom: Axiom, witness: Vec<usize>, message: String) -> Self {
        Self {
            valid: false,
            axiom: Some(axiom),
            witness,
            message,
        }
    }
}

impl fmt::Display for GroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            f.write_str("valid group")
        } else {
            f.write_str(&self.message)
        }
    }
}

/// Checks closure, identity, inverses and associativity, in that order.
pub fn verify_group_axioms(table: &[Vec<usize>]) -> GroupReport {
    let n = table.len();
    if n == 0 {
        return GroupReport::fail(Axiom::Shape, vec![], "the table is empty".into());
    }
    if n > MAX_ORDER {
        return GroupReport::fail(Axiom::Shape, vec![], format!("order {n} exceeds {MAX_ORDER}"));
    }
    if let Some(r) = table.iter().position(|row| row.len() != n) {
        return GroupReport::fail(
            Axiom::Shape,
            vec![r],
            format!("row {r} has {} entries, expected {n}", table[r].len()),
        );
    }
    for a in 0..n {
        for b in 0..n {
            if table[a][b] >= n {
                return GroupReport::fail(
                    Axiom::Closure,
                    vec![a, b],
                    format!("{a}*{b} = {} is not an element", table[a][b]),
                );
            }
        }
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|a| table[a][e] == a && table[e][a] == a)) else {
        return GroupReport::fail(Axiom::Identity, vec![], "no identity element".into());
    };
    for a in 0..n {
        if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
            return GroupReport::fail(Axiom::Inverses, vec![a], format!("{a} has no inverse"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return GroupReport::fail(
                        Axiom::Associativity,
                        vec![a, b, c],
                        format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                    );
                }
            }
        }
    }
    GroupReport {
        valid: true,
        axiom: None,
        witness: vec![],
        message: String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let report = verify_group_axioms(table);
        if !report.valid {
            return Err(AssemblyError::InvalidArgument(format!("not a group: {report}")));
        }
        let n = table.len();
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let identity = (0..n).find(|&e| (0..n).all(|a| flat[a * n + e] == a)).expect("checked");
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| flat[a * n + b] == identity).expect("checked"))
            .collect();
        Ok(Self {
            order: n,
            table: flat,
            identity,
            inverses,
            names: (0..n).map(|k| k.to_string()).collect(),
        })
    }

    /// The group whose elements are the given permutations (one-line
    /// images of `0..d`), with `(p*q)[i] = p[q[i]]`. The list must be
    /// closed under composition. Element names are the images.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: BTreeMap<&[usize], usize> = perms.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
        if index.len() != perms.len() {
            return Err(AssemblyError::InvalidArgument("duplicate permutation".into()));
        }
        let d = perms.first().map_or(0, |p| p.len());
        for p in perms {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
                return Err(AssemblyError::InvalidArgument(format!("{p:?} is not a permutation of 0..{d}")));
            }
        }
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                table[a][b] = *index.get(pq.as_slice()).ok_or_else(|| {
                    AssemblyError::InvalidArgument(format!("{p:?}*{q:?} is not in the list"))
                })?;
            }
        }
        let mut g = Self::from_table(&table)?;
        g.names = perms.iter().map(|p| format!("{p:?}")).collect();
        Ok(g)
    }

    /// The permutation group generated by `gens`, elements sorted.
    pub fn generated_by_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let d = gens.first().map_or(0, |p| p.len());
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let id: Vec<usize> = (0..d).collect();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                if g.len() != d {
                    return Err(AssemblyError::InvalidArgument("generators differ in degree".into()));
                }
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if seen.len() >= MAX_ORDER && !seen.contains(&q) {
                    return Err(AssemblyError::InvalidArgument(format!("group order exceeds {MAX_ORDER}")));
                }
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Self::from_permutations(&seen.into_iter().collect::<Vec<_>>())
    }

    /// Integers mod `n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n.max(1)).collect()).collect();
        Self::from_table(&table)
    }

    /// All permutations of `0..d`, sorted.
    pub fn symmetric(d: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if d >= 2 {
            let mut swap: Vec<usize> = (0..d).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..d).map(|i| (i + 1) % d).collect());
        } else {
            gens.push((0..d).collect());
        }
        Self::generated_by_permutations(&gens)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.order {
            return Err(AssemblyError::InvalidArgument("one name per element is needed".into()));
        }
        self.names = names;
        Ok(())
    }

    /// Checks that `gens` generate the group under products and inverses.
    pub fn check_generators(&self, gens: &[usize]) -> Result<()> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.order) {
            return Err(AssemblyError::InvalidArgument(format!("generator {g} is not an element")));
        }
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [self.op(x, g), self.op(x, self.inverse(g))] {
                    if !reached[y] {
                        reached[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        match reached.iter().position(|r| !r) {
            Some(x) => Err(AssemblyError::UnreachableElement(x)),
            None => Ok(()),
        }
    }
}

/// The distinct elements among `a*b, b*a, a'*b, b*a', a*b', b'*a,
/// a'*b', b'*a'`, where `'` is the inverse. Sorted.
pub fn group_compose_rule(g: &FiniteGroup, a: usize, b: usize) -> Vec<usize> {
    let (ai, bi) = (g.inverse(a), g.inverse(b));
    let mut out = vec![
        g.op(a, b),
        g.op(b, a),
        g.op(ai, b),
        g.op(b, ai),
        g.op(a, bi),
        g.op(bi, a),
        g.op(ai, bi),
        g.op(bi, ai),
    ];
    out.sort_unstable();
    out.dedup();
    out
}

/// A group with a generating set as basis. Objects are element indices.
#[derive(Debug, Clone)]
pub struct GroupSystem<'g> {
    group: &'g FiniteGroup,
    gens: Vec<usize>,
}

impl<'g> GroupSystem<'g> {
    pub fn new(group: &'g FiniteGroup, gens: &[usize]) -> Result<Self> {
        if gens.is_empty() {
            return Err(AssemblyError::InvalidArgument("no generators given".into()));
        }
        group.check_generators(gens)?;
        let set: BTreeSet<usize> = gens.iter().copied().collect();
        Ok(Self {
            group,
            gens: set.into_iter().collect(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
}

impl AssemblySystem for GroupSystem<'_> {
    type Object = usize;

    fn basis(&self) -> Vec<usize> {
        self.gens.clone()
    }

    fn compose(&self, a: &usize, b: &usize) -> Result<Vec<usize>> {
        Ok(group_compose_rule(self.group, *a, *b))
    }

    fn render(&self, x: &usize) -> String {
        self.group.name(*x).to_string()
    }

    fn is_basis(&self, x: &usize) -> bool {
        self.gens.binary_search(x).is_ok()
    }

    /// One count per generator. Inverses break additivity, so these are
    /// not consistent across pathways in general.
    fn measures(&self) -> Vec<MeasureSpec<usize>> {
        self.gens
            .iter()
            .map(|g| MeasureSpec::indicator(format!("count({})", self.render(g)), &self.gens, g))
            .collect()
    }

    /// Each step adds one element, so building the whole group and
    /// pruning works for any target set.
    fn upper_bound(&self, _targets: &[usize]) -> Option<usize> {
        Some(self.group.order - self.gens.len())
    }
}

pub fn element_assembly_index(
    g: &FiniteGroup,
    gens: &[usize],
    x: usize,
    search: &SearchConfig,
) -> Result<IndexResult<usize>> {
    if x >= g.order() {
        return Err(AssemblyError::InvalidArgument(format!("{x} is not an element")));
    }
    let sys = GroupSystem::new(g, gens)?;
    assembly_index(&sys, &x, search)
}

/// Co-assembly index of every element of the group, identity included.
pub fn group_co_assembly_index(
    g: &FiniteGroup,
    gens: &[usize],
    search: &SearchConfig,
) -> Result<IndexResult<usize>> {
    let sys = GroupSystem::new(g, gens)?;
    let all: Vec<usize> = (0..g.order()).collect();
    co_assembly_index(&sys, &all, search)
}

/// JSON group input: `table` (rows of element indices) or
/// `permutations` (one-line images), plus generator indices and optional
/// element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup> {
        let mut g = match (&self.table, &self.permutations) {
            (Some(t), None) => FiniteGroup::from_table(t)?,
            (None, Some(p)) => FiniteGroup::from_permutations(p)?,
            _ => {
                return Err(AssemblyError::InvalidArgument(
                    "give exactly one of `table` and `permutations`".into(),
                ))
            }
        };
        if let Some(names) = &self.names {
            g.set_names(names.clone())?;
        }
        Ok(g)
    }
}
