use serde::Serialize;

use super::optimal_chain_length;
use crate::error::{AssemblyError, Result};
use crate::measure::evaluate_measure;
use crate::pathway::Pathway;
use crate::search::{co_assembly_index, SearchConfig};
use crate::system::{AssemblySystem, MeasureSpec, TargetSpace};

/// Component-sum limit for the exact vectorial search.
pub const VECTOR_SUM_LIMIT: u64 = 64;

/// A vectorial addition chain. The first `dim` entries are the standard
/// unit vectors in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorChain {
    pub dim: usize,
    pub values: Vec<Vec<u64>>,
}

impl VectorChain {
    /// Number of entries after the unit vectors.
    pub fn len(&self) -> usize {
        self.values.len().saturating_sub(self.dim)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn validate_vector_chain(c: &VectorChain, target: Option<&[u64]>) -> bool {
    let d = c.dim;
    if d == 0 || c.values.len() < d {
        return false;
    }
    if c.values.iter().any(|v| v.len() != d || v.iter().all(|&x| x == 0)) {
        return false;
    }
    for (i, v) in c.values[..d].iter().enumerate() {
        if v.iter().enumerate().any(|(k, &x)| x != u64::from(k == i)) {
            return false;
        }
    }
    for i in d..c.values.len() {
        let prev = &c.values[..i];
        let ok = prev.iter().any(|a| {
            a.iter().zip(&c.values[i]).all(|(x, y)| x <= y) && {
                let rest: Vec<u64> = c.values[i].iter().zip(a).map(|(y, x)| y - x).collect();
                prev.contains(&rest)
            }
        });
        if !ok {
            return false;
        }
    }
    match target {
        Some(t) => c.values.last().map(|v| v.as_slice()) == Some(t),
        None => true,
    }
}

/// Maps a pathway to its vector of per-measure values at every entry.
/// Each basis entry must map to a standard unit vector.
pub fn project_pathway_to_vector_chain<S: AssemblySystem>(
    sys: &S,
    measures: &[MeasureSpec<S::Object>],
    p: &Pathway<S::Object>,
) -> Result<VectorChain> {
    let d = measures.len();
    if d == 0 {
        return Err(AssemblyError::InvalidArgument("no measures given".into()));
    }
    let cols = measures
        .iter()
        .map(|m| evaluate_measure(sys, m, p))
        .collect::<Result<Vec<_>>>()?;
    let entry = |i: usize| -> Result<Vec<u64>> {
        cols.iter()
            .map(|c| {
                let v = c[i];
                if v < 0.0 || v.fract() != 0.0 {
                    Err(AssemblyError::MeasureOutOfRange(format!(
                        "value {v} is not a non-negative integer"
                    )))
                } else {
                    Ok(v as u64)
                }
            })
            .collect()
    };
    let mut values: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|k| u64::from(k == i)).collect())
        .collect();
    for (k, b) in p.basis.iter().enumerate() {
        let v = entry(k)?;
        if v.iter().sum::<u64>() != 1 {
            return Err(AssemblyError::MeasureOutOfRange(format!(
                "basis object {} does not map to a unit vector",
                sys.render(b)
            )));
        }
    }
    for j in 0..p.steps.len() {
        values.push(entry(p.basis.len() + j)?);
    }
    Ok(VectorChain { dim: d, values })
}

/// Vectors of a fixed dimension under componentwise addition.
#[derive(Debug, Clone)]
pub struct VectorAdditionSystem {
    pub dim: usize,
}

impl VectorAdditionSystem {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

struct BoxSpace {
    max: Vec<u64>,
}

impl BoxSpace {
    fn fits(&self, v: &[u64]) -> bool {
        v.len() == self.max.len() && v.iter().zip(&self.max).all(|(a, b)| a <= b)
    }
}

impl TargetSpace<Vec<u64>> for BoxSpace {
    fn contains(&self, x: &Vec<u64>) -> bool {
        self.fits(x) && x.iter().any(|&v| v > 0)
    }

    fn compose(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<Vec<u64>> {
        let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if self.fits(&s) {
            vec![s]
        } else {
            Vec::new()
        }
    }

    fn splits(&self, x: &Vec<u64>) -> Vec<(Vec<u64>, Vec<u64>)> {
        let mut out = Vec::new();
        let mut a = vec![0u64; x.len()];
        loop {
            // advance `a` through the box [0, x] like an odometer
            let mut k = 0;
            while k < x.len() {
                if a[k] < x[k] {
                    a[k] += 1;
                    break;
                }
                a[k] = 0;
                k += 1;
            }
            if k == x.len() {
                break;
            }
            let b: Vec<u64> = x.iter().zip(&a).map(|(p, q)| p - q).collect();
            if b.iter().any(|&v| v > 0) && a <= b {
                out.push((a.clone(), b));
            }
        }
        out
    }
}

impl AssemblySystem for VectorAdditionSystem {
    type Object = Vec<u64>;

    fn basis(&self) -> Vec<Vec<u64>> {
        let mut b: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|k| u64::from(k == i)).collect())
            .collect();
        b.sort();
        b
    }

    fn compose(&self, a: &Vec<u64>, b: &Vec<u64>) -> Result<Vec<Vec<u64>>> {
        if a.len() != self.dim || b.len() != self.dim {
            return Err(AssemblyError::InvalidArgument("dimension mismatch".into()));
        }
        Ok(vec![a.iter().zip(b).map(|(x, y)| x + y).collect()])
    }

    fn render(&self, x: &Vec<u64>) -> String {
        let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn size(&self, x: &Vec<u64>) -> Option<u64> {
        Some(x.iter().sum())
    }

    fn is_basis(&self, x: &Vec<u64>) -> bool {
        x.len() == self.dim && x.iter().sum::<u64>() == 1
    }

    fn measures(&self) -> Vec<MeasureSpec<Vec<u64>>> {
        let basis = self.basis();
        basis
            .iter()
            .map(|u| MeasureSpec::indicator(self.render(u), &basis, u))
            .collect()
    }

    fn target_space<'a>(
        &'a self,
        targets: &[Vec<u64>],
    ) -> Result<Option<Box<dyn TargetSpace<Vec<u64>> + 'a>>> {
        let mut max = vec![0u64; self.dim];
        for t in targets {
            if t.len() != self.dim {
                return Err(AssemblyError::InvalidArgument("dimension mismatch".into()));
            }
            for (m, v) in max.iter_mut().zip(t) {
                *m = (*m).max(*v);
            }
        }
        Ok(Some(Box::new(BoxSpace { max })))
    }
}

/// Lower bound from chains for any object with basis counts `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorBound {
    pub bound: usize,
    /// `l(sum of components)`.
    pub scalar: usize,
    /// Exact vectorial chain length, when the search ran.
    pub vector: Option<usize>,
    /// False when the vectorial search was skipped for size.
    pub exact_vector: bool,
}

pub fn vector_chain_lower_bound(v: &[u64]) -> Result<VectorBound> {
    let total: u64 = v.iter().sum();
    if v.is_empty() || total == 0 {
        return Err(AssemblyError::InvalidArgument("vector must be nonzero".into()));
    }
    let scalar = optimal_chain_length(total)?.length;
    if total > VECTOR_SUM_LIMIT {
        return Ok(VectorBound {
            bound: scalar,
            scalar,
            vector: None,
            exact_vector: false,
        });
    }
    // Zero components play no part; search in the reduced dimension.
    let nz: Vec<u64> = v.iter().copied().filter(|&x| x > 0).collect();
    let sys = VectorAdditionSystem::new(nz.len());
    let r = co_assembly_index(&sys, &[nz], &SearchConfig::default())?;
    Ok(VectorBound {
        bound: scalar.max(r.index),
        scalar,
        vector: Some(r.index),
        exact_vector: true,
    })
}
