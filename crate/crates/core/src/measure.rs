//! Content-preserving measures along pathways.

use crate::error::{AssemblyError, Result};
use crate::pathway::{Pathway, Slot};
use crate::sample::sample_pathways;
use crate::search::{Algorithm, SearchConfig};
use crate::system::{AssemblySystem, MeasureSpec};

/// Measure value of every pathway entry, basis part first. Basis entries
/// take their declared values and each step the sum of its parents.
pub fn evaluate_measure<S: AssemblySystem>(
    sys: &S,
    m: &MeasureSpec<S::Object>,
    p: &Pathway<S::Object>,
) -> Result<Vec<f64>> {
    let nb = p.basis.len();
    let mut out = Vec::with_capacity(nb + p.steps.len());
    for b in &p.basis {
        let v = m
            .basis_values
            .get(b)
            .ok_or_else(|| AssemblyError::UnknownBasisObject(sys.render(b)))?;
        out.push(*v);
    }
    for (i, s) in p.steps.iter().enumerate() {
        let at = |slot: Slot| -> Result<f64> {
            let k = match slot {
                Slot::Basis(k) if k < nb => k,
                Slot::Step(j) if j < i => nb + j,
                _ => {
                    return Err(AssemblyError::InvalidArgument(format!(
                        "step {} refers to a later entry",
                        i + 1
                    )))
                }
            };
            Ok(out[k])
        };
        let v = at(s.left)? + at(s.right)?;
        out.push(v);
    }
    Ok(out)
}

fn value_at<S: AssemblySystem>(
    sys: &S,
    m: &MeasureSpec<S::Object>,
    p: &Pathway<S::Object>,
    x: &S::Object,
) -> Result<f64> {
    let values = evaluate_measure(sys, m, p)?;
    let k = match p.slot_of(x) {
        Some(Slot::Basis(k)) => k,
        Some(Slot::Step(j)) => p.basis.len() + j,
        None => {
            return Err(AssemblyError::InvalidArgument(format!(
                "{} is not on the pathway",
                sys.render(x)
            )))
        }
    };
    Ok(values[k])
}

fn sampling_config(trials: usize, seed: u64) -> SearchConfig {
    SearchConfig {
        algorithm: Algorithm::Sampled,
        seed,
        sample_count: trials.max(1),
        ..SearchConfig::default()
    }
}

/// Samples up to `trials` distinct pathways for `x` and checks that every
/// declared measure takes the same value at `x` on all of them. This is a
/// necessary condition for unique decomposition, not a proof of it.
pub fn verify_measure_consistency<S: AssemblySystem>(
    sys: &S,
    x: &S::Object,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let measures = sys.measures();
    let paths = sample_pathways(sys, &[x.clone()], &sampling_config(trials, seed))?;
    for m in &measures {
        let mut first: Option<f64> = None;
        for p in &paths {
            let v = value_at(sys, m, p, x)?;
            match first {
                None => first = Some(v),
                Some(f) if (f - v).abs() > 1e-9 => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

/// Size of `x`: its value under the measure that is 1 on every basis
/// object. Fails if sampled pathways disagree.
pub fn object_size<S: AssemblySystem>(sys: &S, x: &S::Object) -> Result<u64> {
    if sys.is_basis(x) {
        return Ok(1);
    }
    let unit = MeasureSpec::unit(&sys.basis());
    let paths = match sample_pathways(sys, &[x.clone()], &sampling_config(8, 0x5eed)) {
        Ok(p) if !p.is_empty() => p,
        // Too large to sample: fall back to the system's declared size.
        Ok(_) | Err(AssemblyError::BudgetExceeded(_)) => {
            return sys.size(x).ok_or_else(|| {
                AssemblyError::MeasureInconsistent(format!(
                    "no pathway found for {}",
                    sys.render(x)
                ))
            })
        }
        Err(e) => return Err(e),
    };
    let mut size = None;
    for p in &paths {
        let v = value_at(sys, &unit, p, x)?;
        match size {
            None => size = Some(v),
            Some(s) if (s - v).abs() > 1e-9 => {
                return Err(AssemblyError::MeasureInconsistent(format!(
                    "{} has size {} on one pathway and {} on another",
                    sys.render(x),
                    s,
                    v
                )))
            }
            Some(_) => {}
        }
    }
    Ok(size.expect("at least one pathway").round() as u64)
}
