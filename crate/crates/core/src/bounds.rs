//! Closed-form bounds on pathway length and the pathway probability bound.

use crate::error::{AssemblyError, Result};

/// The trivial upper bound: an object of size `n` can always be built one
/// unit at a time in `n - 1` steps.
pub fn upper_bound_from_size(size: u64) -> Result<u64> {
    if size == 0 {
        return Err(AssemblyError::InvalidArgument("size must be at least 1".into()));
    }
    Ok(size - 1)
}

/// Lower bound on addition-chain length: `ceil(log2 n + log2 v(n) - 2.13)`
/// with `v(n)` the number of one bits, clamped at 0.
pub fn schonhage_lower_bound(n: u64) -> u32 {
    if n == 0 {
        return 0;
    }
    let v = (n as f64).log2() + (n.count_ones() as f64).log2() - 2.13;
    if v <= 0.0 {
        0
    } else {
        v.ceil() as u32
    }
}

/// Largest probability any pathway of `n` steps can have when no single
/// step is taken with probability above `q`.
pub fn max_pathway_probability(q: f64, n: u32) -> Result<f64> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(AssemblyError::InvalidArgument(format!(
            "step probability {q} is outside (0, 1]"
        )));
    }
    Ok(q.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schonhage_small_values() {
        assert_eq!(schonhage_lower_bound(1), 0);
        assert_eq!(schonhage_lower_bound(128), 5);
        assert_eq!(schonhage_lower_bound(127), 8);
    }

    #[test]
    fn upper_bound() {
        assert_eq!(upper_bound_from_size(1).unwrap(), 0);
        assert_eq!(upper_bound_from_size(128).unwrap(), 127);
        assert!(upper_bound_from_size(0).is_err());
    }

    #[test]
    fn probability() {
        assert_eq!(max_pathway_probability(1.0, 10).unwrap(), 1.0);
        assert_eq!(max_pathway_probability(0.5, 3).unwrap(), 0.125);
        let p = max_pathway_probability(0.9, 50).unwrap();
        assert!((p - 5.153775207320113e-3).abs() < 1e-12 * 5.2e-3 * 10.0);
        assert!(max_pathway_probability(0.0, 1).is_err());
        assert!(max_pathway_probability(1.5, 1).is_err());
    }
}
