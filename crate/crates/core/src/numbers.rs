//! Natural numbers under addition. Pathways here are addition chains.

use crate::error::{AssemblyError, Result};
use crate::system::{AssemblySystem, MeasureSpec, TargetSpace};

#[derive(Debug, Clone, Copy, Default)]
pub struct AdditionSystem;

struct Interval {
    max: u64,
}

impl TargetSpace<u64> for Interval {
    fn contains(&self, x: &u64) -> bool {
        (1..=self.max).contains(x)
    }

    fn compose(&self, a: &u64, b: &u64) -> Vec<u64> {
        match a.checked_add(*b) {
            Some(s) if s <= self.max => vec![s],
            _ => Vec::new(),
        }
    }

    fn splits(&self, x: &u64) -> Vec<(u64, u64)> {
        (1..=x / 2).map(|a| (a, x - a)).collect()
    }
}

impl AssemblySystem for AdditionSystem {
    type Object = u64;

    fn basis(&self) -> Vec<u64> {
        vec![1]
    }

    fn compose(&self, a: &u64, b: &u64) -> Result<Vec<u64>> {
        a.checked_add(*b)
            .map(|s| vec![s])
            .ok_or_else(|| AssemblyError::InvalidArgument("sum overflows u64".into()))
    }

    fn render(&self, x: &u64) -> String {
        x.to_string()
    }

    fn size(&self, x: &u64) -> Option<u64> {
        Some(*x)
    }

    fn is_basis(&self, x: &u64) -> bool {
        *x == 1
    }

    fn measures(&self) -> Vec<MeasureSpec<u64>> {
        vec![MeasureSpec::unit(&[1])]
    }

    fn target_space<'a>(&'a self, targets: &[u64]) -> Result<Option<Box<dyn TargetSpace<u64> + 'a>>> {
        if targets.contains(&0) {
            return Err(AssemblyError::InvalidArgument("0 has no pathway".into()));
        }
        let max = targets.iter().copied().max().unwrap_or(1);
        Ok(Some(Box::new(Interval { max })))
    }
}

/// Parses a positive decimal integer.
pub fn parse_number(s: &str) -> Result<u64> {
    match s.trim().parse::<u64>() {
        Ok(0) | Err(_) => Err(AssemblyError::InvalidArgument(format!(
            "{s:?} is not a positive integer"
        ))),
        Ok(n) => Ok(n),
    }
}
