//! Strings under concatenation, optionally with reversal.

pub mod slp;
pub mod suffix;

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{AssemblyError, Result};
use crate::search::{assembly_index, IndexResult, SearchConfig};
use crate::system::{AssemblySystem, Decomposition, MeasureSpec, TargetSpace};

/// A string as a sequence of code points (or bytes widened to `u32`).
pub type Str = Vec<u32>;

/// Strings longer than this use the suffix-array tiling for the tree
/// heuristic instead of the generic decomposition search.
pub const GENERIC_TREE_LIMIT: usize = 48;

pub fn str_from(s: &str) -> Str {
    s.chars().map(|c| c as u32).collect()
}

pub fn str_from_bytes(b: &[u8]) -> Str {
    b.iter().map(|&c| c as u32).collect()
}

pub fn render_str(s: &[u32]) -> String {
    s.iter()
        .map(|&c| char::from_u32(c).unwrap_or(char::REPLACEMENT_CHARACTER))
        .collect()
}

fn reversed(s: &[u32]) -> Str {
    s.iter().rev().copied().collect()
}

/// Concatenation system over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextSystem {
    alphabet: Vec<u32>,
    pub allow_reversal: bool,
}

impl TextSystem {
    pub fn new(alphabet: impl IntoIterator<Item = u32>, allow_reversal: bool) -> Result<Self> {
        let set: BTreeSet<u32> = alphabet.into_iter().collect();
        if set.is_empty() {
            return Err(AssemblyError::InvalidArgument("alphabet is empty".into()));
        }
        Ok(Self {
            alphabet: set.into_iter().collect(),
            allow_reversal,
        })
    }

    /// The system whose alphabet is exactly the characters of `s`.
    pub fn for_text(s: &[u32], allow_reversal: bool) -> Result<Self> {
        Self::new(s.iter().copied(), allow_reversal)
    }

    pub fn alphabet(&self) -> &[u32] {
        &self.alphabet
    }

    pub fn check(&self, s: &[u32]) -> Result<()> {
        match s.iter().find(|c| self.alphabet.binary_search(c).is_err()) {
            Some(&c) => Err(AssemblyError::InvalidArgument(format!(
                "character {:?} is not in the alphabet",
                render_str(&[c])
            ))),
            None if s.is_empty() => Err(AssemblyError::InvalidArgument(
                "the empty string has no pathway".into(),
            )),
            None => Ok(()),
        }
    }

    /// Substrings of the targets (and their reverses when enabled).
    pub fn fragments(&self, targets: &[Str]) -> HashSet<Str> {
        let mut set = HashSet::new();
        for t in targets {
            for i in 0..t.len() {
                for j in i + 1..=t.len() {
                    let f = &t[i..j];
                    if set.insert(f.to_vec()) && self.allow_reversal {
                        set.insert(reversed(f));
                    }
                }
            }
        }
        set
    }

    /// Splits `s` into its distinct repeated fragments and remainders.
    fn tilings(&self, x: &[u32], space: &dyn TargetSpace<Str>) -> Vec<Decomposition<Str>> {
        let mut out = Vec::new();
        for f in repeated_substrings(self, x) {
            if 2 * f.len() > x.len() {
                continue;
            }
            let rev = if self.allow_reversal { Some(reversed(&f)) } else { None };
            let mut tiles = Vec::new();
            let mut i = 0;
            while i + f.len() <= x.len() {
                let w = &x[i..i + f.len()];
                if w == f.as_slice() || rev.as_deref() == Some(w) {
                    tiles.push(i);
                    i += f.len();
                } else {
                    i += 1;
                }
            }
            if tiles.len() < 2 {
                continue;
            }
            let mut parts: Vec<Str> = Vec::new();
            let mut cuts = Vec::new();
            let mut at = 0;
            for &t in &tiles {
                if t > at {
                    parts.push(x[at..t].to_vec());
                    cuts.push(t);
                }
                parts.push(f.clone());
                cuts.push(t + f.len());
                at = t + f.len();
            }
            if at < x.len() {
                parts.push(x[at..].to_vec());
                cuts.push(x.len());
            }
            let prefixes: Vec<Str> = cuts[1..].iter().map(|&c| x[..c].to_vec()).collect();
            if prefixes.iter().all(|p| space.contains(p)) {
                out.push(Decomposition::chain(parts, prefixes));
            }
        }
        out
    }
}

/// `{a+b, b+a}`, or all eight reversal variants when enabled, sorted and
/// without duplicates.
pub fn compose_strings(cfg: &TextSystem, a: &[u32], b: &[u32]) -> Vec<Str> {
    let cat = |x: &[u32], y: &[u32]| -> Str { x.iter().chain(y).copied().collect() };
    let mut out = vec![cat(a, b), cat(b, a)];
    if cfg.allow_reversal {
        let (ra, rb) = (reversed(a), reversed(b));
        out.extend([
            cat(&ra, b),
            cat(b, &ra),
            cat(a, &rb),
            cat(&rb, a),
            cat(&ra, &rb),
            cat(&rb, &ra),
        ]);
    }
    out.sort();
    out.dedup();
    out
}

/// Substrings of length at least 2 occurring at two or more positions
/// (overlaps allowed). With reversal a substring and its reverse are one
/// object, reported by the smaller of the two.
pub fn repeated_substrings(cfg: &TextSystem, s: &[u32]) -> BTreeSet<Str> {
    let mut counts: HashMap<&[u32], usize> = HashMap::new();
    for i in 0..s.len() {
        for j in i + 2..=s.len() {
            *counts.entry(&s[i..j]).or_default() += 1;
        }
    }
    let mut out = BTreeSet::new();
    for (&f, &c) in &counts {
        let mut total = c;
        let mut key = f.to_vec();
        if cfg.allow_reversal {
            let r = reversed(f);
            if r != key {
                total += counts.get(r.as_slice()).copied().unwrap_or(0);
            }
            key = key.min(r);
        }
        if total >= 2 {
            out.insert(key);
        }
    }
    out
}

struct StringSpace<'a> {
    sys: &'a TextSystem,
    set: HashSet<Str>,
}

impl TargetSpace<Str> for StringSpace<'_> {
    fn contains(&self, x: &Str) -> bool {
        self.set.contains(x)
    }

    fn compose(&self, a: &Str, b: &Str) -> Vec<Str> {
        compose_strings(self.sys, a, b)
            .into_iter()
            .filter(|p| self.set.contains(p))
            .collect()
    }

    fn splits(&self, x: &Str) -> Vec<(Str, Str)> {
        (1..x.len())
            .map(|k| (x[..k].to_vec(), x[k..].to_vec()))
            .filter(|(a, b)| self.set.contains(a) && self.set.contains(b))
            .collect()
    }
}

impl AssemblySystem for TextSystem {
    type Object = Str;

    fn basis(&self) -> Vec<Str> {
        self.alphabet.iter().map(|&c| vec![c]).collect()
    }

    fn compose(&self, a: &Str, b: &Str) -> Result<Vec<Str>> {
        Ok(compose_strings(self, a, b))
    }

    fn render(&self, x: &Str) -> String {
        render_str(x)
    }

    fn size(&self, x: &Str) -> Option<u64> {
        Some(x.len() as u64)
    }

    fn is_basis(&self, x: &Str) -> bool {
        x.len() == 1 && self.alphabet.binary_search(&x[0]).is_ok()
    }

    fn measures(&self) -> Vec<MeasureSpec<Str>> {
        let basis = self.basis();
        basis
            .iter()
            .map(|b| MeasureSpec::indicator(format!("count({})", render_str(b)), &basis, b))
            .collect()
    }

    fn target_space<'a>(&'a self, targets: &[Str]) -> Result<Option<Box<dyn TargetSpace<Str> + 'a>>> {
        for t in targets {
            self.check(t)?;
        }
        Ok(Some(Box::new(StringSpace {
            sys: self,
            set: self.fragments(targets),
        })))
    }

    fn decompositions(&self, x: &Str, space: &dyn TargetSpace<Str>) -> Result<Vec<Decomposition<Str>>> {
        let mut out = self.tilings(x, space);
        out.extend(
            space
                .splits(x)
                .into_iter()
                .map(|(a, b)| Decomposition::binary(a, b, x.clone())),
        );
        Ok(out)
    }
}

/// Assembly index of `s` under `cfg`. For the tree heuristic, strings
/// longer than [`GENERIC_TREE_LIMIT`] use the suffix-array tiling.
pub fn string_assembly_index(
    cfg: &TextSystem,
    s: &[u32],
    search: &SearchConfig,
) -> Result<IndexResult<Str>> {
    cfg.check(s)?;
    if search.algorithm == crate::search::Algorithm::Tree && s.len() > GENERIC_TREE_LIMIT {
        let grammar = slp::build_slp(s);
        let witness = grammar.to_pathway();
        let targets = [s.to_vec()];
        let lb = crate::search::a_priori_lower_bound(cfg, &targets);
        let index = witness.len();
        if let Some(m) = search.max_index {
            if index > m {
                return Err(AssemblyError::BoundExceeded {
                    lower_bound: lb,
                    upper_bound: Some(index),
                });
            }
        }
        return Ok(IndexResult {
            index,
            witness,
            lower_bound: lb.min(index),
            upper_bound: index,
            exact: index <= lb,
        });
    }
    assembly_index(cfg, &s.to_vec(), search)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Algorithm;

    fn sys(s: &str, rev: bool) -> TextSystem {
        TextSystem::for_text(&str_from(s), rev).unwrap()
    }

    fn strs(v: &[&str]) -> Vec<Str> {
        v.iter().map(|s| str_from(s)).collect()
    }

    #[test]
    fn compose_examples() {
        let t = sys("abc", false);
        assert_eq!(compose_strings(&t, &str_from("ab"), &str_from("c")), strs(&["abc", "cab"]));
        let t = sys("abc", true);
        assert_eq!(
            compose_strings(&t, &str_from("ab"), &str_from("c")),
            strs(&["abc", "bac", "cab", "cba"])
        );
        assert_eq!(compose_strings(&t, &str_from("a"), &str_from("a")), strs(&["aa"]));
    }

    #[test]
    fn repeated_examples() {
        let t = sys("abcd", false);
        let v = |s: &str| repeated_substrings(&t, &str_from(s)).into_iter().collect::<Vec<_>>();
        assert_eq!(v("abab"), strs(&["ab"]));
        let t = sys("a", false);
        assert_eq!(
            repeated_substrings(&t, &str_from("aaaa")).into_iter().collect::<Vec<_>>(),
            strs(&["aa", "aaa"])
        );
        let t = sys("abcd", false);
        assert!(repeated_substrings(&t, &str_from("abcd")).is_empty());
    }

    #[test]
    fn small_indices() {
        let ex = SearchConfig::default();
        for (s, want) in [("a", 0), ("abab", 2), ("abcd", 3), ("aaaa", 2), ("abababab", 3)] {
            let r = string_assembly_index(&sys(s, false), &str_from(s), &ex).unwrap();
            assert_eq!(r.index, want, "{s}");
            assert!(r.exact);
        }
    }

    #[test]
    fn tree_examples() {
        let tree = SearchConfig::with_algorithm(Algorithm::Tree);
        let idx = |s: &str| string_assembly_index(&sys(s, false), &str_from(s), &tree).unwrap().index;
        assert_eq!(idx("abab"), 2);
        assert_eq!(idx(&"a".repeat(64)), 6);
        assert!(idx("abcabd") <= 5);
        assert_eq!(idx(&"a".repeat(1024)), 10);
    }
}
