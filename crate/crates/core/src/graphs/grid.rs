//! Pixel grids as graphs: one node per pixel, edges between 4-neighbours.
//!
//! With the orientation locked, horizontal and vertical edges carry
//! different labels, so a patch and its 90° rotation are different
//! objects.

use std::collections::HashMap;
use std::rc::Rc;

use super::{canonical_form, CanonicalGraph, ColouredGraph, GraphSystem};
use crate::error::{AssemblyError, Result};
use crate::search::{a_priori_lower_bound, IndexResult, SearchConfig};
use crate::tree::{plan_to_pathway, Plan};

pub const HORIZONTAL: u8 = 0;
pub const VERTICAL: u8 = 1;

/// Below this many pixels the grid tree tries every cut; above it only
/// the two halving cuts.
pub const ALL_CUTS_LIMIT: usize = 64;

/// Largest image the grid tree accepts.
pub const GRID_PIXEL_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridImage {
    pub rows: usize,
    pub cols: usize,
    /// Row-major colour indices.
    pub pixels: Vec<u32>,
    pub orientation_locked: bool,
}

impl GridImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u32>, orientation_locked: bool) -> Result<Self> {
        let img = Self {
            rows,
            cols,
            pixels,
            orientation_locked,
        };
        img.check()?;
        Ok(img)
    }

    /// An `n`×`n` board of alternating colours 0 and 1.
    pub fn chessboard(n: usize) -> Self {
        let pixels = (0..n * n).map(|k| ((k / n + k % n) % 2) as u32).collect();
        Self {
            rows: n,
            cols: n,
            pixels,
            orientation_locked: false,
        }
    }

    pub fn pixel(&self, r: usize, c: usize) -> u32 {
        self.pixels[r * self.cols + c]
    }

    fn check(&self) -> Result<()> {
        if self.rows.checked_mul(self.cols) != Some(self.pixels.len()) {
            return Err(AssemblyError::InvalidArgument(format!(
                "a {}x{} image needs {} pixels, got {}",
                self.rows,
                self.cols,
                self.rows.saturating_mul(self.cols),
                self.pixels.len()
            )));
        }
        Ok(())
    }

    fn labels(&self) -> (u8, u8) {
        if self.orientation_locked {
            (HORIZONTAL, VERTICAL)
        } else {
            (0, 0)
        }
    }

    /// The lattice graph of the sub-rectangle at `(r0, c0)` of size `h`×`w`.
    fn rect(&self, r0: usize, c0: usize, h: usize, w: usize) -> ColouredGraph {
        let (hl, vl) = self.labels();
        let mut colours = Vec::with_capacity(h * w);
        for r in 0..h {
            for c in 0..w {
                colours.push(self.pixel(r0 + r, c0 + c));
            }
        }
        let mut g = ColouredGraph::new(colours);
        for r in 0..h {
            for c in 0..w {
                let k = r * w + c;
                if c + 1 < w {
                    g.add_edge(k, k + 1, hl).expect("lattice edge");
                }
                if r + 1 < h {
                    g.add_edge(k, k + w, vl).expect("lattice edge");
                }
            }
        }
        g
    }

    /// The system of this image's colours with the matching edge labels.
    pub fn system(&self) -> Result<GraphSystem> {
        let (hl, vl) = self.labels();
        let palette: Vec<u32> = if self.pixels.is_empty() { vec![0] } else { self.pixels.clone() };
        GraphSystem::new(palette, [hl, vl])
    }
}

pub fn grid_to_graph(img: &GridImage) -> Result<ColouredGraph> {
    img.check()?;
    Ok(img.rect(0, 0, img.rows, img.cols))
}

#[derive(Clone, Copy)]
struct Rect {
    r0: usize,
    c0: usize,
    h: usize,
    w: usize,
}

/// Pathway from recursive rectangular cuts, sharing isomorphic pieces.
/// Small images try every cut, larger ones halve along either axis.
pub fn grid_tree_upper_bound(img: &GridImage, cfg: &SearchConfig) -> Result<IndexResult<CanonicalGraph>> {
    img.check()?;
    if img.pixels.is_empty() {
        return Err(AssemblyError::InvalidArgument("the empty image has no pathway".into()));
    }
    if img.pixels.len() > GRID_PIXEL_LIMIT {
        return Err(AssemblyError::BudgetExceeded(format!(
            "{} pixels exceed the grid limit of {GRID_PIXEL_LIMIT}",
            img.pixels.len()
        )));
    }
    let sys = img.system()?;
    let mut t = GridTree {
        img,
        memo: HashMap::new(),
        work: 0,
        budget: cfg.node_budget,
    };
    let whole = Rect {
        r0: 0,
        c0: 0,
        h: img.rows,
        w: img.cols,
    };
    let key = canonical_form(&img.rect(0, 0, img.rows, img.cols));
    let plan = t.plan(whole, &key)?;
    let targets = [key];
    let witness = plan_to_pathway(&sys, &plan, &targets);
    let lb = a_priori_lower_bound(&sys, &targets);
    let index = witness.len();
    if let Some(m) = cfg.max_index {
        if index > m {
            return Err(AssemblyError::BoundExceeded {
                lower_bound: lb,
                upper_bound: Some(index),
            });
        }
    }
    Ok(IndexResult {
        index,
        witness,
        lower_bound: lb.min(index),
        upper_bound: index,
        exact: index <= lb,
    })
}

struct GridTree<'i> {
    img: &'i GridImage,
    memo: HashMap<CanonicalGraph, Rc<Plan<CanonicalGraph>>>,
    work: u64,
    budget: u64,
}

impl GridTree<'_> {
    fn key(&self, r: Rect) -> CanonicalGraph {
        canonical_form(&self.img.rect(r.r0, r.c0, r.h, r.w))
    }

    fn plan(&mut self, r: Rect, key: &CanonicalGraph) -> Result<Rc<Plan<CanonicalGraph>>> {
        if r.h * r.w == 1 {
            return Ok(Rc::new(Plan::new()));
        }
        if let Some(p) = self.memo.get(key) {
            return Ok(p.clone());
        }
        self.work += 1;
        if self.work > self.budget {
            return Err(AssemblyError::BudgetExceeded("grid tree exceeded its budget".into()));
        }
        let mut cuts = Vec::new();
        if r.h * r.w <= ALL_CUTS_LIMIT {
            cuts.extend((1..r.h).map(|i| (true, i)));
            cuts.extend((1..r.w).map(|j| (false, j)));
        } else {
            if r.h > 1 {
                cuts.push((true, r.h / 2));
            }
            if r.w > 1 {
                cuts.push((false, r.w / 2));
            }
        }
        let mut best: Option<Plan<CanonicalGraph>> = None;
        for (horizontal, at) in cuts {
            let (a, b) = if horizontal {
                (
                    Rect { h: at, ..r },
                    Rect {
                        r0: r.r0 + at,
                        h: r.h - at,
                        ..r
                    },
                )
            } else {
                (
                    Rect { w: at, ..r },
                    Rect {
                        c0: r.c0 + at,
                        w: r.w - at,
                        ..r
                    },
                )
            };
            let (ka, kb) = (self.key(a), self.key(b));
            let pa = self.plan(a, &ka)?;
            if best.as_ref().is_some_and(|p| pa.len() + 1 >= p.len()) {
                continue;
            }
            let pb = self.plan(b, &kb)?;
            let mut merged = (*pa).clone();
            for (k, v) in pb.iter() {
                merged.entry(k.clone()).or_insert_with(|| v.clone());
            }
            merged.insert(key.clone(), (ka, kb));
            if best.as_ref().is_none_or(|p| merged.len() < p.len()) {
                best = Some(merged);
            }
        }
        let plan = Rc::new(best.expect("a rectangle of two or more pixels has a cut"));
        self.memo.insert(key.clone(), plan.clone());
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathway::validate_pathway;

    #[test]
    fn small_grids() {
        let one = GridImage::new(1, 1, vec![5], false).unwrap();
        assert_eq!(grid_to_graph(&one).unwrap().node_count(), 1);
        let sq = GridImage::new(2, 2, vec![0, 1, 2, 3], false).unwrap();
        let g = grid_to_graph(&sq).unwrap();
        assert_eq!(g.edge_count(), 4);
        let cycle = ColouredGraph::with_edges(vec![0, 1, 3, 2], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&cycle));
        assert!(GridImage::new(2, 3, vec![0; 5], false).is_err());
    }

    #[test]
    fn chessboard_doubles() {
        let img = GridImage::chessboard(8);
        let r = grid_tree_upper_bound(&img, &SearchConfig::default()).unwrap();
        assert!(r.index <= 6, "{}", r.index);
        let sys = img.system().unwrap();
        assert!(validate_pathway(&sys, &r.witness).unwrap().valid);
    }

    #[test]
    fn orientation_lock_separates_rotations() {
        let wide = GridImage::new(1, 3, vec![0, 1, 1], true).unwrap();
        let tall = GridImage::new(3, 1, vec![0, 1, 1], true).unwrap();
        let (a, b) = (grid_to_graph(&wide).unwrap(), grid_to_graph(&tall).unwrap());
        assert_ne!(canonical_form(&a), canonical_form(&b));
        let wide = GridImage { orientation_locked: false, ..wide };
        let tall = GridImage { orientation_locked: false, ..tall };
        let (a, b) = (grid_to_graph(&wide).unwrap(), grid_to_graph(&tall).unwrap());
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }
}
