//! Pathway assembly indices for numbers, strings, coloured graphs and
//! finite groups, with addition-chain lower bounds and a compression
//! codec built on assembly pathways.
//!
//! The core abstraction is [`AssemblySystem`]: a basis and a composition
//! rule. [`assembly_index`] finds the shortest pathway that builds an
//! object; [`co_assembly_index`] does the same for a set of objects.
//!
//! ```
//! use pathway_assembly::{assembly_index, numbers::AdditionSystem, SearchConfig};
//!
//! let r = assembly_index(&AdditionSystem, &128, &SearchConfig::default()).unwrap();
//! assert_eq!(r.index, 7);
//! assert!(r.exact);
//! ```

pub mod bounds;
pub mod chains;
pub mod cli;
pub mod compress;
pub mod error;
pub mod graphs;
pub mod groups;
pub mod measure;
pub mod numbers;
pub mod pathway;
pub mod sample;
pub mod search;
pub mod strings;
pub mod system;
pub mod tree;

pub use bounds::{max_pathway_probability, schonhage_lower_bound, upper_bound_from_size};
pub use error::{AssemblyError, ParseError, Result};
pub use measure::{evaluate_measure, object_size, verify_measure_consistency};
pub use pathway::{pathway_length, validate_pathway, Pathway, PathwayDoc, Slot, Step, ValidityReport};
pub use sample::sample_pathways;
pub use search::{
    assembly_index, assembly_index_from, co_assembly_index, Algorithm, IndexResult, SearchConfig,
};
pub use system::{AssemblySystem, Decomposition, MeasureSpec, TargetSpace};
pub use tree::tree_upper_bound;
