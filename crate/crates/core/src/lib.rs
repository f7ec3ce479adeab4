//! Neighborhood-structure configuration models.
//!
//! Fit a graph with color refinement, then sample graphs that keep every
//! node's refinement colors up to a chosen depth by rewiring edges inside
//! color-pair blocks. Spectral centralities, comparison metrics and baseline
//! null models round out the toolkit.

pub mod analysis;
pub mod baselines;
pub mod centrality;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod par;
pub mod quotient;
pub mod refine;
pub mod rng;
pub mod sampler;

pub use analysis::{audit_sample, ComparisonReport};
pub use centrality::{CentralityKind, CentralityVector};
pub use error::{NestError, Result};
pub use graph::{Direction, EdgeListOptions, Graph};
pub use par::Execution;
pub use quotient::{cross_depth, quotient, CountTable, QuotientView};
pub use refine::{
    initial_coloring, inject_external_colors, is_equitable, joint_agreement, partial_refine, read_colors, refine,
    refine_with, write_colors, Coloring, Depth, InitialColoring, JointAgreement, Mode, RefinementHistory,
};
pub use sampler::{sample, sample_with_coloring, Algorithm, SamplerConfig};
