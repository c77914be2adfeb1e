//! Two-dimensional nine-neighborhood linear cellular automata.
//!
//! The 512 linear rules XOR together some subset of a cell's Moore
//! neighborhood. This crate evolves them bit-parallel on null-boundary
//! grids, classifies the pattern a lone seed grows into — by convex-hull
//! shape (point, line, triangle, ... hexagon) and by whether the figure's
//! corners are connected through occupied cells — and counts rule spaces
//! exactly.
//!
//! The classification protocol follows the published experiment: an 80x80
//! grid, a single seed at (40, 40), and 15 iterations. Bundled reference
//! tables record the classification as printed, typos included, and
//! [`census::diff_against_paper`] reconciles computed results against them.

pub mod census;
pub mod combinatorics;
pub mod connectivity;
pub mod error;
pub mod evolve;
pub mod grid;
pub mod rule;
pub mod shape;

pub use census::{
    census_csv, diff_against_paper, parse_table, run_census, CensusConfig, CensusRecord,
    PaperTable, TableDiff, TableKind,
};
pub use connectivity::{classify_connectivity, connected_components, Adjacency, ConnectivityClass};
pub use error::CaError;
pub use evolve::{evolve, kernel, pattern_after, step, step_scalar, Kernel};
pub use grid::{Grid, PatternSnapshot};
pub use rule::{weight_to_offset, NeighborOffset, RuleMask};
pub use shape::{classify_shape, convex_hull, HullPolygon, ShapeClass};
