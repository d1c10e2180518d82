//! Exact model of monotone Fock space over a rational grid.
//!
//! States live on the subspace spanned by piecewise polynomials on cells of
//! the ordered simplex `t_1 < … < t_k`, which is closed under creation and
//! annihilation with grid-interval indicator test functions. All arithmetic
//! is exact; unbounded integration limits are cut to the operator's support.

mod checks;
mod grid;
mod ops;
mod poly;
mod state;

use thiserror::Error;

pub use checks::{
    additivity_check, adjointness_check, adjointness_holds, gram_is_psd, independence_check,
    reachable_states, single_interval_alphabet, stationarity_check, IndependenceReport,
};
pub use grid::Grid;
pub use ops::{apply, apply_word, moment, IntervalOp, OpKind};
pub use poly::{Limit, Monomial, OrderedPoly};
pub use state::{integrate_over_cell, Cell, FockState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("{0} is not a grid breakpoint")]
    NotABreakpoint(String),
    #[error("empty operator support")]
    EmptySupport,
    #[error("operator support lies outside the grid")]
    SupportOutOfRange,
    #[error("states live on different grids")]
    GridMismatch,
    #[error("polynomial arity does not match the cell")]
    ArityMismatch,
}
