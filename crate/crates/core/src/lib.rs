//! Factor arbitrary linear graph filters into products of neighbor-local
//! factors and simulate their round-synchronous distributed execution.

pub mod eliminate;
pub mod error;
pub mod factor;
pub mod graph;
pub mod lift;
pub mod matrix;
pub mod optimize;
pub mod scalar;
pub mod schedule;
pub mod simulate;

pub use eliminate::{decompose, eliminate_to_diagonal, factor_count_bound, Elimination};
pub use error::{Error, Result};
pub use factor::{is_directly_implementable, product, Factor};
pub use graph::{Graph, Path};
pub use lift::{lift, LiftedSequence};
pub use matrix::{parse_vector, Matrix};
pub use optimize::{cancel_inverse_pairs, merge_adjacent, optimize, OptimizationReport};
pub use scalar::Scalar;
pub use schedule::{Schedule, Stats, Step};
pub use simulate::{float_deviation, simulate, simulate_f64, verify, Mismatch, SimTrace};
