//! The bilinear averaging operator `A_N`, lacunary trajectories, and the
//! sandwich and maximal inequality chains.

pub mod chains;
pub mod operator;
pub mod trajectory;
pub mod types;

pub use chains::{maximal_chain_check, sandwich_check, MaximalChainOutcome, SandwichOutcome};
pub use operator::{
    compute_average, compute_average_quadrature, difference_average, single_quadratic_average,
};
pub use trajectory::lacunary_trajectory;
pub use types::{AverageRequest, ExponentPair, LacunarySchedule, TrajectoryRecord};
