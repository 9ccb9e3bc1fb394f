//! Practical block-based motion estimation and compensation: full-search
//! matching with sub-pel refinement, coding-residual generation,
//! bidirectional interpolation of absent frames, and empirical
//! autocorrelation measurement.

mod acf_est;
mod fruc;
mod predict;
mod search;

pub use acf_est::empirical_acf;
pub use fruc::{fruc_interpolate, fruc_mse_measure};
pub use predict::{mc_predict_coding, predict_with_motion, ResidualField};
pub use search::{block_match, BlockMotion, MeConfig, Metric, MotionField, Subpel};
