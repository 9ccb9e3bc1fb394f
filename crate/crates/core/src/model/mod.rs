//! Closed-form statistical model of motion-compensated prediction residuals.
//!
//! The video signal is a translating wide-sense-stationary base image plus a
//! finite-memory stack of accumulated white noise layers and per-frame local
//! noise. From that model this module evaluates, in closed form:
//!
//! * the compression-noise variance under several rate-distortion models,
//! * the autocorrelation of the compensated noise difference,
//! * the full residual ACF and variance for prediction of an available frame
//!   (inter coding),
//! * the error ACF and MSE for bidirectional prediction of an absent frame
//!   (frame-rate up-conversion),
//! * two separable simplifications of the coding ACF.
//!
//! Every evaluator is a pure function of its scenario; nothing is cached.

mod acf;
mod coding;
mod fruc;
mod params;

pub use acf::AutocorrMap;
pub use coding::CodingScenario;
pub use fruc::FrucScenario;
pub use params::{CompressionModel, ModelParams};
