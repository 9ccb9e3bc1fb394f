//! Synthetic sequences that realize the stochastic signal model exactly:
//! a translating stationary AR(1) base image, a sliding stack of accumulated
//! white-noise layers moving with it, and per-frame local noise.

mod base;
mod motion;
mod render;

pub use base::{gen_base_image, BaseImage};
pub use motion::{gen_motion_path, MotionMode, MotionPath};
pub use render::{
    apply_compression_noise, render_sequence, required_margin, FrameSequence, SequenceDims,
};
