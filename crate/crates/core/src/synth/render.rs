use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::plane::{Field, Plane};
use crate::seed;
use crate::synth::base::{gen_base_image, white_field};
use crate::synth::motion::MotionPath;

/// Frame geometry of a rendered sequence. Frames are `width x height` crops
/// of a canvas extended by `margin` on every side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceDims {
    pub width: usize,
    pub height: usize,
    pub margin: usize,
}

/// Canvas margin that keeps every sample of a run inside the canvas:
/// the largest shift the path can produce, plus the motion-search range,
/// plus bilinear support.
pub fn required_margin(path: &MotionPath, search_range: usize) -> usize {
    path.span().ceil() as usize + search_range + 2
}

/// A rendered sequence with its generation inputs.
#[derive(Clone, Debug)]
pub struct FrameSequence {
    pub frames: Vec<Plane>,
    pub path: MotionPath,
    pub params: ModelParams,
    pub dims: SequenceDims,
    pub seed: u64,
}

impl FrameSequence {
    pub fn frame(&self, t: usize) -> &Plane {
        &self.frames[t]
    }
}

/// Render frames 0..=T of the signal model: the shifted base image, plus the
/// last `L` accumulated noise layers each compensated to its introduction
/// time, plus per-frame local noise at the basic variance (compression noise
/// is applied downstream, never here).
pub fn render_sequence(
    params: &ModelParams,
    dims: &SequenceDims,
    path: &MotionPath,
    seed: u64,
) -> Result<FrameSequence> {
    params.validate()?;
    let needed = path.span().ceil() as usize + 1;
    if needed > dims.margin {
        return Err(Error::MotionOutOfMargin {
            needed,
            margin: dims.margin,
        });
    }
    let memory = params.noise_memory as i64;
    let base = gen_base_image(
        dims.height,
        dims.width,
        dims.margin,
        params.sigma_v_sq,
        params.rho_v,
        seed,
    )?;
    let canvas_w = dims.width + 2 * dims.margin;
    let canvas_h = dims.height + 2 * dims.margin;
    let sigma_q_sq = params.sigma_q_sq();

    let gen_layer = |index: i64| -> Result<Field> {
        let mut rng = seed::rng(seed, seed::DOMAIN_NOISE_LAYER, index as u64);
        white_field(canvas_w, canvas_h, sigma_q_sq, &mut rng)
    };

    // Sliding stack: exactly L layers contribute to every frame, and layers
    // exist from index -L+1 so frame 0 is already stationary.
    let mut layers: VecDeque<(i64, Field)> = VecDeque::with_capacity(memory as usize);
    for i in (1 - memory)..=0 {
        layers.push_back((i, gen_layer(i)?));
    }

    let total = path.frames() + 1;
    let mut frames = Vec::with_capacity(total);
    let m = dims.margin as f64;
    for t in 0..total as i64 {
        if t > 0 {
            layers.pop_front();
            layers.push_back((t, gen_layer(t)?));
        }
        let (bx, by) = path.cumulative(t);
        let mut w_rng = seed::rng(seed, seed::DOMAIN_LOCAL_NOISE, t as u64);
        let local = white_field(dims.width, dims.height, params.sigma_w_basic_sq, &mut w_rng)?;

        let mut frame = Plane::new(dims.width, dims.height);
        for y in 0..dims.height {
            for x in 0..dims.width {
                let mut v = base
                    .canvas
                    .sample_bilinear(x as f64 + m - bx, y as f64 + m - by);
                for (i, layer) in &layers {
                    let (qx, qy) = path.between(t, *i);
                    v += layer.sample_bilinear(x as f64 + m - qx, y as f64 + m - qy);
                }
                v += local.get(x, y);
                frame.set(x, y, v as f32);
            }
        }
        frames.push(frame);
    }

    Ok(FrameSequence {
        frames,
        path: path.clone(),
        params: *params,
        dims: *dims,
        seed,
    })
}

/// Model a reconstructed-from-compression frame by adding white Gaussian
/// noise of the given mean-squared error.
pub fn apply_compression_noise(frame: &Plane, mse: f64, seed: u64) -> Result<Plane> {
    if !(mse >= 0.0) {
        return Err(Error::invalid(format!("mse must be >= 0, got {mse}")));
    }
    if mse == 0.0 {
        return Ok(frame.clone());
    }
    let mut rng = seed::rng(seed, seed::DOMAIN_COMPRESSION, 0);
    let noise = white_field(frame.width(), frame.height(), mse, &mut rng)?;
    let mut out = frame.clone();
    for y in 0..frame.height() {
        for x in 0..frame.width() {
            out.set(x, y, (frame.get(x, y) as f64 + noise.get(x, y)) as f32);
        }
    }
    Ok(out)
}
