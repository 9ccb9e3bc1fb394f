use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

/// How the ground-truth translation evolves from frame to frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum MotionMode {
    ConstantVelocity { vx: f64, vy: f64 },
    RandomWalk { step_sigma: f64, seed: u64 },
}

/// Ground-truth translation of a sequence: per-frame increments and the
/// cumulative displacement they telescope to.
///
/// Displacements are defined relative to frame 0; times at or before 0 map
/// to zero displacement, which keeps the pre-existing noise layers anchored
/// while preserving the telescoping identity for every frame pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotionPath {
    /// `steps[t - 1]` is the increment from frame `t - 1` to frame `t`.
    steps: Vec<(f64, f64)>,
}

impl MotionPath {
    pub fn from_steps(steps: Vec<(f64, f64)>) -> Self {
        MotionPath { steps }
    }

    /// Number of frames after frame 0 the path covers.
    pub fn frames(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[(f64, f64)] {
        &self.steps
    }

    /// Cumulative displacement of frame `t` relative to frame 0.
    pub fn cumulative(&self, t: i64) -> (f64, f64) {
        if t <= 0 {
            return (0.0, 0.0);
        }
        let n = (t as usize).min(self.steps.len());
        let mut x = 0.0;
        let mut y = 0.0;
        for &(sx, sy) in &self.steps[..n] {
            x += sx;
            y += sy;
        }
        (x, y)
    }

    /// Displacement between two time points, positive direction `t1 -> t2`.
    pub fn between(&self, t2: i64, t1: i64) -> (f64, f64) {
        let (x2, y2) = self.cumulative(t2);
        let (x1, y1) = self.cumulative(t1);
        (x2 - x1, y2 - y1)
    }

    /// Largest absolute cumulative displacement over the path, per axis
    /// combined; used for margin sizing.
    pub fn max_cumulative_abs(&self) -> f64 {
        let mut max = 0.0f64;
        for t in 0..=self.steps.len() as i64 {
            let (x, y) = self.cumulative(t);
            max = max.max(x.abs()).max(y.abs());
        }
        max
    }

    /// Largest displacement between any two time points of the path (the
    /// per-axis cumulative range). Bounds every shift the renderer samples,
    /// including those of the compensated noise layers.
    pub fn span(&self) -> f64 {
        let mut min_x = 0.0f64;
        let mut max_x = 0.0f64;
        let mut min_y = 0.0f64;
        let mut max_y = 0.0f64;
        for t in 0..=self.steps.len() as i64 {
            let (x, y) = self.cumulative(t);
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        (max_x - min_x).max(max_y - min_y)
    }
}

/// Generate a ground-truth path of `frames` increments.
pub fn gen_motion_path(frames: usize, mode: &MotionMode) -> Result<MotionPath> {
    if frames < 1 {
        return Err(Error::invalid("motion path needs at least one frame step"));
    }
    let steps = match *mode {
        MotionMode::ConstantVelocity { vx, vy } => vec![(vx, vy); frames],
        MotionMode::RandomWalk { step_sigma, seed } => {
            if !(step_sigma >= 0.0) {
                return Err(Error::invalid("step_sigma must be >= 0"));
            }
            let mut rng = seed::rng(seed, seed::DOMAIN_MOTION, 0);
            let normal = Normal::new(0.0, step_sigma).map_err(|e| Error::invalid(e.to_string()))?;
            (0..frames)
                .map(|_| (normal.sample(&mut rng), normal.sample(&mut rng)))
                .collect()
        }
    };
    Ok(MotionPath::from_steps(steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_velocity_telescopes() {
        let path = gen_motion_path(5, &MotionMode::ConstantVelocity { vx: 1.0, vy: 0.0 }).unwrap();
        assert_eq!(path.cumulative(5), (5.0, 0.0));
        assert_eq!(path.between(5, 2), (3.0, 0.0));
    }

    #[test]
    fn antisymmetry_and_self_motion() {
        let path = gen_motion_path(
            6,
            &MotionMode::RandomWalk {
                step_sigma: 0.7,
                seed: 3,
            },
        )
        .unwrap();
        let (fx, fy) = path.between(3, 1);
        let (bx, by) = path.between(1, 3);
        assert_eq!((fx + bx, fy + by), (0.0, 0.0));
        assert_eq!(path.between(4, 4), (0.0, 0.0));
        let (ax, ay) = path.between(5, 2);
        let (bx, by) = path.between(2, 0);
        let (cx, cy) = path.cumulative(5);
        assert!((ax + bx - cx).abs() < 1e-12 && (ay + by - cy).abs() < 1e-12);
    }

    #[test]
    fn random_walk_is_reproducible() {
        let mode = MotionMode::RandomWalk {
            step_sigma: 1.0,
            seed: 11,
        };
        assert_eq!(gen_motion_path(8, &mode).unwrap(), gen_motion_path(8, &mode).unwrap());
        let other = MotionMode::RandomWalk {
            step_sigma: 1.0,
            seed: 12,
        };
        assert_ne!(gen_motion_path(8, &mode).unwrap(), gen_motion_path(8, &other).unwrap());
    }

    #[test]
    fn negative_times_are_anchored() {
        let path = gen_motion_path(3, &MotionMode::ConstantVelocity { vx: 2.0, vy: 1.0 }).unwrap();
        assert_eq!(path.cumulative(-4), (0.0, 0.0));
        assert_eq!(path.between(2, -3), path.cumulative(2));
    }
}
