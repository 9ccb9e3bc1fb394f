use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rate-distortion model for the compression component of the local noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CompressionModel {
    /// Fitted curve `beta * rate^-alpha`; diverges at rate 0.
    EmpiricalRd { alpha: f64, beta: f64 },
    /// Memoryless-Gaussian bound `source_variance * 2^(-2 rate)`.
    GaussianRd { source_variance: f64 },
    /// Externally measured mean-squared error, rate-independent.
    ExplicitMse { mse: f64 },
    /// No compression: zero error at every rate.
    Uncompressed,
}

impl CompressionModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CompressionModel::EmpiricalRd { alpha, beta } => {
                if !(alpha > 0.0) {
                    return Err(Error::invalid(format!("empirical_rd alpha must be > 0, got {alpha}")));
                }
                if !(beta >= 0.0) {
                    return Err(Error::invalid(format!("empirical_rd beta must be >= 0, got {beta}")));
                }
            }
            CompressionModel::GaussianRd { source_variance } => {
                if !(source_variance >= 0.0) {
                    return Err(Error::invalid(format!(
                        "gaussian_rd source_variance must be >= 0, got {source_variance}"
                    )));
                }
            }
            CompressionModel::ExplicitMse { mse } => {
                if !(mse >= 0.0) {
                    return Err(Error::invalid(format!("explicit mse must be >= 0, got {mse}")));
                }
            }
            CompressionModel::Uncompressed => {}
        }
        Ok(())
    }

    /// Compression-noise variance at a bit-rate in bits per pixel.
    pub fn mse(&self, rate: f64) -> Result<f64> {
        if !(rate >= 0.0) {
            return Err(Error::invalid(format!("bit-rate must be >= 0, got {rate}")));
        }
        match *self {
            CompressionModel::EmpiricalRd { alpha, beta } => {
                if rate == 0.0 {
                    return Err(Error::domain(
                        "empirical_rd diverges at rate 0; use an uncompressed frame instead",
                    ));
                }
                Ok(beta * rate.powf(-alpha))
            }
            CompressionModel::GaussianRd { source_variance } => {
                Ok(source_variance * (-2.0 * rate).exp2())
            }
            CompressionModel::ExplicitMse { mse } => Ok(mse),
            CompressionModel::Uncompressed => Ok(0.0),
        }
    }
}

/// Constants of the stochastic video-signal model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Variance of the translating base image.
    pub sigma_v_sq: f64,
    /// Spatial correlation coefficient of the base image, `0 <= rho_v < 1`.
    pub rho_v: f64,
    /// Memory length of the accumulated-noise process, in frames.
    pub noise_memory: u32,
    /// Accumulated-noise energy of a one-frame-per-second sequence; the
    /// per-frame layer variance is this divided by the frame-rate and is
    /// always recomputed, never stored.
    pub sigma_q_tilde_sq: f64,
    /// Frames per second.
    pub frame_rate: f64,
    /// Non-compression local-noise variance.
    pub sigma_w_basic_sq: f64,
    /// Rate-distortion model feeding the compression part of the local noise.
    pub compression: CompressionModel,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_v_sq >= 0.0) {
            return Err(Error::invalid(format!("sigma_v_sq must be >= 0, got {}", self.sigma_v_sq)));
        }
        if !(0.0..1.0).contains(&self.rho_v) {
            return Err(Error::invalid(format!("rho_v must be in [0, 1), got {}", self.rho_v)));
        }
        if self.noise_memory < 1 {
            return Err(Error::invalid("noise_memory must be >= 1"));
        }
        if !(self.sigma_q_tilde_sq >= 0.0) {
            return Err(Error::invalid(format!(
                "sigma_q_tilde_sq must be >= 0, got {}",
                self.sigma_q_tilde_sq
            )));
        }
        if !(self.frame_rate > 0.0) {
            return Err(Error::invalid(format!("frame_rate must be > 0, got {}", self.frame_rate)));
        }
        if !(self.sigma_w_basic_sq >= 0.0) {
            return Err(Error::invalid(format!(
                "sigma_w_basic_sq must be >= 0, got {}",
                self.sigma_w_basic_sq
            )));
        }
        self.compression.validate()
    }

    /// Per-frame accumulated-noise layer variance at the configured
    /// frame-rate.
    pub fn sigma_q_sq(&self) -> f64 {
        self.sigma_q_tilde_sq / self.frame_rate
    }

    /// Base-image autocorrelation, separable-exponential in the lags.
    pub fn base_image_acf(&self, k: i64, l: i64) -> f64 {
        self.sigma_v_sq * self.rho_v.powi((k.abs() + l.abs()) as i32)
    }

    /// Autocorrelation of the compensated noise difference between two
    /// frames `frame_gap` apart, with local-noise variances `sigma_w1_sq`
    /// (earlier frame) and `sigma_w2_sq` (later frame). White: zero off the
    /// origin. Valid only for gaps within the noise memory.
    pub fn delta_noise_acf(
        &self,
        k: i64,
        l: i64,
        frame_gap: u32,
        sigma_w1_sq: f64,
        sigma_w2_sq: f64,
    ) -> Result<f64> {
        if frame_gap > self.noise_memory {
            return Err(Error::domain(format!(
                "noise-difference statistics hold only for frame gaps <= memory length ({}), got {}",
                self.noise_memory, frame_gap
            )));
        }
        if k != 0 || l != 0 {
            return Ok(0.0);
        }
        Ok(2.0 * self.sigma_q_sq() * frame_gap as f64 + sigma_w1_sq + sigma_w2_sq)
    }

    /// Local-noise variance of a frame: basic noise plus the compression
    /// error at `rate` (bits/pixel); `None` means the frame is pristine.
    pub fn sigma_w_sq(&self, rate: Option<f64>) -> Result<f64> {
        let compression = match rate {
            Some(r) => self.compression.mse(r)?,
            None => 0.0,
        };
        Ok(self.sigma_w_basic_sq + compression)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_params() -> ModelParams {
        ModelParams {
            sigma_v_sq: 2312.0,
            rho_v: 0.95,
            noise_memory: 5,
            sigma_q_tilde_sq: 100.0,
            frame_rate: 25.0,
            sigma_w_basic_sq: 0.0,
            compression: CompressionModel::Uncompressed,
        }
    }

    #[test]
    fn empirical_rd_matches_curve() {
        let m = CompressionModel::EmpiricalRd { alpha: 1.0, beta: 10.0 };
        assert_eq!(m.mse(1.0).unwrap(), 10.0);
        assert_eq!(m.mse(2.0).unwrap(), 5.0);
        assert!(matches!(m.mse(0.0), Err(Error::Domain(_))));
        assert!(matches!(m.mse(-1.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn gaussian_rd_quarters_per_bit() {
        let m = CompressionModel::GaussianRd { source_variance: 2312.0 };
        assert_eq!(m.mse(0.0).unwrap(), 2312.0);
        assert_eq!(m.mse(1.0).unwrap(), 578.0);
        assert_eq!(m.mse(2.0).unwrap(), 144.5);
    }

    #[test]
    fn uncompressed_is_exactly_zero() {
        assert_eq!(CompressionModel::Uncompressed.mse(0.7).unwrap(), 0.0);
    }

    #[test]
    fn sigma_q_scales_with_frame_rate() {
        let mut p = base_params();
        assert_eq!(p.sigma_q_sq(), 4.0);
        p.frame_rate = 50.0;
        assert_eq!(p.sigma_q_sq(), 2.0);
        p.sigma_q_tilde_sq = 0.0;
        assert_eq!(p.sigma_q_sq(), 0.0);
    }

    #[test]
    fn base_acf_values() {
        let p = base_params();
        assert_eq!(p.base_image_acf(0, 0), 2312.0);
        let expected = 2312.0 * 0.95 * 0.95;
        assert!((p.base_image_acf(1, 1) - expected).abs() < 1e-9);
        assert!((p.base_image_acf(1, 1) - 2086.58).abs() < 1e-9);
        assert_eq!(p.base_image_acf(-2, 0), p.base_image_acf(2, 0));
    }

    #[test]
    fn delta_noise_acf_values() {
        let p = base_params();
        assert_eq!(p.delta_noise_acf(1, 0, 2, 1.0, 2.0).unwrap(), 0.0);
        // gap 3 at sigma_q_sq = 4: 2*4*3 + 1 + 2
        assert_eq!(p.delta_noise_acf(0, 0, 3, 1.0, 2.0).unwrap(), 27.0);
        assert_eq!(p.delta_noise_acf(0, 0, 0, 0.0, 0.0).unwrap(), 0.0);
        assert!(matches!(
            p.delta_noise_acf(0, 0, 6, 0.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn params_validation_rejects_bad_ranges() {
        let mut p = base_params();
        p.rho_v = 1.0;
        assert!(p.validate().is_err());
        let mut p = base_params();
        p.frame_rate = 0.0;
        assert!(p.validate().is_err());
        let mut p = base_params();
        p.noise_memory = 0;
        assert!(p.validate().is_err());
        assert!(base_params().validate().is_ok());
    }
}
