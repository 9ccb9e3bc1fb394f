use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AutocorrMap, ModelParams};

#[inline]
fn delta2(k: i64, l: i64) -> f64 {
    if k == 0 && l == 0 {
        1.0
    } else {
        0.0
    }
}

/// Free parameters of bidirectional prediction of an absent frame between
/// two available frames `interpolation_factor` frames apart.
///
/// The absent frame sits `frame_index` frames after the first available
/// frame. Both available frames share `rate_available` (`None` = raw video);
/// the absent frame being predicted carries only the basic local noise.
/// Displacement-error variances of the absent-frame motion search are the
/// available-frame variances inflated by `gamma_abs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrucScenario {
    pub params: ModelParams,
    /// Temporal up-sampling factor D (>= 2).
    pub interpolation_factor: u32,
    /// Index j of the interpolated frame, `1 <= j <= D - 1`.
    pub frame_index: u32,
    /// Blend weight of the backward (from the earlier frame) prediction.
    pub theta: f64,
    /// Inflation of the displacement-error variance caused by the target
    /// frame being absent (>= 1).
    pub gamma_abs: f64,
    /// Available-frame horizontal displacement-error variance.
    pub sigma_dx_sq: f64,
    /// Available-frame vertical displacement-error variance.
    pub sigma_dy_sq: f64,
    /// Bit-rate of the two available frames.
    pub rate_available: Option<f64>,
}

impl FrucScenario {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        params: ModelParams,
        interpolation_factor: u32,
        frame_index: u32,
        theta: f64,
        gamma_abs: f64,
        sigma_dx_sq: f64,
        sigma_dy_sq: f64,
        rate_available: Option<f64>,
    ) -> Result<Self> {
        params.validate()?;
        if interpolation_factor < 2 {
            return Err(Error::invalid("interpolation_factor must be >= 2"));
        }
        if frame_index < 1 || frame_index > interpolation_factor - 1 {
            return Err(Error::invalid(format!(
                "frame_index must be in 1..={}, got {frame_index}",
                interpolation_factor - 1
            )));
        }
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::invalid(format!("theta must be in [0, 1], got {theta}")));
        }
        if !(gamma_abs >= 1.0) {
            return Err(Error::invalid(format!("gamma_abs must be >= 1, got {gamma_abs}")));
        }
        if !(sigma_dx_sq >= 0.0) || !(sigma_dy_sq >= 0.0) {
            return Err(Error::invalid("displacement-error variances must be >= 0"));
        }
        params.sigma_w_sq(rate_available)?;
        Ok(FrucScenario {
            params,
            interpolation_factor,
            frame_index,
            theta,
            gamma_abs,
            sigma_dx_sq,
            sigma_dy_sq,
            rate_available,
        })
    }

    /// Absent-frame horizontal displacement-error variance.
    pub fn sigma_dx_abs_sq(&self) -> f64 {
        self.gamma_abs * self.sigma_dx_sq
    }

    /// Absent-frame vertical displacement-error variance.
    pub fn sigma_dy_abs_sq(&self) -> f64 {
        self.gamma_abs * self.sigma_dy_sq
    }

    /// Local-noise variance of the two available frames.
    pub fn sigma_w_available_sq(&self) -> f64 {
        self.params
            .sigma_w_sq(self.rate_available)
            .expect("validated at construction")
    }

    /// Local-noise variance of the absent frame (never compressed).
    pub fn sigma_w_absent_sq(&self) -> f64 {
        self.params.sigma_w_basic_sq
    }

    fn gap_within_memory(&self) -> Result<()> {
        let l = self.params.noise_memory;
        let j = self.frame_index;
        let back = self.interpolation_factor - j;
        if j > l || back > l {
            return Err(Error::domain(format!(
                "interpolation gaps ({j} and {back} frames) must both be within the noise memory ({l})"
            )));
        }
        Ok(())
    }

    /// Interpolation-error autocorrelation at integer lag `(k, l)`.
    ///
    /// Two white compensated-noise differences weighted by the squared blend
    /// weights, plus the displacement-error terms picked up through the
    /// discrete derivative of the base image and of the available-frame
    /// noise. Valid only while both interpolation gaps are within the noise
    /// memory.
    pub fn error_acf(&self, k: i64, l: i64) -> Result<f64> {
        self.gap_within_memory()?;
        let p = &self.params;
        let theta = self.theta;
        let th2 = theta * theta + (1.0 - theta) * (1.0 - theta);
        let sq = p.sigma_q_sq();
        let j = self.frame_index as f64;
        let back = (self.interpolation_factor - self.frame_index) as f64;
        let w_avail = self.sigma_w_available_sq();
        let w_absent = self.sigma_w_absent_sq();
        let rv = |k: i64, l: i64| p.base_image_acf(k, l);
        // Accumulated-noise ACF of an available frame; white.
        let rn = |k: i64, l: i64| (w_avail + p.noise_memory as f64 * sq) * delta2(k, l);

        let mut r = theta * theta * (2.0 * sq * j + w_avail + w_absent) * delta2(k, l);
        r += (1.0 - theta) * (1.0 - theta) * (2.0 * sq * back + w_absent + w_avail) * delta2(k, l);
        r += self.sigma_dx_abs_sq()
            * th2
            * (2.0 * rv(k, l) - rv(k - 1, l) - rv(k + 1, l) + 2.0 * rn(k, l)
                - rn(k - 1, l)
                - rn(k + 1, l));
        r += self.sigma_dy_abs_sq()
            * th2
            * (2.0 * rv(k, l) - rv(k, l - 1) - rv(k, l + 1) + 2.0 * rn(k, l)
                - rn(k, l - 1)
                - rn(k, l + 1));
        Ok(r)
    }

    /// Interpolation mean-squared error for a general blend weight.
    ///
    /// Both compensated-noise brackets carry the available-plus-absent
    /// local-noise sum; the two available frames share one rate, so this
    /// equals [`FrucScenario::error_acf`] at the origin identically.
    pub fn mse(&self) -> f64 {
        let p = &self.params;
        let theta = self.theta;
        let sq = p.sigma_q_sq();
        let j = self.frame_index as f64;
        let back = (self.interpolation_factor - self.frame_index) as f64;
        let w_avail = self.sigma_w_available_sq();
        let w_absent = self.sigma_w_absent_sq();

        theta * theta * (2.0 * sq * j + w_avail + w_absent)
            + (1.0 - theta) * (1.0 - theta) * (2.0 * sq * back + w_avail + w_absent)
            + 2.0 * (self.sigma_dx_abs_sq() + self.sigma_dy_abs_sq())
                * (theta * theta + (1.0 - theta) * (1.0 - theta))
                * ((1.0 - p.rho_v) * p.sigma_v_sq + p.noise_memory as f64 * sq + w_avail)
    }

    /// Independent closed form of the MSE for an equal-weight blend; affine
    /// in the interpolation factor with slope half the per-frame noise-layer
    /// variance.
    pub fn mse_half_blend(&self) -> f64 {
        let p = &self.params;
        let sq = p.sigma_q_sq();
        let w_avail = self.sigma_w_available_sq();
        let w_absent = self.sigma_w_absent_sq();
        0.5 * (sq * self.interpolation_factor as f64 + w_avail + w_absent)
            + (self.sigma_dx_abs_sq() + self.sigma_dy_abs_sq())
                * ((1.0 - p.rho_v) * p.sigma_v_sq + p.noise_memory as f64 * sq + w_avail)
    }

    /// Error ACF evaluated over a rectangular lag window.
    pub fn acf_map(&self, half_k: usize, half_l: usize) -> Result<AutocorrMap> {
        AutocorrMap::try_from_fn(half_k, half_l, |k, l| self.error_acf(k, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CompressionModel;

    const HALF_PEL_VAR: f64 = 0.25 / 12.0;

    fn sec5_params(sigma_w_basic_sq: f64) -> ModelParams {
        ModelParams {
            sigma_v_sq: 2312.0,
            rho_v: 0.95,
            noise_memory: 5,
            sigma_q_tilde_sq: 250.0,
            frame_rate: 25.0,
            sigma_w_basic_sq,
            compression: CompressionModel::Uncompressed,
        }
    }

    fn fixture_scenario() -> FrucScenario {
        FrucScenario::new(
            sec5_params(2.0),
            4,
            2,
            0.5,
            2.0,
            HALF_PEL_VAR,
            HALF_PEL_VAR,
            None,
        )
        .unwrap()
    }

    #[test]
    fn mse_matches_precomputed_fixture() {
        // 0.5*(10*4 + 2 + 2) + (2*2*0.25/12)*(115.6 + 50 + 2) = 35.9666...
        let s = fixture_scenario();
        let expected = 22.0 + 167.6 / 12.0;
        assert!((s.mse() - expected).abs() < 1e-12);
        assert!((s.mse_half_blend() - expected).abs() < 1e-12);
    }

    #[test]
    fn general_blend_reduces_to_half_blend_form() {
        for d in [2u32, 4, 6, 8] {
            for j in 1..d {
                if j > 5 || d - j > 5 {
                    continue;
                }
                let s = FrucScenario::new(
                    sec5_params(3.0),
                    d,
                    j,
                    0.5,
                    2.0,
                    HALF_PEL_VAR,
                    0.5 * HALF_PEL_VAR,
                    None,
                )
                .unwrap();
                let rel = (s.mse() - s.mse_half_blend()).abs() / s.mse().abs();
                assert!(rel <= 1e-12, "D={d} j={j} rel={rel}");
            }
        }
    }

    #[test]
    fn acf_origin_equals_mse() {
        let s = fixture_scenario();
        assert!((s.error_acf(0, 0).unwrap() - s.mse()).abs() < 1e-12);
        let uneven = FrucScenario::new(
            sec5_params(1.0),
            5,
            2,
            0.3,
            1.5,
            HALF_PEL_VAR,
            HALF_PEL_VAR,
            None,
        )
        .unwrap();
        assert!((uneven.error_acf(0, 0).unwrap() - uneven.mse()).abs() < 1e-12);
    }

    #[test]
    fn off_origin_vanishes_without_displacement_error() {
        let s = FrucScenario::new(sec5_params(0.0), 4, 2, 0.5, 1.0, 0.0, 0.0, None).unwrap();
        assert_eq!(s.error_acf(3, 7).unwrap(), 0.0);
        assert_eq!(s.error_acf(1, 0).unwrap(), 0.0);
    }

    #[test]
    fn acf_is_even_symmetric() {
        let s = fixture_scenario();
        let map = s.acf_map(3, 3).unwrap();
        assert!(map.is_even_symmetric(1e-12));
    }

    #[test]
    fn half_blend_collapses_to_half_noise_energy() {
        // theta = 0.5, no displacement error, no local noise, D = 2:
        // mse = sigma_q_sq * D / 2 = 10
        let s = FrucScenario::new(sec5_params(0.0), 2, 1, 0.5, 1.0, 0.0, 0.0, None).unwrap();
        assert_eq!(s.mse(), 10.0);
    }

    #[test]
    fn blend_swap_leaves_mse_unchanged() {
        for (theta, d, j) in [(0.3, 4u32, 1u32), (0.7, 6, 2), (0.1, 5, 4), (1.0, 3, 1)] {
            let a = FrucScenario::new(
                sec5_params(2.0),
                d,
                j,
                theta,
                2.0,
                HALF_PEL_VAR,
                HALF_PEL_VAR,
                None,
            )
            .unwrap();
            let b = FrucScenario::new(
                sec5_params(2.0),
                d,
                d - j,
                1.0 - theta,
                2.0,
                HALF_PEL_VAR,
                HALF_PEL_VAR,
                None,
            )
            .unwrap();
            assert!((a.mse() - b.mse()).abs() <= 1e-12 * a.mse().abs());
        }
    }

    #[test]
    fn mse_affine_in_interpolation_factor() {
        let sq = sec5_params(0.0).sigma_q_sq();
        let at = |d: u32| {
            FrucScenario::new(sec5_params(0.0), d, 1, 0.5, 2.0, HALF_PEL_VAR, HALF_PEL_VAR, None)
                .unwrap()
                .mse_half_blend()
        };
        let d1 = at(4) - at(2);
        let d2 = at(6) - at(4);
        assert!((d1 - sq).abs() < 1e-12);
        assert!((d2 - sq).abs() < 1e-12);
    }

    #[test]
    fn gap_validity_enforced_for_acf_not_mse() {
        // D - j = 7 exceeds the memory of 5
        let s = FrucScenario::new(sec5_params(0.0), 8, 1, 0.5, 1.0, 0.0, 0.0, None).unwrap();
        assert!(matches!(s.error_acf(0, 0), Err(Error::Domain(_))));
        // the closed-form mse itself carries no gap check
        assert!(s.mse().is_finite());
    }

    #[test]
    fn construction_rejects_invalid_scenarios() {
        let p = sec5_params(0.0);
        assert!(FrucScenario::new(p, 1, 1, 0.5, 1.0, 0.0, 0.0, None).is_err());
        assert!(FrucScenario::new(p, 4, 0, 0.5, 1.0, 0.0, 0.0, None).is_err());
        assert!(FrucScenario::new(p, 4, 4, 0.5, 1.0, 0.0, 0.0, None).is_err());
        assert!(FrucScenario::new(p, 4, 2, 1.5, 1.0, 0.0, 0.0, None).is_err());
        assert!(FrucScenario::new(p, 4, 2, 0.5, 0.5, 0.0, 0.0, None).is_err());
    }
}
