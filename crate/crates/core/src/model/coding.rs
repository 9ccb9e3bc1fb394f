use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AutocorrMap, ModelParams};

#[inline]
fn delta1(k: i64) -> f64 {
    if k == 0 {
        1.0
    } else {
        0.0
    }
}

#[inline]
fn delta2(k: i64, l: i64) -> f64 {
    if k == 0 && l == 0 {
        1.0
    } else {
        0.0
    }
}

/// Free parameters of motion-compensated prediction of an available frame:
/// the temporal distance to the reference, the displacement-error variances
/// of the motion search, and the bit-rates feeding the local noise of the
/// predicted and reference frames (`None` = pristine frame).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingScenario {
    pub params: ModelParams,
    /// Temporal distance to the reference, in frames (>= 1).
    pub temporal_distance: u32,
    /// Variance of the horizontal displacement error of the motion search.
    pub sigma_dx_sq: f64,
    /// Variance of the vertical displacement error of the motion search.
    pub sigma_dy_sq: f64,
    /// Bit-rate of the predicted frame; `None` leaves it uncompressed.
    pub rate_current: Option<f64>,
    /// Bit-rate of the reference frame (closed-loop reconstruction).
    pub rate_ref: Option<f64>,
}

impl CodingScenario {
    pub fn new(
        params: ModelParams,
        temporal_distance: u32,
        sigma_dx_sq: f64,
        sigma_dy_sq: f64,
        rate_current: Option<f64>,
        rate_ref: Option<f64>,
    ) -> Result<Self> {
        params.validate()?;
        if temporal_distance < 1 {
            return Err(Error::invalid("temporal_distance must be >= 1"));
        }
        if !(sigma_dx_sq >= 0.0) || !(sigma_dy_sq >= 0.0) {
            return Err(Error::invalid("displacement-error variances must be >= 0"));
        }
        // Forces the rate/model combination to be evaluable now.
        params.sigma_w_sq(rate_current)?;
        params.sigma_w_sq(rate_ref)?;
        Ok(CodingScenario {
            params,
            temporal_distance,
            sigma_dx_sq,
            sigma_dy_sq,
            rate_current,
            rate_ref,
        })
    }

    /// Local-noise variance of the predicted frame.
    pub fn sigma_w_current_sq(&self) -> f64 {
        self.params
            .sigma_w_sq(self.rate_current)
            .expect("validated at construction")
    }

    /// Local-noise variance of the reference frame.
    pub fn sigma_w_ref_sq(&self) -> f64 {
        self.params
            .sigma_w_sq(self.rate_ref)
            .expect("validated at construction")
    }

    /// Temporal distance in seconds at the configured frame-rate.
    pub fn temporal_distance_seconds(&self) -> f64 {
        self.temporal_distance as f64 / self.params.frame_rate
    }

    /// Residual autocorrelation at integer lag `(k, l)`.
    ///
    /// Six terms: the doubled base+noise correlation picked up by both
    /// displacement-error axes, the two shifted-base corrections, the two
    /// shifted-noise corrections, and the white compensated-noise
    /// difference.
    pub fn residual_acf(&self, k: i64, l: i64) -> f64 {
        let p = &self.params;
        let sdx = self.sigma_dx_sq;
        let sdy = self.sigma_dy_sq;
        let sv = p.sigma_v_sq;
        let rho = p.rho_v;
        let noise = p.noise_memory as f64 * p.sigma_q_sq() + self.sigma_w_ref_sq();
        let pw = |e: i64| rho.powi(e.abs() as i32);

        let mut r = 2.0 * (sdx + sdy) * (sv * pw(k) * pw(l) + noise * delta2(k, l));
        r -= sdx * sv * pw(l) * (pw(k - 1) + pw(k + 1));
        r -= sdx * noise * (delta2(k - 1, l) + delta2(k + 1, l));
        r -= sdy * sv * pw(k) * (pw(l - 1) + pw(l + 1));
        r -= sdy * noise * (delta2(k, l - 1) + delta2(k, l + 1));
        r += (2.0 * self.temporal_distance as f64 * p.sigma_q_sq()
            + self.sigma_w_current_sq()
            + self.sigma_w_ref_sq())
            * delta2(k, l);
        r
    }

    /// Residual variance; linear in the temporal distance with slope twice
    /// the per-frame noise-layer variance.
    pub fn residual_variance(&self) -> f64 {
        let p = &self.params;
        let noise = p.noise_memory as f64 * p.sigma_q_sq() + self.sigma_w_ref_sq();
        2.0 * (self.sigma_dx_sq + self.sigma_dy_sq) * (p.sigma_v_sq * (1.0 - p.rho_v) + noise)
            + 2.0 * self.temporal_distance as f64 * p.sigma_q_sq()
            + self.sigma_w_current_sq()
            + self.sigma_w_ref_sq()
    }

    /// Residual variance with the temporal distance given in seconds.
    ///
    /// Keeps the frame-count distance fixed and rescales the frame-rate to
    /// `temporal_distance / d_t`, so sweeping `d_t` reproduces the
    /// adjacent-frame frame-rate sweep; the result is exactly affine in
    /// `d_t`.
    pub fn residual_variance_at_seconds(&self, d_t: f64) -> Result<f64> {
        if !(d_t > 0.0) {
            return Err(Error::invalid(format!("temporal distance must be > 0 s, got {d_t}")));
        }
        let mut scaled = *self;
        scaled.params.frame_rate = self.temporal_distance as f64 / d_t;
        Ok(scaled.residual_variance())
    }

    /// Residual ACF evaluated over a rectangular lag window.
    pub fn acf_map(&self, half_k: usize, half_l: usize) -> AutocorrMap {
        AutocorrMap::from_fn(half_k, half_l, |k, l| self.residual_acf(k, l))
    }

    /// Horizontal-axis ACF in its explicit closed form (the vertical
    /// displacement error contributes only the doubled one-step base
    /// correlation off axis).
    pub fn axis_acf_horizontal(&self, k: i64) -> f64 {
        let p = &self.params;
        let sdx = self.sigma_dx_sq;
        let sdy = self.sigma_dy_sq;
        let sv = p.sigma_v_sq;
        let rho = p.rho_v;
        let noise = p.noise_memory as f64 * p.sigma_q_sq() + self.sigma_w_ref_sq();
        let pw = |e: i64| rho.powi(e.abs() as i32);

        let mut r = 2.0 * (sdx + sdy) * (sv * pw(k) + noise * delta1(k));
        r -= sdx * sv * (pw(k - 1) + pw(k + 1));
        r -= sdx * noise * (delta1(k - 1) + delta1(k + 1));
        r -= 2.0 * sdy * sv * rho.powi(k.abs() as i32 + 1);
        r += (2.0 * self.temporal_distance as f64 * p.sigma_q_sq()
            + self.sigma_w_current_sq()
            + self.sigma_w_ref_sq())
            * delta1(k);
        r
    }

    /// Vertical-axis ACF; the horizontal form with the axes swapped.
    pub fn axis_acf_vertical(&self, l: i64) -> f64 {
        let swapped = CodingScenario {
            sigma_dx_sq: self.sigma_dy_sq,
            sigma_dy_sq: self.sigma_dx_sq,
            ..*self
        };
        swapped.axis_acf_horizontal(l)
    }

    /// Separable ACF model: variance times the product of the
    /// variance-normalized axis profiles. Exact on both lag axes.
    pub fn separable_acf(&self, k: i64, l: i64) -> Result<f64> {
        let var = self.residual_variance();
        if var <= 0.0 {
            return Err(Error::domain(
                "separable model undefined at zero residual variance",
            ));
        }
        Ok(self.axis_acf_horizontal(k) * self.axis_acf_vertical(l) / var)
    }

    /// Separable first-order-Markov ACF model: exponential axis profiles
    /// anchored at the unit-lag correlation coefficients. Exact at the
    /// origin and at the four unit lags.
    pub fn markov_acf(&self, k: i64, l: i64) -> Result<f64> {
        let var = self.residual_variance();
        if var <= 0.0 {
            return Err(Error::domain(
                "markov model undefined at zero residual variance",
            ));
        }
        let rho_h = self.residual_acf(1, 0) / var;
        let rho_v = self.residual_acf(0, 1) / var;
        Ok(var * rho_h.powi(k.abs() as i32) * rho_v.powi(l.abs() as i32))
    }

    pub fn separable_acf_map(&self, half_k: usize, half_l: usize) -> Result<AutocorrMap> {
        AutocorrMap::try_from_fn(half_k, half_l, |k, l| self.separable_acf(k, l))
    }

    pub fn markov_acf_map(&self, half_k: usize, half_l: usize) -> Result<AutocorrMap> {
        AutocorrMap::try_from_fn(half_k, half_l, |k, l| self.markov_acf(k, l))
    }
}
