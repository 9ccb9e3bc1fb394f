use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::plane::Field;
use crate::seed;

/// Stationary base image on an extended canvas. The canvas is
/// `(height + 2 margin) x (width + 2 margin)`; frames are crops, so canvas
/// borders never enter any statistic.
#[derive(Clone, Debug)]
pub struct BaseImage {
    pub canvas: Field,
    pub margin: usize,
    pub sigma_v_sq: f64,
    pub rho_v: f64,
}

/// Number of leading samples to discard before the separable AR(1)
/// recursion reaches stationarity.
pub(crate) fn warmup_len(rho: f64) -> usize {
    if rho == 0.0 {
        0
    } else {
        (50.0 / (1.0 - rho)).ceil() as usize
    }
}

/// Stationary 2D field with autocorrelation `sigma_sq * rho^(|k|+|l|)`.
///
/// Separable three-tap recursion
/// `v(x,y) = rho (v(x-1,y) + v(x,y-1)) - rho^2 v(x-1,y-1) + e(x,y)` driven by
/// white Gaussian noise of variance `sigma_sq (1 - rho^2)^2`, generated with
/// a warm-up border on the leading edges that is discarded.
pub(crate) fn ar1_field(
    width: usize,
    height: usize,
    sigma_sq: f64,
    rho: f64,
    rng: &mut impl Rng,
) -> Result<Field> {
    if width == 0 || height == 0 {
        return Err(Error::invalid("field dimensions must be >= 1"));
    }
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::invalid(format!("rho must be in [0, 1), got {rho}")));
    }
    if !(sigma_sq >= 0.0) {
        return Err(Error::invalid(format!("variance must be >= 0, got {sigma_sq}")));
    }
    let warm = warmup_len(rho);
    let gen_w = width + warm;
    let gen_h = height + warm;
    let noise_sigma = sigma_sq.sqrt() * (1.0 - rho * rho);
    let normal = Normal::new(0.0, noise_sigma).map_err(|e| Error::invalid(e.to_string()))?;

    let mut out = Field::new(width, height);
    let mut prev = vec![0.0f64; gen_w];
    let mut cur = vec![0.0f64; gen_w];
    for y in 0..gen_h {
        for x in 0..gen_w {
            let left = if x > 0 { cur[x - 1] } else { 0.0 };
            let up = prev[x];
            let diag = if x > 0 { prev[x - 1] } else { 0.0 };
            cur[x] = rho * (left + up) - rho * rho * diag + normal.sample(rng);
        }
        if y >= warm {
            out.row_mut(y - warm).copy_from_slice(&cur[warm..]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(out)
}

/// White Gaussian field of the given variance.
pub(crate) fn white_field(
    width: usize,
    height: usize,
    variance: f64,
    rng: &mut impl Rng,
) -> Result<Field> {
    if !(variance >= 0.0) {
        return Err(Error::invalid(format!("variance must be >= 0, got {variance}")));
    }
    let normal = Normal::new(0.0, variance.sqrt()).map_err(|e| Error::invalid(e.to_string()))?;
    let mut f = Field::new(width, height);
    for y in 0..height {
        for v in f.row_mut(y) {
            *v = normal.sample(rng);
        }
    }
    Ok(f)
}

/// Generate the base image of a sequence on its extended canvas.
pub fn gen_base_image(
    height: usize,
    width: usize,
    margin: usize,
    sigma_v_sq: f64,
    rho_v: f64,
    seed: u64,
) -> Result<BaseImage> {
    if width == 0 || height == 0 {
        return Err(Error::invalid("image dimensions must be >= 1"));
    }
    let mut rng = seed::rng(seed, seed::DOMAIN_BASE_IMAGE, 0);
    let canvas = ar1_field(
        width + 2 * margin,
        height + 2 * margin,
        sigma_v_sq,
        rho_v,
        &mut rng,
    )?;
    Ok(BaseImage {
        canvas,
        margin,
        sigma_v_sq,
        rho_v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_is_bit_identical() {
        let a = gen_base_image(64, 48, 4, 2312.0, 0.9, 42).unwrap();
        let b = gen_base_image(64, 48, 4, 2312.0, 0.9, 42).unwrap();
        assert_eq!(a.canvas, b.canvas);
        let c = gen_base_image(64, 48, 4, 2312.0, 0.9, 43).unwrap();
        assert_ne!(a.canvas, c.canvas);
    }

    #[test]
    fn white_case_has_vanishing_neighbor_correlation() {
        let img = gen_base_image(512, 512, 0, 100.0, 0.0, 9).unwrap();
        let var = img.canvas.variance();
        let acf10 = img.canvas.sample_acf(1, 0);
        // 3 standard errors of the lag-1 estimate for a white field
        let se = var / (512.0f64 * 512.0).sqrt();
        assert!(acf10.abs() < 3.0 * se, "acf {acf10} vs 3se {}", 3.0 * se);
    }

    #[test]
    fn correlated_field_matches_model_statistics() {
        let img = gen_base_image(512, 512, 0, 2312.0, 0.95, 5).unwrap();
        let var = img.canvas.variance();
        assert!((var - 2312.0).abs() / 2312.0 < 0.10, "variance {var}");
        let mean = img.canvas.mean();
        assert!(mean.abs() < 5.0 * (2312.0f64 / (512.0 * 512.0)).sqrt());
        let ratio10 = img.canvas.sample_acf(1, 0) / var;
        let ratio01 = img.canvas.sample_acf(0, 1) / var;
        assert!((0.90..=1.00).contains(&ratio10), "lag (1,0) ratio {ratio10}");
        assert!((0.90..=1.00).contains(&ratio01), "lag (0,1) ratio {ratio01}");
    }

    #[test]
    fn rejects_unstable_correlation() {
        assert!(gen_base_image(8, 8, 0, 1.0, 1.0, 0).is_err());
        assert!(gen_base_image(8, 8, 0, 1.0, -0.1, 0).is_err());
    }
}
