//! 2D sample grids.
//!
//! `Plane` is the f32 frame type used by the measurement paths and the file
//! formats; `Field` is the f64 grid used internally during synthesis where
//! long filter recursions run. All statistics accumulate in f64.

use crate::error::{Error, Result};
use crate::stats::KahanSum;

/// Row-major f32 image plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl Plane {
    pub fn new(width: usize, height: usize) -> Self {
        Plane {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::invalid(format!(
                "plane data length {} does not match {}x{}",
                data.len(),
                width,
                height
            )));
        }
        Ok(Plane {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f32) {
        self.data[y * self.width + x] = v;
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f32] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    #[inline]
    pub fn row_mut(&mut self, y: usize) -> &mut [f32] {
        &mut self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    pub fn same_dims(&self, other: &Plane) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub(crate) fn dims_string(&self) -> String {
        format!("{}x{}", self.width, self.height)
    }

    /// Bilinear sample at a real-valued position; the caller guarantees the
    /// 2x2 support is inside the plane.
    #[inline]
    pub fn sample_bilinear(&self, x: f64, y: f64) -> f64 {
        let x0 = x.floor();
        let y0 = y.floor();
        let fx = x - x0;
        let fy = y - y0;
        let xi = x0 as usize;
        let yi = y0 as usize;
        if fx == 0.0 && fy == 0.0 {
            return self.get(xi, yi) as f64;
        }
        let x1 = (xi + 1).min(self.width - 1);
        let y1 = (yi + 1).min(self.height - 1);
        let a = self.get(xi, yi) as f64;
        let b = self.get(x1, yi) as f64;
        let c = self.get(xi, y1) as f64;
        let d = self.get(x1, y1) as f64;
        a * (1.0 - fx) * (1.0 - fy) + b * fx * (1.0 - fy) + c * (1.0 - fx) * fy + d * fx * fy
    }

    /// Sample mean over all pixels.
    pub fn mean(&self) -> f64 {
        let mut s = KahanSum::default();
        for &v in &self.data {
            s.add(v as f64);
        }
        s.value() / self.data.len() as f64
    }

    /// Biased sample variance over all pixels.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let mut s = KahanSum::default();
        for &v in &self.data {
            let d = v as f64 - m;
            s.add(d * d);
        }
        s.value() / self.data.len() as f64
    }
}

/// Row-major f64 grid used for synthesis canvases and noise layers.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn new(width: usize, height: usize) -> Self {
        Field {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    #[inline]
    pub fn row_mut(&mut self, y: usize) -> &mut [f64] {
        &mut self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn sample_bilinear(&self, x: f64, y: f64) -> f64 {
        let x0 = x.floor();
        let y0 = y.floor();
        let fx = x - x0;
        let fy = y - y0;
        let xi = x0 as usize;
        let yi = y0 as usize;
        if fx == 0.0 && fy == 0.0 {
            return self.get(xi, yi);
        }
        let x1 = (xi + 1).min(self.width - 1);
        let y1 = (yi + 1).min(self.height - 1);
        let a = self.get(xi, yi);
        let b = self.get(x1, yi);
        let c = self.get(xi, y1);
        let d = self.get(x1, y1);
        a * (1.0 - fx) * (1.0 - fy) + b * fx * (1.0 - fy) + c * (1.0 - fx) * fy + d * fx * fy
    }

    pub fn mean(&self) -> f64 {
        let mut s = KahanSum::default();
        for &v in &self.data {
            s.add(v);
        }
        s.value() / self.data.len() as f64
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let mut s = KahanSum::default();
        for &v in &self.data {
            s.add((v - m) * (v - m));
        }
        s.value() / self.data.len() as f64
    }

    /// Sample autocorrelation at an integer lag, mean-subtracted, divided by
    /// the in-bounds pair count.
    pub fn sample_acf(&self, k: i64, l: i64) -> f64 {
        let m = self.mean();
        let (x0, x1) = lag_range(self.width, k);
        let (y0, y1) = lag_range(self.height, l);
        let mut s = KahanSum::default();
        let mut n = 0u64;
        for y in y0..y1 {
            for x in x0..x1 {
                let a = self.get(x, y) - m;
                let b = self.get((x as i64 + k) as usize, (y as i64 + l) as usize) - m;
                s.add(a * b);
                n += 1;
            }
        }
        if n == 0 {
            0.0
        } else {
            s.value() / n as f64
        }
    }
}

/// Base-pixel range so that both ends of a lag-`k` pair stay in `0..size`.
pub(crate) fn lag_range(size: usize, k: i64) -> (usize, usize) {
    let lo = (-k).max(0) as usize;
    let hi = (size as i64 - k.max(0)).max(0) as usize;
    (lo.min(size), hi)
}

/// Boolean pixel mask accompanying a measured field.
#[derive(Clone, Debug)]
pub struct Mask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl Mask {
    pub fn new_filled(width: usize, height: usize, value: bool) -> Self {
        Mask {
            width,
            height,
            bits: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.bits[y * self.width + x] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn set_block(&mut self, x0: usize, y0: usize, w: usize, h: usize, v: bool) {
        for y in y0..(y0 + h).min(self.height) {
            for x in x0..(x0 + w).min(self.width) {
                self.set(x, y, v);
            }
        }
    }
}

/// Mean squared difference between two planes over a mask.
pub fn masked_mse(a: &Plane, b: &Plane, mask: &Mask) -> Result<f64> {
    if !a.same_dims(b) {
        return Err(Error::DimensionMismatch {
            left: a.dims_string(),
            right: b.dims_string(),
        });
    }
    if a.width() != mask.width() || a.height() != mask.height() {
        return Err(Error::DimensionMismatch {
            left: a.dims_string(),
            right: format!("{}x{}", mask.width(), mask.height()),
        });
    }
    let mut s = KahanSum::default();
    let mut n = 0u64;
    for y in 0..a.height() {
        for x in 0..a.width() {
            if mask.get(x, y) {
                let d = a.get(x, y) as f64 - b.get(x, y) as f64;
                s.add(d * d);
                n += 1;
            }
        }
    }
    if n == 0 {
        return Err(Error::EmptyRegion);
    }
    Ok(s.value() / n as f64)
}
