use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Autocorrelation values on a rectangular lag window `|k| <= half_k`,
/// `|l| <= half_l`, with optional per-lag standard errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutocorrMap {
    half_k: usize,
    half_l: usize,
    /// Row-major over l (outer) then k (inner), lag (-half_k, -half_l) first.
    values: Vec<f64>,
    stderr: Option<Vec<f64>>,
}

impl AutocorrMap {
    pub fn zeros(half_k: usize, half_l: usize) -> Self {
        let n = (2 * half_k + 1) * (2 * half_l + 1);
        AutocorrMap {
            half_k,
            half_l,
            values: vec![0.0; n],
            stderr: None,
        }
    }

    /// Evaluate `f(k, l)` over the whole window.
    pub fn from_fn(half_k: usize, half_l: usize, mut f: impl FnMut(i64, i64) -> f64) -> Self {
        let mut map = AutocorrMap::zeros(half_k, half_l);
        for l in -(half_l as i64)..=half_l as i64 {
            for k in -(half_k as i64)..=half_k as i64 {
                let v = f(k, l);
                map.set(k, l, v);
            }
        }
        map
    }

    /// Fallible variant of [`AutocorrMap::from_fn`].
    pub fn try_from_fn(
        half_k: usize,
        half_l: usize,
        mut f: impl FnMut(i64, i64) -> Result<f64>,
    ) -> Result<Self> {
        let mut map = AutocorrMap::zeros(half_k, half_l);
        for l in -(half_l as i64)..=half_l as i64 {
            for k in -(half_k as i64)..=half_k as i64 {
                let v = f(k, l)?;
                map.set(k, l, v);
            }
        }
        Ok(map)
    }

    pub fn half_window(&self) -> (usize, usize) {
        (self.half_k, self.half_l)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    fn index(&self, k: i64, l: i64) -> usize {
        debug_assert!(k.unsigned_abs() as usize <= self.half_k);
        debug_assert!(l.unsigned_abs() as usize <= self.half_l);
        let row = (l + self.half_l as i64) as usize;
        let col = (k + self.half_k as i64) as usize;
        row * (2 * self.half_k + 1) + col
    }

    pub fn get(&self, k: i64, l: i64) -> f64 {
        self.values[self.index(k, l)]
    }

    pub fn set(&mut self, k: i64, l: i64, v: f64) {
        let i = self.index(k, l);
        self.values[i] = v;
    }

    pub fn stderr(&self, k: i64, l: i64) -> Option<f64> {
        self.stderr.as_ref().map(|s| s[self.index(k, l)])
    }

    pub fn set_stderr_all(&mut self, stderr: Vec<f64>) -> Result<()> {
        if stderr.len() != self.values.len() {
            return Err(Error::invalid("stderr matrix shape must match the value matrix"));
        }
        self.stderr = Some(stderr);
        Ok(())
    }

    pub fn set_stderr(&mut self, k: i64, l: i64, v: f64) {
        let i = self.index(k, l);
        self.stderr
            .get_or_insert_with(|| vec![0.0; (2 * self.half_k + 1) * (2 * self.half_l + 1)])[i] = v;
    }

    pub fn has_stderr(&self) -> bool {
        self.stderr.is_some()
    }

    /// Iterate `(k, l, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        let hk = self.half_k as i64;
        let hl = self.half_l as i64;
        (-hl..=hl).flat_map(move |l| (-hk..=hk).map(move |k| (k, l, self.get(k, l))))
    }

    /// Zero-lag value.
    pub fn origin(&self) -> f64 {
        self.get(0, 0)
    }

    /// True when `value(k,l) == value(-k,l) == value(k,-l)` within `tol`.
    pub fn is_even_symmetric(&self, tol: f64) -> bool {
        self.iter().all(|(k, l, v)| {
            (v - self.get(-k, l)).abs() <= tol && (v - self.get(k, -l)).abs() <= tol
        })
    }

    /// True when the origin dominates every lag in magnitude (valid WSS ACF).
    pub fn origin_dominates(&self) -> bool {
        let o = self.origin();
        self.iter().all(|(_, _, v)| o >= v.abs() - 1e-12 * o.abs())
    }

    /// Point-difference map `|self - other|`, used for the simplification
    /// error surfaces.
    pub fn abs_difference(&self, other: &AutocorrMap) -> Result<AutocorrMap> {
        if self.half_window() != other.half_window() {
            return Err(Error::invalid("lag windows differ"));
        }
        Ok(AutocorrMap::from_fn(self.half_k, self.half_l, |k, l| {
            (self.get(k, l) - other.get(k, l)).abs()
        }))
    }

    /// One row per lag: `k,l,value[,stderr]`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        if self.stderr.is_some() {
            writeln!(w, "k,l,value,stderr")?;
        } else {
            writeln!(w, "k,l,value")?;
        }
        for (k, l, v) in self.iter() {
            match self.stderr(k, l) {
                Some(se) => writeln!(w, "{k},{l},{v},{se}")?,
                None => writeln!(w, "{k},{l},{v}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_fn_indexing_round_trips() {
        let map = AutocorrMap::from_fn(2, 3, |k, l| (10 * k + l) as f64);
        assert_eq!(map.get(0, 0), 0.0);
        assert_eq!(map.get(2, -3), 17.0);
        assert_eq!(map.get(-1, 2), -8.0);
        assert_eq!(map.len(), 5 * 7);
    }

    #[test]
    fn single_cell_window() {
        let map = AutocorrMap::from_fn(0, 0, |_, _| 4.5);
        assert_eq!(map.len(), 1);
        assert_eq!(map.origin(), 4.5);
    }

    #[test]
    fn symmetry_and_dominance_checks() {
        let sym = AutocorrMap::from_fn(2, 2, |k, l| 1.0 / (1 + k.abs() + l.abs()) as f64);
        assert!(sym.is_even_symmetric(0.0));
        assert!(sym.origin_dominates());
        let asym = AutocorrMap::from_fn(1, 1, |k, _| k as f64);
        assert!(!asym.is_even_symmetric(0.0));
    }

    #[test]
    fn csv_has_one_row_per_lag() {
        let map = AutocorrMap::from_fn(1, 1, |k, l| (k + l) as f64);
        let mut out = Vec::new();
        map.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,l,value");
        assert_eq!(lines.len(), 1 + 9);
        assert_eq!(lines[1], "-1,-1,-2");
    }
}
