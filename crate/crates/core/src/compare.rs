//! Simulated versus predicted curves.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Linear interpolation of `values` onto `len` points. Both curves are read on
/// the removal-fraction axis, point `i` of an `m`-point curve sitting at
/// `(i + 1) / m`.
pub fn resample(values: &[f64], len: usize) -> Vec<f64> {
    let m = values.len();
    if m == len || m == 0 {
        return values.to_vec();
    }
    (0..len)
        .map(|t| {
            // fractional source index of removal fraction (t + 1) / len
            let x = (((t + 1) * m) as f64 / len as f64 - 1.0).clamp(0.0, (m - 1) as f64);
            let lo = x.floor() as usize;
            let hi = (lo + 1).min(m - 1);
            let w = x - lo as f64;
            values[lo] * (1.0 - w) + values[hi] * w
        })
        .collect()
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Mean squared pointwise difference.
pub fn mse(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Mismatch(format!("curve lengths {} and {}", a.len(), b.len())));
    }
    Ok(mean(&a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).collect::<Vec<_>>()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    /// Mean of each curve at its own length.
    pub rw_simulated: f64,
    pub rw_predicted: f64,
    pub rw_abs_diff: f64,
    /// Over the predicted curve's points, after resampling the simulated one.
    pub mse: f64,
    pub simulated_len: usize,
    pub predicted_len: usize,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "R_W simulated: {:.6} ({} points)", self.rw_simulated, self.simulated_len)?;
        writeln!(f, "R_W predicted: {:.6} ({} points)", self.rw_predicted, self.predicted_len)?;
        writeln!(f, "|delta R_W|:   {:.6}", self.rw_abs_diff)?;
        write!(f, "MSE:           {:.6e}", self.mse)
    }
}

pub fn compare_curves(simulated: &[f64], predicted: &[f64]) -> Result<Comparison> {
    if simulated.is_empty() || predicted.is_empty() {
        return Err(Error::Mismatch("cannot compare an empty curve".into()));
    }
    let rw_simulated = mean(simulated);
    let rw_predicted = mean(predicted);
    let aligned = resample(simulated, predicted.len());
    Ok(Comparison {
        rw_simulated,
        rw_predicted,
        rw_abs_diff: (rw_simulated - rw_predicted).abs(),
        mse: mse(&aligned, predicted)?,
        simulated_len: simulated.len(),
        predicted_len: predicted.len(),
    })
}
