//! Repair of predicted curves: clamp into `[0, 1]`, then remove upward bumps
//! by linear interpolation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RealCurve {
    pub values: Vec<f64>,
}

impl From<Vec<f64>> for RealCurve {
    fn from(values: Vec<f64>) -> Self {
        RealCurve { values }
    }
}

impl RealCurve {
    /// In `[0, 1]` and non-increasing.
    pub fn is_valid(&self) -> bool {
        self.values.iter().all(|v| (0.0..=1.0).contains(v))
            && self.values.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

pub fn clamp(curve: &RealCurve) -> Result<RealCurve> {
    curve
        .values
        .iter()
        .enumerate()
        .map(|(index, &v)| {
            if v.is_finite() {
                Ok(v.clamp(0.0, 1.0))
            } else {
                Err(Error::NonFinite { index })
            }
        })
        .collect::<Result<Vec<f64>>>()
        .map(RealCurve::from)
}

/// Left-to-right repair. When `v[i] > v[i-1]`, find the first `k > i` with
/// `v[k] <= v[i-1]` and replace `v[i..k]` by the straight line from `v[i-1]`
/// down to `v[k]`. Without such a `k`, the tail is flattened to `v[i-1]`.
/// The first entry is never changed.
pub fn enforce_monotone(curve: &RealCurve) -> RealCurve {
    let mut v = curve.values.clone();
    let n = v.len();
    let mut i = 1;
    while i < n {
        let prev = v[i - 1];
        if v[i] <= prev {
            i += 1;
            continue;
        }
        match (i + 1..n).find(|&k| v[k] <= prev) {
            Some(k) => {
                let end = v[k];
                let span = (k - (i - 1)) as f64;
                for j in i..k {
                    let t = (j - (i - 1)) as f64 / span;
                    v[j] = (prev - t * (prev - end)).clamp(end, prev);
                }
                i = k;
            }
            None => {
                v[i..].fill(prev);
                break;
            }
        }
    }
    RealCurve::from(v)
}

pub fn apply_filter(curve: &RealCurve) -> Result<RealCurve> {
    Ok(enforce_monotone(&clamp(curve)?))
}
