//! Power-law fits `M ≈ a·T^α` by least squares on log-log points.

use std::collections::BTreeMap;
use std::io::Read;

use crate::error::{param, Error, Result};

/// Fewest distinct horizons accepted for a fit.
pub const MIN_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    /// Values of the group-by columns joined by `,`.
    pub group: String,
    pub alpha: f64,
    pub coefficient: f64,
    /// Root mean square of the natural-log residuals.
    pub residual: f64,
    pub samples: usize,
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Fits `(T, M)` samples after taking the median of `M` for each `T`.
pub fn fit_power_law(group: &str, samples: &[(f64, f64)]) -> Result<ScalingFit> {
    let mut by_t: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for &(t, m) in samples {
        if !(t > 0.0 && t.is_finite()) {
            return param(format!("horizon {t} is not positive"));
        }
        by_t.entry(t.to_bits()).or_default().push(m);
    }
    if by_t.len() < MIN_POINTS {
        return param(format!("group {group:?} has {} distinct horizons, need {MIN_POINTS}", by_t.len()));
    }
    let mut points = Vec::with_capacity(by_t.len());
    for (t, mut ms) in by_t {
        let m = median(&mut ms);
        if !(m > 0.0) {
            return param(format!("group {group:?} has a median of {m} mistakes at T = {}", f64::from_bits(t)));
        }
        points.push((f64::from_bits(t).ln(), m.ln()));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 || syy == 0.0 {
        return param(format!("group {group:?} is degenerate"));
    }
    let alpha = sxy / sxx;
    let intercept = my - alpha * mx;
    let residual = (points.iter().map(|p| (p.1 - intercept - alpha * p.0).powi(2)).sum::<f64>() / k).sqrt();
    Ok(ScalingFit { group: group.to_string(), alpha, coefficient: intercept.exp(), residual, samples: points.len() })
}

/// Fits every group of a sweep CSV. Skipped rows are ignored.
pub fn fit_csv<R: Read>(input: R, group_by: &[String]) -> Result<Vec<ScalingFit>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Parameter(format!("column {name:?} missing")))
    };
    let t_col = col("T")?;
    let m_col = col("mistakes")?;
    let w_col = col("within_bound")?;
    let g_cols = group_by.iter().map(|g| col(g)).collect::<Result<Vec<_>>>()?;
    let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if &rec[w_col] == "skipped" {
            continue;
        }
        let num = |c: usize| {
            rec[c].parse::<f64>().map_err(|e| Error::Parse { line: i + 2, msg: format!("column {c}: {e}") })
        };
        let key = g_cols.iter().map(|&c| &rec[c]).collect::<Vec<_>>().join(",");
        groups.entry(key).or_default().push((num(t_col)?, num(m_col)?));
    }
    groups.iter().map(|(g, s)| fit_power_law(g, s)).collect()
}
