//! Summary statistics over per-run final energies and the fixed-width
//! scientific rendering used by every table.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    /// Population standard deviation (zero for a single run).
    pub stddev: f64,
}

pub fn summary_stats(values: &[f64]) -> SummaryStats {
    assert!(!values.is_empty(), "stats need at least one value");
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    SummaryStats {
        mean,
        median,
        min: sorted[0],
        max: *sorted.last().unwrap(),
        stddev: variance.sqrt(),
    }
}

/// Renders with 3 significant digits in `D.DDE+XX` form: `0.00E+00`,
/// `8.56E-02`, `-4.44E-16`.
pub fn sci3(x: f64) -> String {
    debug_assert!(x.is_finite(), "sci3 on non-finite {x}");
    if x == 0.0 {
        return "0.00E+00".into();
    }
    let formatted = format!("{x:.2e}");
    let (mantissa, exp) = formatted
        .split_once('e')
        .expect("{:.2e} always carries an exponent");
    let e: i32 = exp.parse().expect("exponent is an integer");
    format!(
        "{mantissa}E{}{:02}",
        if e < 0 { '-' } else { '+' },
        e.abs()
    )
}
