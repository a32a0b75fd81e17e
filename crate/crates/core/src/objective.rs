//! The objective-function contract shared by all annealing drivers.

use crate::error::{Error, Result};

/// A continuous function over a box-bounded domain, to be minimized.
///
/// Implementations must be pure and deterministic: the same coordinates
/// always yield the same energy. Lower is better.
pub trait ObjectiveFunction {
    fn name(&self) -> &str;

    /// Number of coordinates `D`.
    fn dimension(&self) -> usize;

    /// Per-coordinate lower bounds (length `D`, each strictly below upper).
    fn lower_bounds(&self) -> &[f64];

    /// Per-coordinate upper bounds (length `D`).
    fn upper_bounds(&self) -> &[f64];

    /// The energy `E(x)` of a coordinate vector.
    fn evaluate(&self, coords: &[f64]) -> f64;

    /// Known minimum value, when documented (test metadata).
    fn optimum_value(&self) -> Option<f64> {
        None
    }
}

/// Evaluates with the dimension and finiteness checks every driver relies on.
///
/// A NaN/infinite energy aborts the run with a diagnostic naming the
/// objective and the offending coordinates.
pub fn checked_evaluate<F: ObjectiveFunction + ?Sized>(objective: &F, coords: &[f64]) -> Result<f64> {
    if coords.len() != objective.dimension() {
        return Err(Error::InvalidConfig(format!(
            "objective `{}` expects {} coordinates, got {}",
            objective.name(),
            objective.dimension(),
            coords.len()
        )));
    }
    let energy = objective.evaluate(coords);
    if !energy.is_finite() {
        return Err(Error::NonFiniteEnergy(format!(
            "objective `{}` returned {energy} at coordinates {coords:?}",
            objective.name()
        )));
    }
    Ok(energy)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Bad {
        lower: Vec<f64>,
        upper: Vec<f64>,
    }

    impl ObjectiveFunction for Bad {
        fn name(&self) -> &str {
            "bad"
        }
        fn dimension(&self) -> usize {
            2
        }
        fn lower_bounds(&self) -> &[f64] {
            &self.lower
        }
        fn upper_bounds(&self) -> &[f64] {
            &self.upper
        }
        fn evaluate(&self, coords: &[f64]) -> f64 {
            if coords[0] > 0.0 {
                f64::NAN
            } else {
                coords.iter().sum()
            }
        }
    }

    #[test]
    fn non_finite_energy_names_the_coordinates() {
        let bad = Bad {
            lower: vec![-1.0; 2],
            upper: vec![1.0; 2],
        };
        let err = checked_evaluate(&bad, &[0.5, 0.25]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad"), "{msg}");
        assert!(msg.contains("0.5"), "{msg}");
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let bad = Bad {
            lower: vec![-1.0; 2],
            upper: vec![1.0; 2],
        };
        assert!(checked_evaluate(&bad, &[0.0]).is_err());
    }
}
