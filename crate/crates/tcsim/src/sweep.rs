//! Deterministic parallel grid evaluation of the factor `K` and the
//! corrected concurrences.
//!
//! Grid points are independent pure evaluations; they are fanned out with
//! rayon and collected in row-major `(y, x)` order, so parallel and serial
//! evaluation produce bit-identical values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::oscillator::{com_factor, OscillatorSpec};
use crate::scenarios::concurrence_for;

/// One grid axis: evenly spaced, endpoints included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, min: f64, max: f64, steps: usize) -> Self {
        Axis {
            name: name.into(),
            min,
            max,
            steps,
        }
    }

    /// Coordinate of point `i`; a single-point axis sits at `min`.
    pub fn value(&self, i: usize) -> f64 {
        if self.steps <= 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

/// Fixed parameters recorded alongside a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub scenario: Option<String>,
    pub r: f64,
    pub kz0: f64,
    pub delta_constraint: String,
}

/// A rectangular grid of evaluated scalars. `values` is row-major over
/// `(y, x)`: index `iy * x_axis.steps + ix`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub values: Vec<f64>,
    pub metadata: GridMetadata,
}

impl SweepGrid {
    pub fn value_at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.x_axis.steps + ix]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Consistency of the stored data: value count matches the axes, and all
    /// values are finite and non-negative.
    pub fn validate(&self) -> Result<()> {
        let expected = self.x_axis.steps * self.y_axis.steps;
        if self.values.len() != expected {
            return Err(Error::InvalidRange(format!(
                "grid holds {} values, axes require {expected}",
                self.values.len()
            )));
        }
        if !self.values.iter().all(|v| v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidRange(
                "grid values must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

fn fill_row_major(
    x_axis: &Axis,
    y_axis: &Axis,
    eval: impl Fn(f64, f64) -> f64 + Sync,
) -> Vec<f64> {
    (0..x_axis.steps * y_axis.steps)
        .into_par_iter()
        .map(|idx| {
            let ix = idx % x_axis.steps;
            let iy = idx / x_axis.steps;
            eval(x_axis.value(ix), y_axis.value(iy))
        })
        .collect()
}

/// Factor `K(δ₁, δ₂)` over the full valid phase domain
/// `δ₁, δ₂ ∈ [0, arcsin(1−r)]` at equal relative displacement `r`.
///
/// The surface is symmetric under axis swap and strictly increasing along
/// each axis, so the maximum sits at the far corner.
pub fn sweep_factor(r: f64, delta_steps: usize) -> Result<SweepGrid> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidRange(format!(
            "relative displacement must satisfy 0 < r < 1, got {r}"
        )));
    }
    if delta_steps < 2 {
        return Err(Error::InvalidRange(format!(
            "factor sweep needs at least 2 steps per axis, got {delta_steps}"
        )));
    }
    let delta_max = (1.0 - r).asin();
    let x_axis = Axis::new("delta1", 0.0, delta_max, delta_steps);
    let y_axis = Axis::new("delta2", 0.0, delta_max, delta_steps);
    let values = fill_row_major(&x_axis, &y_axis, |d1, d2| {
        let s1 = OscillatorSpec::from_relative(r, d1).expect("grid point inside valid domain");
        let s2 = OscillatorSpec::from_relative(r, d2).expect("grid point inside valid domain");
        com_factor(&s1, &s2).k
    });
    let grid = SweepGrid {
        x_axis,
        y_axis,
        values,
        metadata: GridMetadata {
            scenario: None,
            r,
            kz0: 0.0,
            delta_constraint: "independent".into(),
        },
    };
    grid.validate()?;
    Ok(grid)
}

/// Corrected concurrence over `(gt, δ)` with both plates at the same phase
/// `δ₁ = δ₂ = δ` and relative displacement `r`.
pub fn sweep_concurrence(
    scenario: Scenario,
    r: f64,
    gt_max: f64,
    gt_steps: usize,
    delta_steps: usize,
) -> Result<SweepGrid> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidRange(format!(
            "relative displacement must satisfy 0 < r < 1, got {r}"
        )));
    }
    if gt_max.is_nan() || gt_max <= 0.0 {
        return Err(Error::InvalidRange(format!(
            "gt range must be positive, got {gt_max}"
        )));
    }
    if gt_steps == 0 || delta_steps == 0 {
        return Err(Error::InvalidRange("step counts must be at least 1".into()));
    }
    let delta_max = (1.0 - r).asin();
    let x_axis = Axis::new("gt", 0.0, gt_max, gt_steps);
    let y_axis = Axis::new("delta", 0.0, delta_max, delta_steps);
    let values = fill_row_major(&x_axis, &y_axis, |gt, delta| {
        let spec = OscillatorSpec::from_relative(r, delta).expect("grid point inside valid domain");
        concurrence_for(scenario, gt, &spec, &spec, 0.0).corrected_concurrence
    });
    let grid = SweepGrid {
        x_axis,
        y_axis,
        values,
        metadata: GridMetadata {
            scenario: Some(scenario.id().to_string()),
            r,
            kz0: 0.0,
            delta_constraint: "delta1=delta2".into(),
        },
    };
    grid.validate()?;
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::k_max;

    #[test]
    fn axis_values_are_inclusive_and_degenerate_axes_work() {
        let axis = Axis::new("x", 0.0, 2.0, 3);
        assert_eq!(axis.values(), vec![0.0, 1.0, 2.0]);
        let single = Axis::new("x", 0.5, 9.0, 1);
        assert_eq!(single.values(), vec![0.5]);
    }

    #[test]
    fn factor_grid_corner_and_origin() {
        let grid = sweep_factor(0.05, 41).unwrap();
        let corner = grid.value_at(40, 40);
        assert!((corner - 0.01022).abs() < 1e-5);
        assert!((corner - k_max(0.05)).abs() < 1e-15);
        let origin = grid.value_at(0, 0);
        assert!((origin - 2.535e-4).abs() < 1e-6);
        assert_eq!(grid.max_value(), corner);
        assert_eq!(grid.min_value(), origin);
    }

    #[test]
    fn factor_grid_is_symmetric_and_strictly_increasing() {
        let grid = sweep_factor(0.3, 21).unwrap();
        for ix in 0..21 {
            for iy in 0..21 {
                assert_eq!(grid.value_at(ix, iy), grid.value_at(iy, ix));
                if ix > 0 {
                    assert!(grid.value_at(ix, iy) > grid.value_at(ix - 1, iy));
                }
                if iy > 0 {
                    assert!(grid.value_at(ix, iy) > grid.value_at(ix, iy - 1));
                }
            }
        }
    }

    #[test]
    fn factor_grid_matches_pointwise_calls_exactly() {
        let r = 0.05;
        let grid = sweep_factor(r, 17).unwrap();
        for iy in 0..17 {
            for ix in 0..17 {
                let s1 = OscillatorSpec::from_relative(r, grid.x_axis.value(ix)).unwrap();
                let s2 = OscillatorSpec::from_relative(r, grid.y_axis.value(iy)).unwrap();
                assert_eq!(grid.value_at(ix, iy), com_factor(&s1, &s2).k);
            }
        }
    }

    #[test]
    fn factor_rejects_bad_ranges() {
        assert!(matches!(sweep_factor(0.0, 10), Err(Error::InvalidRange(_))));
        assert!(matches!(sweep_factor(1.0, 10), Err(Error::InvalidRange(_))));
        assert!(matches!(sweep_factor(0.05, 1), Err(Error::InvalidRange(_))));
    }

    #[test]
    fn concurrence_grid_bounds_and_zeros() {
        let r = 0.05;
        let grid = sweep_concurrence(Scenario::GgOne, r, 3.0 * std::f64::consts::PI, 60, 12).unwrap();
        let kmax = k_max(r);
        assert!(grid.values.iter().all(|&v| v <= kmax + 1e-15));
        // scenario 2 vanishes at gt = 0 for every delta
        for iy in 0..12 {
            assert_eq!(grid.value_at(0, iy), 0.0);
        }
    }

    #[test]
    fn scenario1_row_oscillates_between_k_third_and_k() {
        let r = 0.05;
        let delta_steps = 5;
        let grid = sweep_concurrence(Scenario::BellVacuum, r, 8.0, 400, delta_steps).unwrap();
        // top row: delta = arcsin(1-r) → K = k_max
        let kmax = k_max(r);
        let top = delta_steps - 1;
        for ix in 0..400 {
            let v = grid.value_at(ix, top);
            assert!(v >= kmax / 3.0 - 1e-15 && v <= kmax + 1e-15);
        }
    }

    #[test]
    fn degenerate_single_column_grid() {
        let grid = sweep_concurrence(Scenario::GgOne, 0.05, 1.0, 1, 4).unwrap();
        assert_eq!(grid.values.len(), 4);
        assert_eq!(grid.x_axis.steps, 1);
    }

    #[test]
    fn grid_serializes_and_roundtrips_as_json() {
        let grid = sweep_factor(0.05, 5).unwrap();
        let json = serde_json::to_string(&grid).unwrap();
        let back: SweepGrid = serde_json::from_str(&json).unwrap();
        assert_eq!(grid, back);
    }
}
