//! Uniform grids in `u = ln t` and the sampled curves that live on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest admissible number of grid points.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub count: usize,
}

impl LogGrid {
    pub fn new(u_min: f64, u_max: f64, count: usize) -> Result<Self> {
        if !(u_min.is_finite() && u_max.is_finite()) {
            return domain(format!("grid bounds must be finite, got [{u_min}, {u_max}]"));
        }
        if u_min >= u_max {
            return domain(format!("grid needs u_min < u_max, got [{u_min}, {u_max}]"));
        }
        if !(2..=MAX_GRID_POINTS).contains(&count) {
            return domain(format!("grid count {count} outside 2..={MAX_GRID_POINTS}"));
        }
        Ok(Self { u_min, u_max, count })
    }

    /// Grid covering `[u_min, u_max]` with spacing at most `spacing`.
    pub fn with_spacing(u_min: f64, u_max: f64, spacing: f64) -> Result<Self> {
        if spacing <= 0.0 {
            return domain("grid spacing must be positive");
        }
        let count = ((u_max - u_min) / spacing).ceil() as usize + 1;
        Self::new(u_min, u_max, count)
    }

    pub fn spacing(&self) -> f64 {
        (self.u_max - self.u_min) / (self.count - 1) as f64
    }

    pub fn u(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.u_max
        } else {
            self.u_min + self.spacing() * i as f64
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.u(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }
}

/// Values of one functional sampled on a [`LogGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub grid: LogGrid,
    pub values: Vec<f64>,
    pub functional_name: String,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl Curve {
    pub fn new(grid: LogGrid, values: Vec<f64>, functional_name: impl Into<String>) -> Result<Self> {
        if values.len() != grid.count {
            return domain(format!(
                "curve has {} values for a grid of {} points",
                values.len(),
                grid.count
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("curve value at index {i} (u = {}) is not finite", grid.u(i)));
        }
        Ok(Self {
            grid,
            values,
            functional_name: functional_name.into(),
            params: BTreeMap::new(),
        })
    }

    /// Samples `f(u)` on every grid point.
    pub fn from_fn<F: Fn(f64) -> f64 + Sync>(grid: LogGrid, name: &str, f: F) -> Result<Self> {
        use rayon::prelude::*;
        let values: Vec<f64> = (0..grid.count).into_par_iter().map(|i| f(grid.u(i))).collect();
        Self::new(grid, values, name)
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.points().zip(self.values.iter().copied())
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Value at the grid point nearest to `u`.
    pub fn nearest(&self, u: f64) -> f64 {
        let i = ((u - self.grid.u_min) / self.grid.spacing()).round();
        let i = (i.max(0.0) as usize).min(self.grid.count - 1);
        self.values[i]
    }
}
