//! Evaluation grids and the CLI grid specification `start:stop:points[:log|:linear]`.

use crate::error::{Error, Result};

/// Grid spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Parsed grid specification. When `spacing` is omitted, logarithmic spacing
/// is the default for supports touching zero (functionals vary fastest near
/// the origin), linear otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Option<Spacing>,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<GridSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::InvalidGrid(format!(
                "expected start:stop:points[:log|:linear], got '{s}'"
            )));
        }
        let num = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("'{v}' is not a number")))
        };
        let points = parts[2]
            .parse::<usize>()
            .map_err(|_| Error::InvalidGrid(format!("'{}' is not a point count", parts[2])))?;
        let spacing = match parts.get(3) {
            None => None,
            Some(&"log") => Some(Spacing::Log),
            Some(&"linear") | Some(&"lin") => Some(Spacing::Linear),
            Some(other) => {
                return Err(Error::InvalidGrid(format!("unknown spacing '{other}'")));
            }
        };
        Ok(GridSpec {
            start: num(parts[0])?,
            stop: num(parts[1])?,
            points,
            spacing,
        })
    }

    /// Materialize the grid for a model whose support starts at `support_left`.
    pub fn build(&self, support_left: f64) -> Result<Vec<f64>> {
        if self.points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        if self.start.is_nan() || self.stop.is_nan() || self.start >= self.stop {
            return Err(Error::InvalidGrid(format!(
                "grid start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.start <= support_left {
            return Err(Error::InvalidGrid(format!(
                "grid start {} must exceed the support left endpoint {}",
                self.start, support_left
            )));
        }
        let spacing = self.spacing.unwrap_or(if support_left == 0.0 {
            Spacing::Log
        } else {
            Spacing::Linear
        });
        match spacing {
            Spacing::Linear => Ok(linear_grid(self.start, self.stop, self.points)),
            Spacing::Log => log_grid(self.start, self.stop, self.points),
        }
    }
}

/// `n` equally spaced points over `[a, b]`, endpoints included.
pub fn linear_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + step * i as f64).collect()
}

/// `n` geometrically spaced points over `[a, b]`; requires `a > 0`.
pub fn log_grid(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if a <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "log grid needs a positive start, got {a}"
        )));
    }
    let la = a.ln();
    let step = (b.ln() - la) / (n - 1) as f64;
    Ok((0..n).map(|i| (la + step * i as f64).exp()).collect())
}
