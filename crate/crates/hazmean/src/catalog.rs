//! Random catalog models for property sweeps and verification trials.
//!
//! Rates and scales draw log-uniformly from [0.1, 10]; Weibull shapes stay
//! in [0.5, 1.9] so the harmonic family remains convergent. Generators take
//! any `Rng`, so sweeps stay reproducible with a seeded generator.

use crate::grid::{linear_grid, log_grid};
use crate::model::HazardModel;
use crate::systems::{series, SeriesSystem};
use rand::Rng;

/// Log-uniform draw from `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Random model with support starting at zero and convergent harmonic mean.
pub fn random_zero_left_model<R: Rng>(rng: &mut R) -> HazardModel {
    match rng.random_range(0..4) {
        0 => HazardModel::exponential(log_uniform(rng, 0.1, 10.0)).unwrap(),
        1 => HazardModel::weibull(log_uniform(rng, 0.1, 10.0), rng.random_range(0.5..1.9)).unwrap(),
        2 => {
            HazardModel::rayleigh(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)).unwrap()
        }
        _ => HazardModel::truncated_log_weibull(
            rng.random_range(-1.0..1.0),
            log_uniform(rng, 0.5, 10.0),
        )
        .unwrap(),
    }
}

/// Random model from the full catalog together with a grid of `points`
/// strictly inside its support.
pub fn random_model_with_grid<R: Rng>(rng: &mut R, points: usize) -> (HazardModel, Vec<f64>) {
    match rng.random_range(0..6) {
        0..=3 => {
            let m = random_zero_left_model(rng);
            let grid = log_grid(0.05, 4.0, points).unwrap();
            (m, grid)
        }
        4 => {
            let b = rng.random_range(1.0..8.0);
            let m = HazardModel::uniform(0.0, b).unwrap();
            let grid = linear_grid(0.02 * b, 0.97 * b, points);
            (m, grid)
        }
        _ => {
            let k = log_uniform(rng, 0.1, 3.0);
            let m = HazardModel::pareto(log_uniform(rng, 0.1, 10.0), k).unwrap();
            let grid = log_grid(1.05 * k, 8.0 * k, points).unwrap();
            (m, grid)
        }
    }
}

/// Random model with a strictly monotone hazard; returns the direction.
/// Both the increasing and decreasing families keep their interval-average
/// rates finite away from the left endpoint.
pub fn random_monotone_model<R: Rng>(rng: &mut R) -> (HazardModel, bool) {
    if rng.random_range(0..10) < 6 {
        let m = match rng.random_range(0..4) {
            0 => HazardModel::weibull(log_uniform(rng, 0.1, 10.0), rng.random_range(1.1..1.9))
                .unwrap(),
            1 => HazardModel::rayleigh(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0))
                .unwrap(),
            2 => HazardModel::erlang_like(log_uniform(rng, 0.1, 10.0)).unwrap(),
            _ => HazardModel::truncated_log_weibull(
                rng.random_range(-1.0..1.0),
                log_uniform(rng, 0.5, 10.0),
            )
            .unwrap(),
        };
        (m, true)
    } else {
        let m = if rng.random_range(0..2) == 0 {
            HazardModel::weibull(log_uniform(rng, 0.1, 10.0), rng.random_range(0.5..0.9)).unwrap()
        } else {
            HazardModel::pareto(log_uniform(rng, 0.1, 10.0), 1.0).unwrap()
        };
        (m, false)
    }
}

/// Random series system of 2–`max_components` zero-left components.
pub fn random_series_system<R: Rng>(rng: &mut R, max_components: usize) -> SeriesSystem {
    let n = rng.random_range(2..=max_components.max(2));
    let components = (0..n).map(|_| random_zero_left_model(rng)).collect();
    series(components).expect("zero-left components always share a left endpoint")
}

/// Random pair with proportional hazards (r_Y = c · r_X).
pub fn random_proportional_pair<R: Rng>(rng: &mut R) -> (HazardModel, HazardModel) {
    let c = log_uniform(rng, 0.2, 5.0);
    match rng.random_range(0..4) {
        0 => {
            let l = log_uniform(rng, 0.1, 10.0);
            (
                HazardModel::exponential(l).unwrap(),
                HazardModel::exponential(c * l).unwrap(),
            )
        }
        1 => {
            let a = log_uniform(rng, 0.1, 10.0);
            let b = rng.random_range(0.5..1.9);
            (
                HazardModel::weibull(a, b).unwrap(),
                HazardModel::weibull(c * a, b).unwrap(),
            )
        }
        2 => {
            let (a, b) = (log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0));
            (
                HazardModel::rayleigh(a, b).unwrap(),
                HazardModel::rayleigh(c * a, c * b).unwrap(),
            )
        }
        _ => {
            let (a, k) = (log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.5, 2.0));
            (
                HazardModel::pareto(a, k).unwrap(),
                HazardModel::pareto(c * a, k).unwrap(),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_models_evaluate_on_their_grids() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (m, grid) = random_model_with_grid(&mut rng, 16);
            for &t in &grid {
                let r = m.hazard(t).unwrap();
                assert!(r.is_finite() && r > 0.0);
            }
        }
    }

    #[test]
    fn monotone_models_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (m, increasing) = random_monotone_model(&mut rng);
            let left = m.support().left;
            let grid = linear_grid(left + 0.3, left + 3.0, 10);
            let rates: Vec<f64> = grid.iter().map(|&t| m.hazard(t).unwrap()).collect();
            for w in rates.windows(2) {
                if increasing {
                    assert!(w[1] >= w[0] * (1.0 - 1e-12));
                } else {
                    assert!(w[1] <= w[0] * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn proportional_pairs_have_constant_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let (x, y) = random_proportional_pair(&mut rng);
            let left = x.support().left.max(y.support().left);
            let ratio_at = |t: f64| x.hazard(t).unwrap() / y.hazard(t).unwrap();
            let t0 = left + 0.5;
            let base = ratio_at(t0);
            for dt in [1.0, 2.0, 3.5] {
                assert!((ratio_at(left + dt) - base).abs() <= 1e-9 * base.abs());
            }
        }
    }
}
