//! Monte Carlo bias/MSE study of the functional estimators on Weibull data.
//!
//! Each replication draws a complete Weibull sample, smooths its hazard on
//! the interior [0.1, 0.9] sample-quantile grid, builds the plug-in profile,
//! and compares every functional against the true Weibull value computed
//! over the same interval (means from the first grid point, matching the
//! estimator's convention). Bias and MSE average over grid points within a
//! replication, then over replications.
//!
//! Reports are reproducible bit for bit from (config, seed): sampling uses a
//! counter-seeded ChaCha8 stream per replication and aggregation order is
//! fixed.

use crate::error::{Error, Result};
use crate::estimate::{estimated_profile, kernel_hazard_on_grid, Bandwidth, SurvivalSample};
use crate::fmtnum::fmt12;
use crate::functionals::{interval_am, interval_gm, interval_hm, IntervalSpec, MeanValue};
use crate::model::{Functional, HazardModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Study configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub alpha: f64,
    pub beta: f64,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub base_seed: u64,
    pub bandwidth: Bandwidth,
    pub grid_points: usize,
}

impl SimConfig {
    /// Parse `key=value` lines: `alpha`, `beta`, `sizes` (comma separated),
    /// `replications`, `base_seed`, `bandwidth` (`auto` or a number),
    /// `grid_points`. Lines starting with `#` are comments. A missing
    /// `base_seed` falls back to `default_seed`.
    pub fn parse(text: &str, default_seed: u64) -> Result<SimConfig> {
        let mut cfg = SimConfig {
            alpha: 0.5,
            beta: 1.5,
            sample_sizes: (1..=10).map(|k| k * 1000).collect(),
            replications: 100,
            base_seed: default_seed,
            bandwidth: Bandwidth::Auto,
            grid_points: 64,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::ParseError {
                row: i + 1,
                message: format!("expected key=value, got '{line}'"),
            })?;
            let value = value.trim();
            let bad = |msg: String| Error::ParseError {
                row: i + 1,
                message: msg,
            };
            match key.trim() {
                "alpha" => cfg.alpha = value.parse().map_err(|_| bad("bad alpha".into()))?,
                "beta" => cfg.beta = value.parse().map_err(|_| bad("bad beta".into()))?,
                "sizes" | "sample_sizes" => {
                    cfg.sample_sizes = value
                        .split(',')
                        .map(|v| v.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad(format!("bad size list '{value}'")))?;
                }
                "replications" => {
                    cfg.replications = value.parse().map_err(|_| bad("bad replications".into()))?
                }
                "base_seed" | "seed" => {
                    cfg.base_seed = value.parse().map_err(|_| bad("bad seed".into()))?
                }
                "bandwidth" => {
                    cfg.bandwidth = if value.eq_ignore_ascii_case("auto") {
                        Bandwidth::Auto
                    } else {
                        Bandwidth::Fixed(value.parse().map_err(|_| bad("bad bandwidth".into()))?)
                    };
                }
                "grid_points" => {
                    cfg.grid_points = value.parse().map_err(|_| bad("bad grid_points".into()))?
                }
                other => return Err(bad(format!("unknown key '{other}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_nan() || self.alpha <= 0.0 || self.beta.is_nan() || self.beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "scale and shape must be positive, got alpha={}, beta={}",
                self.alpha, self.beta
            )));
        }
        if self.sample_sizes.is_empty() {
            return Err(Error::InvalidParameter("no sample sizes".into()));
        }
        for &n in &self.sample_sizes {
            if n < 50 {
                return Err(Error::InvalidParameter(format!(
                    "sample sizes must be >= 50, got {n}"
                )));
            }
        }
        if self.replications == 0 {
            return Err(Error::InvalidParameter("replications must be >= 1".into()));
        }
        if self.grid_points < 2 {
            return Err(Error::InvalidParameter("grid_points must be >= 2".into()));
        }
        Ok(())
    }
}

/// Draw `n` Weibull lifetimes with survival exp(-α t^β) by inversion,
/// t = (-ln U / α)^(1/β), from a ChaCha8 stream seeded with `seed`.
pub fn sample_weibull(alpha: f64, beta: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    if alpha.is_nan() || alpha <= 0.0 || beta.is_nan() || beta <= 0.0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need alpha > 0, beta > 0, n >= 1; got alpha={alpha}, beta={beta}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inv_beta = 1.0 / beta;
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
            (-u.ln() / alpha).powf(inv_beta)
        })
        .collect())
}

/// Functionals tracked by the study.
pub const STUDY_FUNCTIONALS: [&str; 7] = ["HR", "AFR", "GFR", "HFR", "AI", "GAI", "HAI"];

/// Bias and MSE for one functional at one sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct SimCell {
    pub functional: &'static str,
    pub n: usize,
    pub bias: f64,
    pub mse: f64,
}

/// Study outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub config: SimConfig,
    pub cells: Vec<SimCell>,
    /// Functionals ranked by bias, largest first (averaged over sizes).
    pub bias_order: Vec<&'static str>,
    /// Functionals ranked by MSE, largest first (averaged over sizes).
    pub mse_order: Vec<&'static str>,
    pub failed_replications: usize,
    pub attempted_replications: usize,
    /// More than 5% of replications failed.
    pub failure_rate_exceeded: bool,
    pub notices: Vec<String>,
}

impl SimReport {
    pub fn cell(&self, functional: &str, n: usize) -> Option<&SimCell> {
        self.cells
            .iter()
            .find(|c| c.functional == functional && c.n == n)
    }

    pub fn to_json(&self) -> String {
        let sizes: Vec<String> = self
            .config
            .sample_sizes
            .iter()
            .map(|n| n.to_string())
            .collect();
        let bw = match self.config.bandwidth {
            Bandwidth::Auto => "\"auto\"".to_string(),
            Bandwidth::Fixed(h) => fmt12(h),
        };
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                format!(
                    "{{\"functional\":\"{}\",\"n\":{},\"bias\":{},\"mse\":{}}}",
                    c.functional,
                    c.n,
                    fmt12(c.bias),
                    fmt12(c.mse)
                )
            })
            .collect();
        let order = |v: &[&str]| {
            v.iter()
                .map(|f| format!("\"{f}\""))
                .collect::<Vec<_>>()
                .join(",")
        };
        let notices: Vec<String> = self.notices.iter().map(|s| format!("\"{s}\"")).collect();
        format!(
            concat!(
                "{{\"config\":{{\"alpha\":{},\"beta\":{},\"sizes\":[{}],",
                "\"replications\":{},\"base_seed\":{},\"bandwidth\":{},\"grid_points\":{}}},\n",
                "\"cells\":[\n{}\n],\n",
                "\"bias_order\":[{}],\"mse_order\":[{}],\n",
                "\"failed_replications\":{},\"attempted_replications\":{},",
                "\"failure_rate_exceeded\":{},\"notices\":[{}]}}\n"
            ),
            fmt12(self.config.alpha),
            fmt12(self.config.beta),
            sizes.join(","),
            self.config.replications,
            self.config.base_seed,
            bw,
            self.config.grid_points,
            cells.join(",\n"),
            order(&self.bias_order),
            order(&self.mse_order),
            self.failed_replications,
            self.attempted_replications,
            self.failure_rate_exceeded,
            notices.join(",")
        )
    }

    /// Long-format CSV `functional,n,bias,mse`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("functional,n,bias,mse\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.functional,
                c.n,
                fmt12(c.bias),
                fmt12(c.mse)
            ));
        }
        out
    }
}

/// True Weibull interval means of the hazard over `[s, e]` (closed forms).
/// At `s = 0` the limits apply; the harmonic mean then requires shape < 2.
fn weibull_interval_means(alpha: f64, beta: f64, s: f64, e: f64) -> (f64, f64, f64) {
    let w = e - s;
    let am = alpha * (e.powf(beta) - s.powf(beta)) / w;
    let s_log_term = if s == 0.0 { 0.0 } else { s * s.ln() - s };
    let log_int = (alpha * beta).ln() * w + (beta - 1.0) * (e * e.ln() - e - s_log_term);
    let gm = (log_int / w).exp();
    let hm = if beta == 2.0 {
        alpha * beta * w / (e / s).ln()
    } else {
        let p = 2.0 - beta;
        let integral = (e.powf(p) - s.powf(p)) / (p * alpha * beta);
        w / integral
    };
    (am, gm, hm)
}

/// Verify the closed-form truth against the catalog oracle (full range) and
/// the quadrature engine (generic interval) before trusting it in a study.
fn validate_truth(alpha: f64, beta: f64) -> Result<()> {
    let m = HazardModel::weibull(alpha, beta)?;
    let check = |got: f64, want: f64, what: &str| -> Result<()> {
        if (got - want).abs() > 1e-6 * want.abs().max(1e-12) {
            return Err(Error::InvalidParameter(format!(
                "truth validation failed for {what}: {got} vs {want}"
            )));
        }
        Ok(())
    };
    for t in [0.7, 1.9] {
        let (am, gm, hm) = weibull_interval_means(alpha, beta, 0.0, t);
        check(
            am,
            m.closed_form(Functional::Afr, t)?.value().unwrap(),
            "afr vs oracle",
        )?;
        check(
            gm,
            m.closed_form(Functional::Gfr, t)?.value().unwrap(),
            "gfr vs oracle",
        )?;
        if beta < 2.0 {
            check(
                hm,
                m.closed_form(Functional::Hfr, t)?.value().unwrap(),
                "hfr vs oracle",
            )?;
        }
    }
    let iv = IntervalSpec::new(0.8, 1.7)?;
    let (am, gm, hm) = weibull_interval_means(alpha, beta, iv.offset, iv.end());
    check(interval_am(&m, &iv)?, am, "interval am vs quadrature")?;
    check(interval_gm(&m, &iv)?, gm, "interval gm vs quadrature")?;
    if let MeanValue::Finite(h) = interval_hm(&m, &iv)? {
        check(h, hm, "interval hm vs quadrature")?;
    }
    Ok(())
}

/// Interior [0.1, 0.9] sample-quantile grid (type-7 interpolation), nudged
/// to stay strictly increasing under ties.
fn quantile_grid(times: &[f64], points: usize) -> Vec<f64> {
    let mut sorted = times.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let q = |p: f64| -> f64 {
        let pos = p * (n - 1) as f64;
        let lo = pos.floor() as usize;
        let frac = pos - lo as f64;
        if lo + 1 < n {
            sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
        } else {
            sorted[n - 1]
        }
    };
    let mut grid = Vec::with_capacity(points);
    for j in 0..points {
        let p = 0.1 + 0.8 * j as f64 / (points - 1) as f64;
        let mut t = q(p);
        if let Some(&prev) = grid.last() {
            if t <= prev {
                t = prev * (1.0 + 1e-12) + 1e-300;
            }
        }
        grid.push(t);
    }
    grid
}

/// Run the study. Replication r uses seed `base_seed + r` for every sample
/// size; failed replications are counted and skipped.
pub fn run_study(cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    validate_truth(cfg.alpha, cfg.beta)?;

    let mut notices = Vec::new();
    let include_hai = cfg.beta < 2.0;
    if !include_hai {
        notices.push(format!(
            "HAI excluded: shape {} >= 2 makes the full-range harmonic family divergent",
            fmt12(cfg.beta)
        ));
    }
    let functionals: Vec<&'static str> = STUDY_FUNCTIONALS
        .iter()
        .copied()
        .filter(|f| include_hai || *f != "HAI")
        .collect();

    let mut cells = Vec::new();
    let mut failed = 0usize;
    let mut attempted = 0usize;

    for &n in &cfg.sample_sizes {
        let mut bias_sum = vec![0.0f64; functionals.len()];
        let mut mse_sum = vec![0.0f64; functionals.len()];
        let mut ok_reps = 0usize;
        for rep in 0..cfg.replications {
            attempted += 1;
            let seed = cfg.base_seed.wrapping_add(rep as u64);
            let times = sample_weibull(cfg.alpha, cfg.beta, n, seed)?;
            let grid = quantile_grid(&times, cfg.grid_points);
            let sample = SurvivalSample::new(times.into_iter().map(|t| (t, true)).collect())?;
            let est = match kernel_hazard_on_grid(&sample, cfg.bandwidth, &grid) {
                Ok(e) => e,
                Err(_) => {
                    failed += 1;
                    continue;
                }
            };
            let prof = estimated_profile(&est);
            let t0 = grid[0];
            let g = grid.len() as f64;
            let mut rep_bias = vec![0.0f64; functionals.len()];
            let mut rep_sq = vec![0.0f64; functionals.len()];
            for (i, &t) in grid.iter().enumerate() {
                let r_true = cfg.alpha * cfg.beta * t.powf(cfg.beta - 1.0);
                let (am, gm, hm) = if i == 0 {
                    (r_true, r_true, r_true)
                } else {
                    weibull_interval_means(cfg.alpha, cfg.beta, t0, t)
                };
                for (k, f) in functionals.iter().enumerate() {
                    let (est_v, true_v) = match *f {
                        "HR" => (prof.rate[i], r_true),
                        "AFR" => (prof.afr[i], am),
                        "GFR" => (prof.gfr[i], gm),
                        "HFR" => (prof.hfr[i], hm),
                        "AI" => (prof.ai[i], r_true / am),
                        "GAI" => (prof.gai[i], r_true / gm),
                        "HAI" => (prof.hai[i], r_true / hm),
                        _ => unreachable!(),
                    };
                    let d = est_v - true_v;
                    rep_bias[k] += d / g;
                    rep_sq[k] += d * d / g;
                }
            }
            for k in 0..functionals.len() {
                bias_sum[k] += rep_bias[k];
                mse_sum[k] += rep_sq[k];
            }
            ok_reps += 1;
        }
        if ok_reps == 0 {
            return Err(Error::BandwidthTooSmall(format!(
                "every replication failed at n = {n}"
            )));
        }
        for (k, f) in functionals.iter().enumerate() {
            cells.push(SimCell {
                functional: f,
                n,
                bias: bias_sum[k] / ok_reps as f64,
                mse: mse_sum[k] / ok_reps as f64,
            });
        }
    }

    // Rank by the mean across sizes, largest first.
    let mean_across = |metric: &dyn Fn(&SimCell) -> f64| -> Vec<(&'static str, f64)> {
        functionals
            .iter()
            .map(|&f| {
                let vals: Vec<f64> = cells
                    .iter()
                    .filter(|c| c.functional == f)
                    .map(metric)
                    .collect();
                (f, vals.iter().sum::<f64>() / vals.len() as f64)
            })
            .collect()
    };
    let rank = |mut pairs: Vec<(&'static str, f64)>| -> Vec<&'static str> {
        pairs.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        pairs.into_iter().map(|(f, _)| f).collect()
    };
    let bias_order = rank(mean_across(&|c| c.bias));
    let mse_order = rank(mean_across(&|c| c.mse));

    let failure_rate_exceeded = failed as f64 > 0.05 * attempted as f64;
    Ok(SimReport {
        config: cfg.clone(),
        cells,
        bias_order,
        mse_order,
        failed_replications: failed,
        attempted_replications: attempted,
        failure_rate_exceeded,
        notices,
    })
}
