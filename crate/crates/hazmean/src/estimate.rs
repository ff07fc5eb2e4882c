//! Kernel hazard estimation from right-censored samples.
//!
//! The pipeline is Nelson–Aalen increments d_i / Y(t_i) at event times,
//! smoothed with an Epanechnikov kernel and renormalized near the data
//! boundaries by the truncated kernel mass. Rates are clamped at a small
//! positive floor so the geometric and harmonic functionals stay defined.

use crate::error::{Error, Result};
use crate::functionals::{AgingProfile, RowFlags};
use crate::grid::linear_grid;
use crate::model::HazardModel;

/// Positivity floor applied to estimated rates.
pub const RATE_FLOOR: f64 = 1e-8;

/// Right-censored lifetime observations.
#[derive(Debug, Clone)]
pub struct SurvivalSample {
    times: Vec<f64>,
    events: Vec<bool>,
}

impl SurvivalSample {
    /// Build from (time, event) pairs; times must be finite and positive and
    /// at least one observation must be an event.
    pub fn new(observations: Vec<(f64, bool)>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::EmptyData);
        }
        for (row, &(t, _)) in observations.iter().enumerate() {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::ParseError {
                    row: row + 1,
                    message: format!("time must be finite and positive, got {t}"),
                });
            }
        }
        if !observations.iter().any(|&(_, e)| e) {
            return Err(Error::AllCensored);
        }
        let (times, events) = observations.into_iter().unzip();
        Ok(SurvivalSample { times, events })
    }

    /// Parse CSV with header `time,status`; status 1 marks a failure, 0 a
    /// censoring. Row numbers in errors count from the first data row.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(Error::EmptyData)?;
        let cols: Vec<String> = header
            .split(',')
            .map(|c| c.trim().to_ascii_lowercase())
            .collect();
        if cols != ["time", "status"] {
            return Err(Error::ParseError {
                row: 0,
                message: format!("expected header 'time,status', got '{header}'"),
            });
        }
        let mut observations = Vec::new();
        for (i, line) in lines.enumerate() {
            let row = i + 1;
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(Error::ParseError {
                    row,
                    message: format!("expected 2 fields, got {}", fields.len()),
                });
            }
            let t: f64 = fields[0].parse().map_err(|_| Error::ParseError {
                row,
                message: format!("'{}' is not a time", fields[0]),
            })?;
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::ParseError {
                    row,
                    message: format!("time must be finite and positive, got {t}"),
                });
            }
            let status = match fields[1] {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::ParseError {
                        row,
                        message: format!("status must be 0 or 1, got '{other}'"),
                    })
                }
            };
            observations.push((t, status));
        }
        if observations.is_empty() {
            return Err(Error::EmptyData);
        }
        if !observations.iter().any(|&(_, e)| e) {
            return Err(Error::AllCensored);
        }
        let (times, events) = observations.into_iter().unzip();
        Ok(SurvivalSample { times, events })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn n_events(&self) -> usize {
        self.events.iter().filter(|&&e| e).count()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn events(&self) -> &[bool] {
        &self.events
    }

    fn time_range(&self) -> (f64, f64) {
        let lo = self.times.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.times.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// Event times of the sample, sorted ascending.
    pub fn sorted_event_times(&self) -> Vec<f64> {
        let mut t: Vec<f64> = self
            .times
            .iter()
            .zip(&self.events)
            .filter(|(_, &e)| e)
            .map(|(&t, _)| t)
            .collect();
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        t
    }
}

/// Kernel bandwidth: fixed, or the normal-reference rule
/// h = 1.06 σ̂ n^(-1/5) with σ̂ the sample standard deviation of event times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Auto,
    Fixed(f64),
}

/// Smoothing kernel; only the Epanechnikov kernel 0.75(1-u²) on |u| ≤ 1 is
/// provided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Epanechnikov,
}

/// A smoothed hazard estimate over a grid.
#[derive(Debug, Clone)]
pub struct HazardEstimate {
    pub grid: Vec<f64>,
    pub rates: Vec<f64>,
    pub bandwidth: f64,
    pub kernel: Kernel,
    pub floor: f64,
    pub clamped: Vec<bool>,
}

/// Integrated Epanechnikov kernel ∫_{-1}^{x} K.
fn kernel_mass_below(x: f64) -> f64 {
    if x <= -1.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        0.75 * (x - x * x * x / 3.0) + 0.5
    }
}

struct EventIncrement {
    time: f64,
    increment: f64,
    count: usize,
}

/// Nelson–Aalen increments d_i / Y(t_i) at distinct event times, with the
/// left-continuous risk-set convention (subjects censored at t are still at
/// risk at t).
fn nelson_aalen(sample: &SurvivalSample) -> Vec<EventIncrement> {
    let n = sample.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sample.times[a].partial_cmp(&sample.times[b]).unwrap());
    let mut out = Vec::new();
    let mut at_risk = n;
    let mut i = 0;
    while i < n {
        let t = sample.times[order[i]];
        let mut d = 0usize;
        let mut c = 0usize;
        while i < n && sample.times[order[i]] == t {
            if sample.events[order[i]] {
                d += 1;
            } else {
                c += 1;
            }
            i += 1;
        }
        if d > 0 {
            out.push(EventIncrement {
                time: t,
                increment: d as f64 / at_risk as f64,
                count: d,
            });
        }
        at_risk -= d + c;
    }
    out
}

fn resolve_bandwidth(sample: &SurvivalSample, bw: Bandwidth) -> Result<f64> {
    match bw {
        Bandwidth::Fixed(h) => {
            if h.is_finite() && h > 0.0 {
                Ok(h)
            } else {
                Err(Error::InvalidParameter(format!(
                    "bandwidth must be positive, got {h}"
                )))
            }
        }
        Bandwidth::Auto => {
            let events = sample.sorted_event_times();
            if events.len() < 2 {
                return Err(Error::BandwidthTooSmall(
                    "auto bandwidth needs at least two events".into(),
                ));
            }
            let n = events.len() as f64;
            let mean = events.iter().sum::<f64>() / n;
            let var = events.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1.0);
            let sd = var.sqrt();
            if sd.is_nan() || sd <= 0.0 {
                return Err(Error::BandwidthTooSmall(
                    "event times have zero spread".into(),
                ));
            }
            Ok(1.06 * sd * (sample.len() as f64).powf(-0.2))
        }
    }
}

/// Kernel hazard estimate on an explicit grid inside the observed range.
pub fn kernel_hazard_on_grid(
    sample: &SurvivalSample,
    bw: Bandwidth,
    grid: &[f64],
) -> Result<HazardEstimate> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("estimation grid is empty".into()));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidGrid(
                "estimation grid must be strictly increasing".into(),
            ));
        }
    }
    let (lo, hi) = sample.time_range();
    if grid[0] < lo || *grid.last().unwrap() > hi {
        return Err(Error::InvalidGrid(format!(
            "grid [{}, {}] leaves the observed range [{lo}, {hi}]",
            grid[0],
            grid.last().unwrap()
        )));
    }
    let h = resolve_bandwidth(sample, bw)?;
    let increments = nelson_aalen(sample);
    let mut rates = Vec::with_capacity(grid.len());
    let mut clamped = Vec::with_capacity(grid.len());
    let mut max_window_events = 0usize;
    for &t in grid {
        let start = increments.partition_point(|e| e.time < t - h);
        let mut raw = 0.0;
        let mut in_window = 0usize;
        for e in &increments[start..] {
            if e.time > t + h {
                break;
            }
            let u = (t - e.time) / h;
            raw += 0.75 * (1.0 - u * u) / h * e.increment;
            in_window += e.count;
        }
        max_window_events = max_window_events.max(in_window);
        let mass = (kernel_mass_below((t - lo) / h) - kernel_mass_below((t - hi) / h)).max(0.5);
        let rate = raw / mass;
        if rate < RATE_FLOOR {
            rates.push(RATE_FLOOR);
            clamped.push(true);
        } else {
            rates.push(rate);
            clamped.push(false);
        }
    }
    if sample.n_events() >= 3 && max_window_events < 3 {
        return Err(Error::BandwidthTooSmall(format!(
            "h = {h} captures fewer than 3 events in every window"
        )));
    }
    Ok(HazardEstimate {
        grid: grid.to_vec(),
        rates,
        bandwidth: h,
        kernel: Kernel::Epanechnikov,
        floor: RATE_FLOOR,
        clamped,
    })
}

/// Kernel hazard estimate on `grid_size` evenly spaced points spanning the
/// observed range.
pub fn kernel_hazard(
    sample: &SurvivalSample,
    bw: Bandwidth,
    grid_size: usize,
) -> Result<HazardEstimate> {
    let (lo, hi) = sample.time_range();
    if grid_size < 2 || hi <= lo {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 grid points over a non-degenerate range, got {grid_size} over [{lo}, {hi}]"
        )));
    }
    kernel_hazard_on_grid(sample, bw, &linear_grid(lo, hi, grid_size))
}

impl HazardEstimate {
    /// Reinterpret the estimate as a tabulated hazard model.
    pub fn to_tabulated(&self) -> Result<HazardModel> {
        HazardModel::tabulated(
            self.grid
                .iter()
                .cloned()
                .zip(self.rates.iter().cloned())
                .collect(),
        )
    }
}

/// Plug-in profile for an estimated hazard: trapezoidal integration over the
/// estimate's grid, with averages taken from the first grid point. At the
/// first point every mean equals the rate itself and the intensities are 1.
pub fn estimated_profile(est: &HazardEstimate) -> AgingProfile {
    let n = est.grid.len();
    let mut p = AgingProfile {
        grid: est.grid.clone(),
        rate: est.rates.clone(),
        afr: Vec::with_capacity(n),
        gfr: Vec::with_capacity(n),
        hfr: Vec::with_capacity(n),
        ai: Vec::with_capacity(n),
        gai: Vec::with_capacity(n),
        hai: Vec::with_capacity(n),
        flags: Vec::with_capacity(n),
    };
    let mut cum_r = 0.0;
    let mut cum_ln = 0.0;
    let mut cum_recip = 0.0;
    for i in 0..n {
        if i > 0 {
            let dt = est.grid[i] - est.grid[i - 1];
            let (r0, r1) = (est.rates[i - 1], est.rates[i]);
            cum_r += 0.5 * dt * (r0 + r1);
            cum_ln += 0.5 * dt * (r0.ln() + r1.ln());
            cum_recip += 0.5 * dt * (r0.recip() + r1.recip());
        }
        let r = est.rates[i];
        let (a, g, h) = if i == 0 {
            (r, r, r)
        } else {
            let width = est.grid[i] - est.grid[0];
            (cum_r / width, (cum_ln / width).exp(), width / cum_recip)
        };
        p.afr.push(a);
        p.gfr.push(g);
        p.hfr.push(h);
        p.ai.push(r / a);
        p.gai.push(r / g);
        p.hai.push(r / h);
        p.flags.push(RowFlags {
            divergent: false,
            clamped: est.clamped[i],
        });
    }
    p
}
