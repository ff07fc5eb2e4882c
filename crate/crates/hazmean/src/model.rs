//! Parametric hazard-rate models.
//!
//! Every model evaluates its failure rate r(t) on the open interior of its
//! support and knows the left endpoint from which the mean failure rates
//! integrate. Where closed forms are available, [`HazardModel::closed_form`]
//! returns the analytic value of a summary functional so the numeric engine
//! can be cross-checked against it.
//!
//! Supports: `Uniform` lives on (a, b), `Pareto` on (k, ∞), everything else
//! on (0, ∞). The `Shifted` variant carries residual-lifetime models whose
//! hazard is `base` evaluated at an offset; it is produced by
//! [`crate::functionals::residual`] rather than parsed from model specs.

use crate::error::{Error, Result};
use std::path::Path;

/// Closed support `[left, right]`; evaluation happens on the open interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub left: f64,
    pub right: f64,
}

impl Support {
    pub fn contains_interior(&self, t: f64) -> bool {
        t > self.left && t < self.right
    }
}

/// Summary functionals of a lifetime model: the arithmetic, geometric and
/// harmonic mean failure rates over `[left, t]` and the corresponding aging
/// intensities r/A, r/G, r/H.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    Afr,
    Gfr,
    Hfr,
    Ai,
    Gai,
    Hai,
}

impl Functional {
    pub const ALL: [Functional; 6] = [
        Functional::Afr,
        Functional::Gfr,
        Functional::Hfr,
        Functional::Ai,
        Functional::Gai,
        Functional::Hai,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Functional::Afr => "afr",
            Functional::Gfr => "gfr",
            Functional::Hfr => "hfr",
            Functional::Ai => "ai",
            Functional::Gai => "gai",
            Functional::Hai => "hai",
        }
    }
}

/// Result of a closed-form lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oracle {
    /// Analytic value.
    Value(f64),
    /// The defining integral does not converge (harmonic family only).
    Divergent,
    /// No closed form is implemented for this model/functional pair.
    Unavailable,
}

impl Oracle {
    pub fn value(self) -> Option<f64> {
        match self {
            Oracle::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// A lifetime model described by its hazard (failure-rate) function.
#[derive(Debug, Clone, PartialEq)]
pub enum HazardModel {
    /// Constant rate λ.
    Exponential { rate: f64 },
    /// Survival exp(-α t^β); hazard αβ t^(β-1).
    Weibull { scale: f64, shape: f64 },
    /// Hazard λ²t / (1 + λt).
    ErlangLike { rate: f64 },
    /// Uniform lifetime on [a, b]; hazard 1 / (b - t).
    Uniform { left: f64, right: f64 },
    /// Linear hazard a + b t.
    Rayleigh { intercept: f64, slope: f64 },
    /// Hazard a / t for t above the threshold k.
    Pareto { shape: f64, threshold: f64 },
    /// Hazard (1/b) e^((t-a)/b) on the positive half-line.
    TruncatedLogWeibull { location: f64, scale: f64 },
    /// Piecewise-linear interpolation of (t, r) knots.
    Tabulated { knots: Vec<(f64, f64)> },
    /// Sum of member hazards (series system).
    Composite { members: Vec<HazardModel> },
    /// Hazard of `base` evaluated at `offset + t` (residual lifetime).
    Shifted { base: Box<HazardModel>, offset: f64 },
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl HazardModel {
    pub fn exponential(rate: f64) -> Result<Self> {
        Ok(HazardModel::Exponential {
            rate: positive("lambda", rate)?,
        })
    }

    pub fn weibull(scale: f64, shape: f64) -> Result<Self> {
        Ok(HazardModel::Weibull {
            scale: positive("alpha", scale)?,
            shape: positive("beta", shape)?,
        })
    }

    pub fn erlang_like(rate: f64) -> Result<Self> {
        Ok(HazardModel::ErlangLike {
            rate: positive("lambda", rate)?,
        })
    }

    pub fn uniform(left: f64, right: f64) -> Result<Self> {
        if !left.is_finite() || !right.is_finite() || left >= right {
            return Err(Error::InvalidParameter(format!(
                "uniform support needs a < b, got a={left}, b={right}"
            )));
        }
        Ok(HazardModel::Uniform { left, right })
    }

    pub fn rayleigh(intercept: f64, slope: f64) -> Result<Self> {
        if !intercept.is_finite() || intercept < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "rayleigh intercept must be >= 0, got {intercept}"
            )));
        }
        Ok(HazardModel::Rayleigh {
            intercept,
            slope: positive("slope", slope)?,
        })
    }

    pub fn pareto(shape: f64, threshold: f64) -> Result<Self> {
        Ok(HazardModel::Pareto {
            shape: positive("a", shape)?,
            threshold: positive("k", threshold)?,
        })
    }

    pub fn truncated_log_weibull(location: f64, scale: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "location must be finite, got {location}"
            )));
        }
        Ok(HazardModel::TruncatedLogWeibull {
            location,
            scale: positive("b", scale)?,
        })
    }

    /// Build a tabulated model from (t, r) knots: strictly increasing in t,
    /// strictly positive in r, at least two knots.
    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "tabulated model needs at least 2 knots, got {}",
                knots.len()
            )));
        }
        for (i, &(t, r)) in knots.iter().enumerate() {
            if !t.is_finite() || !r.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "non-finite knot at index {i}"
                )));
            }
            if r <= 0.0 {
                return Err(Error::NonPositiveRate { t, rate: r });
            }
            if i > 0 && t <= knots[i - 1].0 {
                return Err(Error::InvalidParameter(format!(
                    "knot times must be strictly increasing; t[{i}] = {t} after {}",
                    knots[i - 1].0
                )));
            }
        }
        Ok(HazardModel::Tabulated { knots })
    }

    /// Sum of member hazards; all members must share a left endpoint.
    pub fn composite(members: Vec<HazardModel>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameter(
                "composite model needs at least one member".into(),
            ));
        }
        let left = members[0].support().left;
        for m in &members[1..] {
            let l = m.support().left;
            if (l - left).abs() > 0.0 {
                return Err(Error::MixedSupports(left, l));
            }
        }
        Ok(HazardModel::Composite { members })
    }

    pub fn support(&self) -> Support {
        match self {
            HazardModel::Exponential { .. }
            | HazardModel::Weibull { .. }
            | HazardModel::ErlangLike { .. }
            | HazardModel::Rayleigh { .. }
            | HazardModel::TruncatedLogWeibull { .. } => Support {
                left: 0.0,
                right: f64::INFINITY,
            },
            HazardModel::Uniform { left, right } => Support {
                left: *left,
                right: *right,
            },
            HazardModel::Pareto { threshold, .. } => Support {
                left: *threshold,
                right: f64::INFINITY,
            },
            HazardModel::Tabulated { knots } => Support {
                left: knots.first().unwrap().0,
                right: knots.last().unwrap().0,
            },
            HazardModel::Composite { members } => {
                let mut left = f64::NEG_INFINITY;
                let mut right = f64::INFINITY;
                for m in members {
                    let s = m.support();
                    left = left.max(s.left);
                    right = right.min(s.right);
                }
                Support { left, right }
            }
            HazardModel::Shifted { base, offset } => Support {
                left: 0.0,
                right: base.support().right - offset,
            },
        }
    }

    /// Failure rate r(t) on the open interior of the support.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        let s = self.support();
        if !t.is_finite() || !s.contains_interior(t) {
            return Err(Error::OutOfSupport {
                t,
                left: s.left,
                right: s.right,
            });
        }
        Ok(self.rate_unchecked(t))
    }

    /// Rate formula without the support check; `t` must lie inside.
    pub(crate) fn rate_unchecked(&self, t: f64) -> f64 {
        match self {
            HazardModel::Exponential { rate } => *rate,
            HazardModel::Weibull { scale, shape } => scale * shape * t.powf(shape - 1.0),
            HazardModel::ErlangLike { rate } => rate * rate * t / (1.0 + rate * t),
            HazardModel::Uniform { right, .. } => 1.0 / (right - t),
            HazardModel::Rayleigh { intercept, slope } => intercept + slope * t,
            HazardModel::Pareto { shape, .. } => shape / t,
            HazardModel::TruncatedLogWeibull { location, scale } => {
                ((t - location) / scale).exp() / scale
            }
            HazardModel::Tabulated { knots } => {
                let idx = match knots.binary_search_by(|k| k.0.partial_cmp(&t).unwrap()) {
                    Ok(i) => return knots[i].1,
                    Err(i) => i,
                };
                let (t0, r0) = knots[idx - 1];
                let (t1, r1) = knots[idx];
                r0 + (r1 - r0) * (t - t0) / (t1 - t0)
            }
            HazardModel::Composite { members } => members.iter().map(|m| m.rate_unchecked(t)).sum(),
            HazardModel::Shifted { base, offset } => base.rate_unchecked(offset + t),
        }
    }

    /// Limiting rate at the left support endpoint, when finite.
    ///
    /// Returns `None` for rates that blow up there (e.g. Weibull with shape
    /// below one). A `Some(0.0)` is a legitimate limit even though interior
    /// rates are strictly positive.
    pub fn rate_left_limit(&self) -> Option<f64> {
        match self {
            HazardModel::Exponential { rate } => Some(*rate),
            HazardModel::Weibull { scale, shape } => {
                if *shape > 1.0 {
                    Some(0.0)
                } else if *shape == 1.0 {
                    Some(*scale)
                } else {
                    None
                }
            }
            HazardModel::ErlangLike { .. } => Some(0.0),
            HazardModel::Uniform { left, right } => Some(1.0 / (right - left)),
            HazardModel::Rayleigh { intercept, .. } => Some(*intercept),
            HazardModel::Pareto { shape, threshold } => Some(shape / threshold),
            HazardModel::TruncatedLogWeibull { location, scale } => {
                Some((-location / scale).exp() / scale)
            }
            HazardModel::Tabulated { knots } => Some(knots[0].1),
            HazardModel::Composite { members } => {
                let mut sum = 0.0;
                for m in members {
                    sum += m.rate_left_limit()?;
                }
                Some(sum)
            }
            HazardModel::Shifted { base, offset } => Some(base.rate_unchecked(*offset)),
        }
    }

    /// Analytic value of a summary functional where a closed form exists.
    ///
    /// Intensities are derived from the mean closed forms via r(t)/mean.
    pub fn closed_form(&self, functional: Functional, t: f64) -> Result<Oracle> {
        let s = self.support();
        if !t.is_finite() || !s.contains_interior(t) {
            return Err(Error::OutOfSupport {
                t,
                left: s.left,
                right: s.right,
            });
        }
        let intensity = |o: Oracle, r: f64| match o {
            Oracle::Value(v) => Oracle::Value(r / v),
            other => other,
        };
        let r = self.rate_unchecked(t);
        Ok(match functional {
            Functional::Afr => self.closed_afr(t),
            Functional::Gfr => self.closed_gfr(t),
            Functional::Hfr => self.closed_hfr(t),
            Functional::Ai => intensity(self.closed_afr(t), r),
            Functional::Gai => intensity(self.closed_gfr(t), r),
            Functional::Hai => intensity(self.closed_hfr(t), r),
        })
    }

    fn closed_afr(&self, t: f64) -> Oracle {
        match self {
            HazardModel::Exponential { rate } => Oracle::Value(*rate),
            HazardModel::Weibull { scale, shape } => Oracle::Value(scale * t.powf(shape - 1.0)),
            HazardModel::ErlangLike { rate } => Oracle::Value((rate * t - (rate * t).ln_1p()) / t),
            HazardModel::Uniform { left, right } => {
                Oracle::Value(((right - left) / (right - t)).ln() / (t - left))
            }
            HazardModel::Rayleigh { intercept, slope } => {
                Oracle::Value(intercept + 0.5 * slope * t)
            }
            HazardModel::Pareto { shape, threshold } => {
                Oracle::Value(shape * (t / threshold).ln() / (t - threshold))
            }
            HazardModel::TruncatedLogWeibull { scale, .. } => {
                let r0 = self.rate_left_limit().unwrap();
                Oracle::Value(scale * (self.rate_unchecked(t) - r0) / t)
            }
            _ => Oracle::Unavailable,
        }
    }

    fn closed_gfr(&self, t: f64) -> Oracle {
        match self {
            HazardModel::Exponential { rate } => Oracle::Value(*rate),
            HazardModel::Weibull { scale, shape } => {
                Oracle::Value(scale * shape * t.powf(shape - 1.0) * (1.0 - shape).exp())
            }
            HazardModel::ErlangLike { rate } => {
                let x = rate * t;
                // r / (1 + λt)^(1/λt)
                Oracle::Value(self.rate_unchecked(t) * (-x.ln_1p() / x).exp())
            }
            HazardModel::Uniform { left, right } => {
                let (a, b) = (*left, *right);
                let ln_g = 1.0 + ((b - t) * (b - t).ln() - (b - a) * (b - a).ln()) / (t - a);
                Oracle::Value(ln_g.exp())
            }
            HazardModel::Rayleigh { intercept, slope } => {
                let (a, b) = (*intercept, *slope);
                if a == 0.0 {
                    Oracle::Value(b * t * (-1.0_f64).exp())
                } else {
                    let x = b * t / a;
                    Oracle::Value((a + b * t) * (x.ln_1p() / x - 1.0).exp())
                }
            }
            HazardModel::Pareto { shape, threshold } => {
                let k = *threshold;
                Oracle::Value(shape * (1.0 - (t * t.ln() - k * k.ln()) / (t - k)).exp())
            }
            HazardModel::TruncatedLogWeibull { .. } => {
                let r0 = self.rate_left_limit().unwrap();
                Oracle::Value((self.rate_unchecked(t) * r0).sqrt())
            }
            _ => Oracle::Unavailable,
        }
    }

    fn closed_hfr(&self, t: f64) -> Oracle {
        match self {
            HazardModel::Exponential { rate } => Oracle::Value(*rate),
            HazardModel::Weibull { scale, shape } => {
                if *shape < 2.0 {
                    Oracle::Value(scale * shape * (2.0 - shape) * t.powf(shape - 1.0))
                } else {
                    Oracle::Divergent
                }
            }
            HazardModel::ErlangLike { .. } => Oracle::Divergent,
            HazardModel::Uniform { left, right } => Oracle::Value(2.0 / (2.0 * right - left - t)),
            HazardModel::Rayleigh { intercept, slope } => {
                let (a, b) = (*intercept, *slope);
                if a == 0.0 {
                    Oracle::Divergent
                } else {
                    Oracle::Value(b * t / (b * t / a).ln_1p())
                }
            }
            HazardModel::Pareto { shape, threshold } => {
                Oracle::Value(2.0 * shape / (t + threshold))
            }
            HazardModel::TruncatedLogWeibull { scale, .. } => {
                let r0 = self.rate_left_limit().unwrap();
                let r = self.rate_unchecked(t);
                Oracle::Value(t * r0 * r / (scale * (r - r0)))
            }
            _ => Oracle::Unavailable,
        }
    }

    /// Parse a model specification of the form `kind:param=value,...`.
    ///
    /// Kinds: `exp:lambda=`, `weibull:alpha=,beta=`, `erlang:lambda=`,
    /// `uniform:a=,b=`, `rayleigh:a=,b=`, `pareto:a=,k=`, `tlw:a=,b=`,
    /// `tabulated:file=PATH` (CSV with `t,r` columns).
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = match spec.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (spec.trim(), ""),
        };
        let mut params = std::collections::BTreeMap::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (key, value) = item.split_once('=').ok_or_else(|| {
                    Error::InvalidParameter(format!("expected param=value, got '{item}'"))
                })?;
                params.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        let num = |key: &str| -> Result<f64> {
            params
                .get(key)
                .ok_or_else(|| Error::InvalidParameter(format!("{kind} needs parameter '{key}'")))?
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("parameter '{key}' is not a number")))
        };
        let only = |allowed: &[&str]| -> Result<()> {
            for key in params.keys() {
                if !allowed.contains(&key.as_str()) {
                    return Err(Error::InvalidParameter(format!(
                        "unknown parameter '{key}' for {kind} (expected {})",
                        allowed.join(", ")
                    )));
                }
            }
            Ok(())
        };
        match kind.to_ascii_lowercase().as_str() {
            "exp" | "exponential" => {
                only(&["lambda"])?;
                Self::exponential(num("lambda")?)
            }
            "weibull" => {
                only(&["alpha", "beta"])?;
                Self::weibull(num("alpha")?, num("beta")?)
            }
            "erlang" | "erlanglike" => {
                only(&["lambda"])?;
                Self::erlang_like(num("lambda")?)
            }
            "uniform" => {
                only(&["a", "b"])?;
                Self::uniform(num("a")?, num("b")?)
            }
            "rayleigh" => {
                only(&["a", "b"])?;
                Self::rayleigh(num("a")?, num("b")?)
            }
            "pareto" => {
                only(&["a", "k"])?;
                Self::pareto(num("a")?, num("k")?)
            }
            "tlw" | "tlogweibull" | "truncatedlogweibull" => {
                only(&["a", "b"])?;
                Self::truncated_log_weibull(num("a")?, num("b")?)
            }
            "tabulated" => {
                only(&["file"])?;
                let path = params.get("file").ok_or_else(|| {
                    Error::InvalidParameter("tabulated needs parameter 'file'".into())
                })?;
                Self::tabulated_from_file(Path::new(path))
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown model kind '{other}'"
            ))),
        }
    }

    /// Load a tabulated model from a CSV file with `t,r` columns.
    pub fn tabulated_from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::tabulated_from_csv(&text)
    }

    /// Parse tabulated knots from CSV text.
    ///
    /// A header row is detected by a non-numeric first field; columns named
    /// `t` and `r` are used when present (so profile CSVs written by this
    /// crate re-ingest directly), otherwise the first two columns.
    pub fn tabulated_from_csv(text: &str) -> Result<Self> {
        let mut knots = Vec::new();
        let (mut t_col, mut r_col) = (0usize, 1usize);
        let mut first = true;
        let mut row = 0usize;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if first {
                first = false;
                if fields[0].parse::<f64>().is_err() {
                    // Header row: locate t and r columns.
                    t_col = fields.iter().position(|f| *f == "t").unwrap_or(0);
                    r_col = fields.iter().position(|f| *f == "r").unwrap_or(1);
                    continue;
                }
            }
            row += 1;
            let get = |col: usize| -> Result<f64> {
                fields
                    .get(col)
                    .ok_or_else(|| Error::ParseError {
                        row,
                        message: format!("missing column {col}"),
                    })?
                    .parse::<f64>()
                    .map_err(|_| Error::ParseError {
                        row,
                        message: format!("'{}' is not a number", fields[col.min(fields.len() - 1)]),
                    })
            };
            knots.push((get(t_col)?, get(r_col)?));
        }
        if knots.is_empty() {
            return Err(Error::EmptyData);
        }
        Self::tabulated(knots)
    }
}
