//! Mean failure rates, aging intensities, interval averages, the specific
//! aging factor, residual-lifetime transforms, and discrete means.
//!
//! For a model with hazard r and support starting at ℓ, the three means over
//! `[ℓ, t]` are
//!
//! - `afr`: (1/(t-ℓ)) ∫ r(u) du,
//! - `gfr`: exp((1/(t-ℓ)) ∫ ln r(u) du),
//! - `hfr`: ((1/(t-ℓ)) ∫ du / r(u))^(-1),
//!
//! and the aging intensities are the ratios r(t)/mean. The reciprocal
//! integral may fail to converge (power-law rates vanishing at ℓ); that case
//! is carried as [`MeanValue::Divergent`] with the conventions H = 0 and
//! harmonic intensity = ∞ inside profiles, flagged rather than serialized as
//! raw infinities.

use crate::error::{Error, Result};
use crate::fmtnum::fmt12;
use crate::model::{Functional, HazardModel, Oracle};
use crate::quad::{self, QuadEval, DEFAULT_REL_TOL};

/// A mean failure rate (or intensity) that may be divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanValue {
    Finite(f64),
    Divergent,
}

impl MeanValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            MeanValue::Finite(v) => Some(v),
            MeanValue::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, MeanValue::Divergent)
    }

    /// Finite value, or [`Error::DivergentFunctional`].
    pub fn expect_finite(self) -> Result<f64> {
        self.finite().ok_or(Error::DivergentFunctional)
    }
}

/// Interval `[offset, offset + duration]` for interval-average rates and the
/// specific aging factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSpec {
    pub offset: f64,
    pub duration: f64,
}

impl IntervalSpec {
    pub fn new(offset: f64, duration: f64) -> Result<Self> {
        if !offset.is_finite() || offset < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "interval offset must be >= 0, got {offset}"
            )));
        }
        if !duration.is_finite() || duration <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "interval duration must be > 0, got {duration}"
            )));
        }
        Ok(IntervalSpec { offset, duration })
    }

    pub fn end(&self) -> f64 {
        self.offset + self.duration
    }
}

/// Hazard patched with its (possibly infinite) left-endpoint limit, so the
/// integrator can probe the endpoint itself.
fn patched_rate(m: &HazardModel) -> impl Fn(f64) -> f64 + '_ {
    let support = m.support();
    let limit = m.rate_left_limit();
    move |u| {
        if u > support.left {
            m.rate_unchecked(u)
        } else {
            limit.unwrap_or(f64::INFINITY)
        }
    }
}

fn check_mean_point(m: &HazardModel, t: f64) -> Result<f64> {
    let s = m.support();
    if !t.is_finite() || t <= s.left || t >= s.right {
        return Err(Error::OutOfSupport {
            t,
            left: s.left,
            right: s.right,
        });
    }
    Ok(s.left)
}

fn mean_rate(m: &HazardModel, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    let f = patched_rate(m);
    let i = quad::integrate(f, lo, hi, rel_tol)?;
    Ok(i.value / (hi - lo))
}

fn mean_log_rate(m: &HazardModel, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    let f = patched_rate(m);
    let i = quad::integrate(move |u| f(u).ln(), lo, hi, rel_tol)?;
    Ok(i.value / (hi - lo))
}

fn mean_recip_rate(m: &HazardModel, lo: f64, hi: f64, rel_tol: f64) -> Result<MeanValue> {
    let f = patched_rate(m);
    match quad::integrate_div(move |u| 1.0 / f(u), lo, hi, rel_tol)? {
        QuadEval::Converged(i) => Ok(MeanValue::Finite(i.value / (hi - lo))),
        QuadEval::Divergent => Ok(MeanValue::Divergent),
    }
}

/// Arithmetic mean failure rate over `[ℓ, t]`.
pub fn afr(m: &HazardModel, t: f64) -> Result<f64> {
    let left = check_mean_point(m, t)?;
    mean_rate(m, left, t, DEFAULT_REL_TOL)
}

/// Geometric mean failure rate over `[ℓ, t]`.
pub fn gfr(m: &HazardModel, t: f64) -> Result<f64> {
    let left = check_mean_point(m, t)?;
    Ok(mean_log_rate(m, left, t, DEFAULT_REL_TOL)?.exp())
}

/// Harmonic mean failure rate over `[ℓ, t]`; divergent reciprocal integrals
/// are reported, not errored.
pub fn hfr(m: &HazardModel, t: f64) -> Result<MeanValue> {
    let left = check_mean_point(m, t)?;
    Ok(match mean_recip_rate(m, left, t, DEFAULT_REL_TOL)? {
        MeanValue::Finite(v) => MeanValue::Finite(v.recip()),
        MeanValue::Divergent => MeanValue::Divergent,
    })
}

/// Aging intensity r(t)/afr(t).
pub fn ai(m: &HazardModel, t: f64) -> Result<f64> {
    Ok(m.hazard(t)? / afr(m, t)?)
}

/// Geometric aging intensity r(t)/gfr(t).
pub fn gai(m: &HazardModel, t: f64) -> Result<f64> {
    Ok(m.hazard(t)? / gfr(m, t)?)
}

/// Harmonic aging intensity r(t)/hfr(t), divergent where `hfr` is.
pub fn hai(m: &HazardModel, t: f64) -> Result<MeanValue> {
    let r = m.hazard(t)?;
    Ok(match hfr(m, t)? {
        MeanValue::Finite(h) => MeanValue::Finite(r / h),
        MeanValue::Divergent => MeanValue::Divergent,
    })
}

/// Per-row status flags of an [`AgingProfile`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RowFlags {
    /// Reciprocal-hazard integral diverges at this row (H = 0, harmonic
    /// intensity = ∞ conventions apply).
    pub divergent: bool,
    /// The estimated rate was clamped at the positivity floor somewhere in
    /// this row's data.
    pub clamped: bool,
}

impl RowFlags {
    pub fn tokens(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.divergent {
            v.push("Divergent");
        }
        if self.clamped {
            v.push("Clamped");
        }
        v
    }
}

/// Aligned values of the hazard, its three means, and the three intensities
/// over a time grid.
///
/// Rows where the harmonic family diverges store `hfr = 0` and `hai = ∞` and
/// set the `divergent` flag; serialization emits the flag instead of raw
/// infinities.
#[derive(Debug, Clone, PartialEq)]
pub struct AgingProfile {
    pub grid: Vec<f64>,
    pub rate: Vec<f64>,
    pub afr: Vec<f64>,
    pub gfr: Vec<f64>,
    pub hfr: Vec<f64>,
    pub ai: Vec<f64>,
    pub gai: Vec<f64>,
    pub hai: Vec<f64>,
    pub flags: Vec<RowFlags>,
}

impl AgingProfile {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// CSV with header `t,r,afr,gfr,hfr,ai,gai,hai,flags`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,r,afr,gfr,hfr,ai,gai,hai,flags\n");
        for i in 0..self.len() {
            let hai_cell = if self.flags[i].divergent {
                String::new()
            } else {
                fmt12(self.hai[i])
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                fmt12(self.grid[i]),
                fmt12(self.rate[i]),
                fmt12(self.afr[i]),
                fmt12(self.gfr[i]),
                fmt12(self.hfr[i]),
                fmt12(self.ai[i]),
                fmt12(self.gai[i]),
                hai_cell,
                self.flags[i].tokens().join(";"),
            ));
        }
        out
    }

    /// JSON equivalent of [`AgingProfile::to_csv`]; divergent harmonic
    /// intensities serialize as `null`.
    pub fn to_json(&self) -> String {
        let mut rows = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let hai_cell = if self.flags[i].divergent {
                "null".to_string()
            } else {
                fmt12(self.hai[i])
            };
            let flags: Vec<String> = self.flags[i]
                .tokens()
                .iter()
                .map(|t| format!("\"{t}\""))
                .collect();
            rows.push(format!(
                "{{\"t\":{},\"r\":{},\"afr\":{},\"gfr\":{},\"hfr\":{},\"ai\":{},\"gai\":{},\"hai\":{},\"flags\":[{}]}}",
                fmt12(self.grid[i]),
                fmt12(self.rate[i]),
                fmt12(self.afr[i]),
                fmt12(self.gfr[i]),
                fmt12(self.hfr[i]),
                fmt12(self.ai[i]),
                fmt12(self.gai[i]),
                hai_cell,
                flags.join(","),
            ));
        }
        format!("{{\"rows\":[\n{}\n]}}\n", rows.join(",\n"))
    }
}

/// Options for [`profile`].
#[derive(Debug, Clone, Copy)]
pub struct ProfileOptions {
    /// Relative quadrature tolerance.
    pub rel_tol: f64,
    /// Use closed forms where the catalog provides them.
    pub exact: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            rel_tol: DEFAULT_REL_TOL,
            exact: false,
        }
    }
}

/// Batch the six functionals over a strictly increasing grid inside the
/// support interior.
pub fn profile(m: &HazardModel, grid: &[f64], opts: &ProfileOptions) -> Result<AgingProfile> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidGrid(format!(
                "grid times must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    let n = grid.len();
    let mut p = AgingProfile {
        grid: grid.to_vec(),
        rate: Vec::with_capacity(n),
        afr: Vec::with_capacity(n),
        gfr: Vec::with_capacity(n),
        hfr: Vec::with_capacity(n),
        ai: Vec::with_capacity(n),
        gai: Vec::with_capacity(n),
        hai: Vec::with_capacity(n),
        flags: Vec::with_capacity(n),
    };
    for &t in grid {
        let left = check_mean_point(m, t)?;
        let r = m.hazard(t)?;
        let exact_mean = |f: Functional| -> Result<Option<MeanValue>> {
            if !opts.exact {
                return Ok(None);
            }
            Ok(match m.closed_form(f, t)? {
                Oracle::Value(v) => Some(MeanValue::Finite(v)),
                Oracle::Divergent => Some(MeanValue::Divergent),
                Oracle::Unavailable => None,
            })
        };
        let a = match exact_mean(Functional::Afr)? {
            Some(MeanValue::Finite(v)) => v,
            _ => mean_rate(m, left, t, opts.rel_tol)?,
        };
        let g = match exact_mean(Functional::Gfr)? {
            Some(MeanValue::Finite(v)) => v,
            _ => mean_log_rate(m, left, t, opts.rel_tol)?.exp(),
        };
        let h = match exact_mean(Functional::Hfr)? {
            Some(v) => v,
            None => match mean_recip_rate(m, left, t, opts.rel_tol)? {
                MeanValue::Finite(v) => MeanValue::Finite(v.recip()),
                MeanValue::Divergent => MeanValue::Divergent,
            },
        };
        p.rate.push(r);
        p.afr.push(a);
        p.gfr.push(g);
        p.ai.push(r / a);
        p.gai.push(r / g);
        match h {
            MeanValue::Finite(hv) => {
                p.hfr.push(hv);
                p.hai.push(r / hv);
                p.flags.push(RowFlags::default());
            }
            MeanValue::Divergent => {
                p.hfr.push(0.0);
                p.hai.push(f64::INFINITY);
                p.flags.push(RowFlags {
                    divergent: true,
                    clamped: false,
                });
            }
        }
    }
    Ok(p)
}

fn check_interval(m: &HazardModel, iv: &IntervalSpec) -> Result<()> {
    let s = m.support();
    if iv.offset < s.left || iv.end() >= s.right {
        return Err(Error::OutOfSupport {
            t: if iv.offset < s.left {
                iv.offset
            } else {
                iv.end()
            },
            left: s.left,
            right: s.right,
        });
    }
    Ok(())
}

/// Arithmetic mean of the hazard over `[s, s+t]`.
pub fn interval_am(m: &HazardModel, iv: &IntervalSpec) -> Result<f64> {
    check_interval(m, iv)?;
    mean_rate(m, iv.offset, iv.end(), DEFAULT_REL_TOL)
}

/// Geometric mean of the hazard over `[s, s+t]`.
pub fn interval_gm(m: &HazardModel, iv: &IntervalSpec) -> Result<f64> {
    check_interval(m, iv)?;
    Ok(mean_log_rate(m, iv.offset, iv.end(), DEFAULT_REL_TOL)?.exp())
}

/// Harmonic mean of the hazard over `[s, s+t]`; divergent only when `s` sits
/// on a support endpoint where the hazard vanishes.
pub fn interval_hm(m: &HazardModel, iv: &IntervalSpec) -> Result<MeanValue> {
    check_interval(m, iv)?;
    Ok(
        match mean_recip_rate(m, iv.offset, iv.end(), DEFAULT_REL_TOL)? {
            MeanValue::Finite(v) => MeanValue::Finite(v.recip()),
            MeanValue::Divergent => MeanValue::Divergent,
        },
    )
}

/// Cumulative hazard ∫ r from the support left endpoint up to `x`; zero for
/// `x` at or below the left endpoint.
pub fn cumulative_hazard(m: &HazardModel, x: f64) -> Result<f64> {
    let s = m.support();
    if !x.is_finite() || x >= s.right {
        return Err(Error::OutOfSupport {
            t: x,
            left: s.left,
            right: s.right,
        });
    }
    if x <= s.left {
        return Ok(0.0);
    }
    let f = patched_rate(m);
    Ok(quad::integrate(f, s.left, x, DEFAULT_REL_TOL)?.value)
}

/// Specific aging factor F̄(t)F̄(s)/F̄(t+s): the survival ratio of a new
/// system over one already aged. Identically 1 for the exponential model.
pub fn specific_aging_factor(m: &HazardModel, iv: &IntervalSpec) -> Result<f64> {
    let s = m.support();
    if iv.end() >= s.right {
        return Err(Error::OutOfSupport {
            t: iv.end(),
            left: s.left,
            right: s.right,
        });
    }
    let lam_s = cumulative_hazard(m, iv.offset)?;
    let lam_t = cumulative_hazard(m, iv.duration)?;
    let lam_both = cumulative_hazard(m, iv.end())?;
    Ok((lam_both - lam_s - lam_t).exp())
}

/// Residual-lifetime model: hazard t ↦ r(x + t) with the support shifted so
/// it starts at zero. Shift-closed kinds stay in the catalog; the rest wrap
/// in [`HazardModel::Shifted`].
pub fn residual(m: &HazardModel, x: f64) -> Result<HazardModel> {
    let s = m.support();
    if !x.is_finite() || !s.contains_interior(x) {
        return Err(Error::OutOfSupport {
            t: x,
            left: s.left,
            right: s.right,
        });
    }
    Ok(match m {
        HazardModel::Exponential { rate } => HazardModel::Exponential { rate: *rate },
        HazardModel::Uniform { right, .. } => HazardModel::Uniform {
            left: 0.0,
            right: right - x,
        },
        HazardModel::Rayleigh { intercept, slope } => HazardModel::Rayleigh {
            intercept: intercept + slope * x,
            slope: *slope,
        },
        HazardModel::TruncatedLogWeibull { location, scale } => HazardModel::TruncatedLogWeibull {
            location: location - x,
            scale: *scale,
        },
        HazardModel::Tabulated { knots } => {
            let mut shifted = vec![(0.0, m.hazard(x)?)];
            shifted.extend(knots.iter().filter(|k| k.0 > x).map(|&(t, r)| (t - x, r)));
            HazardModel::tabulated(shifted)?
        }
        HazardModel::Composite { members } => {
            let shifted: Result<Vec<_>> = members.iter().map(|mm| residual(mm, x)).collect();
            HazardModel::Composite { members: shifted? }
        }
        HazardModel::Shifted { base, offset } => HazardModel::Shifted {
            base: base.clone(),
            offset: offset + x,
        },
        other => HazardModel::Shifted {
            base: Box::new(other.clone()),
            offset: x,
        },
    })
}

/// Discrete mean kinds for finite positive lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscreteMeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
}

/// Arithmetic, geometric, or harmonic mean of a non-empty positive list.
pub fn discrete_mean(values: &[f64], kind: DiscreteMeanKind) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyList);
    }
    for &v in values {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::NonPositiveEntry(v));
        }
    }
    let n = values.len() as f64;
    Ok(match kind {
        DiscreteMeanKind::Arithmetic => values.iter().sum::<f64>() / n,
        DiscreteMeanKind::Geometric => (values.iter().map(|v| v.ln()).sum::<f64>() / n).exp(),
        DiscreteMeanKind::Harmonic => n / values.iter().map(|v| v.recip()).sum::<f64>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    fn assert_rel(a: f64, b: f64, tol: f64) {
        assert!(rel_close(a, b, tol), "expected {b}, got {a}");
    }

    #[test]
    fn constant_hazard_all_means_equal() {
        let m = HazardModel::exponential(2.0).unwrap();
        assert_rel(afr(&m, 7.0).unwrap(), 2.0, 1e-10);
        assert_rel(gfr(&m, 7.0).unwrap(), 2.0, 1e-10);
        assert_rel(hfr(&m, 7.0).unwrap().finite().unwrap(), 2.0, 1e-10);
        assert_rel(ai(&m, 3.0).unwrap(), 1.0, 1e-10);
    }

    #[test]
    fn weibull_mean_rate() {
        // ∫0^t αβ u^(β-1) du = α t^β, so the mean is α t^(β-1).
        let m = HazardModel::weibull(0.5, 1.5).unwrap();
        assert_rel(afr(&m, 1.0).unwrap(), 0.5, 1e-9);
    }

    #[test]
    fn pareto_harmonic_mean() {
        // (1/(t-k)) ∫k^t u/a du inverted gives 2a/(t+k).
        let m = HazardModel::pareto(2.0, 1.0).unwrap();
        assert_rel(hfr(&m, 3.0).unwrap().finite().unwrap(), 1.0, 1e-9);
    }

    #[test]
    fn weibull_shape_two_harmonic_divergence() {
        let m = HazardModel::weibull(0.5, 2.0).unwrap();
        assert!(hfr(&m, 1.0).unwrap().is_divergent());
        assert!(hai(&m, 1.0).unwrap().is_divergent());
    }

    #[test]
    fn intensity_spot_values() {
        let p = HazardModel::pareto(2.0, 1.0).unwrap();
        assert_rel(gai(&p, 2.0).unwrap(), 2.0 / std::f64::consts::E, 1e-9);
        let w = HazardModel::weibull(0.5, 1.5).unwrap();
        for t in [0.4, 1.0, 5.0] {
            assert_rel(hai(&w, t).unwrap().finite().unwrap(), 2.0, 1e-8);
        }
    }

    #[test]
    fn profile_exponential_is_flat() {
        let m = HazardModel::exponential(1.0).unwrap();
        let p = profile(&m, &[1.0, 2.0, 3.0], &ProfileOptions::default()).unwrap();
        for i in 0..3 {
            assert_rel(p.rate[i], 1.0, 1e-10);
            assert_rel(p.afr[i], 1.0, 1e-10);
            assert_rel(p.gfr[i], 1.0, 1e-10);
            assert_rel(p.hfr[i], 1.0, 1e-10);
            assert_rel(p.ai[i], 1.0, 1e-10);
            assert_rel(p.gai[i], 1.0, 1e-10);
            assert_rel(p.hai[i], 1.0, 1e-10);
            assert_eq!(p.flags[i], RowFlags::default());
        }
    }

    #[test]
    fn profile_weibull_ai_is_shape() {
        let m = HazardModel::weibull(0.5, 1.5).unwrap();
        let p = profile(&m, &[0.5, 1.0, 2.0], &ProfileOptions::default()).unwrap();
        for i in 0..3 {
            assert_rel(p.ai[i], 1.5, 1e-8);
        }
    }

    #[test]
    fn profile_rayleigh_harmonic_intensity() {
        let m = HazardModel::rayleigh(1.0, 1.0).unwrap();
        let p = profile(&m, &[1.0], &ProfileOptions::default()).unwrap();
        assert_rel(p.hai[0], 2.0 * 2.0_f64.ln(), 1e-8);
    }

    #[test]
    fn profile_exact_uses_closed_forms() {
        let m = HazardModel::weibull(0.5, 1.5).unwrap();
        let exact = ProfileOptions {
            exact: true,
            ..Default::default()
        };
        let p = profile(&m, &[0.5, 1.0, 2.0], &exact).unwrap();
        for i in 0..3 {
            assert_rel(p.gai[i], 0.5f64.exp(), 1e-14);
        }
        // Divergent closed form sets the flag without running quadrature.
        let m2 = HazardModel::weibull(0.5, 2.0).unwrap();
        let p2 = profile(&m2, &[1.0], &exact).unwrap();
        assert!(p2.flags[0].divergent);
        assert_eq!(p2.hfr[0], 0.0);
        assert!(p2.hai[0].is_infinite());
    }

    #[test]
    fn profile_rejects_bad_grids() {
        let m = HazardModel::exponential(1.0).unwrap();
        assert!(profile(&m, &[], &ProfileOptions::default()).is_err());
        assert!(profile(&m, &[1.0, 1.0], &ProfileOptions::default()).is_err());
        assert!(profile(&m, &[0.0, 1.0], &ProfileOptions::default()).is_err());
    }

    #[test]
    fn interval_means() {
        let e = HazardModel::exponential(3.0).unwrap();
        let iv = IntervalSpec::new(2.0, 5.0).unwrap();
        assert_rel(interval_gm(&e, &iv).unwrap(), 3.0, 1e-10);

        // Weibull(0.5, 2) has hazard r(u) = u.
        let w = HazardModel::weibull(0.5, 2.0).unwrap();
        let iv = IntervalSpec::new(1.0, 1.0).unwrap();
        let expected_gm = (2.0 * 2.0_f64.ln() - 1.0).exp();
        assert_rel(interval_gm(&w, &iv).unwrap(), expected_gm, 1e-9);
        let expected_hm = 1.0 / 2.0_f64.ln();
        assert_rel(
            interval_hm(&w, &iv).unwrap().finite().unwrap(),
            expected_hm,
            1e-9,
        );

        // At the vanishing left endpoint the harmonic mean diverges.
        let iv0 = IntervalSpec::new(0.0, 1.0).unwrap();
        assert!(interval_hm(&w, &iv0).unwrap().is_divergent());
    }

    #[test]
    fn specific_aging_factor_values() {
        let e = HazardModel::exponential(4.2).unwrap();
        let iv = IntervalSpec::new(1.3, 2.2).unwrap();
        assert_rel(specific_aging_factor(&e, &iv).unwrap(), 1.0, 1e-10);

        // Weibull(1,2): cumulative hazard t², factor exp(2ts).
        let w = HazardModel::weibull(1.0, 2.0).unwrap();
        let iv = IntervalSpec::new(1.0, 1.0).unwrap();
        assert_rel(
            specific_aging_factor(&w, &iv).unwrap(),
            std::f64::consts::E.powi(2),
            1e-9,
        );
    }

    #[test]
    fn aging_factor_at_least_one_for_ifr_models() {
        let models = [
            HazardModel::weibull(0.7, 1.6).unwrap(),
            HazardModel::rayleigh(0.5, 2.0).unwrap(),
            HazardModel::erlang_like(1.3).unwrap(),
            HazardModel::truncated_log_weibull(0.5, 1.2).unwrap(),
        ];
        let iv = IntervalSpec::new(1.0, 1.0).unwrap();
        for m in &models {
            assert!(specific_aging_factor(m, &iv).unwrap() >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn residual_models() {
        let e = HazardModel::exponential(1.7).unwrap();
        assert_eq!(residual(&e, 2.0).unwrap(), e);

        // Residual geometric mean equals the interval geometric mean.
        let w = HazardModel::weibull(0.5, 2.0).unwrap();
        let res = residual(&w, 1.0).unwrap();
        let lhs = gfr(&res, 1.0).unwrap();
        let rhs = interval_gm(&w, &IntervalSpec::new(1.0, 1.0).unwrap()).unwrap();
        assert_rel(lhs, rhs, 1e-9);

        // Harmonic intensity of the residual equals r(x+t)/interval_hm.
        let m = HazardModel::rayleigh(0.3, 1.1).unwrap();
        let x = 0.7;
        let res = residual(&m, x).unwrap();
        let t = 0.9;
        let lhs = hai(&res, t).unwrap().finite().unwrap();
        let hm = interval_hm(&m, &IntervalSpec::new(x, t).unwrap())
            .unwrap()
            .finite()
            .unwrap();
        let rhs = m.hazard(x + t).unwrap() / hm;
        assert_rel(lhs, rhs, 1e-9);

        // Uniform residual stays uniform.
        let u = HazardModel::uniform(0.0, 2.0).unwrap();
        assert_eq!(
            residual(&u, 0.5).unwrap(),
            HazardModel::uniform(0.0, 1.5).unwrap()
        );
    }

    #[test]
    fn discrete_means() {
        assert_rel(
            discrete_mean(&[4.0, 1.0], DiscreteMeanKind::Geometric).unwrap(),
            2.0,
            1e-14,
        );
        assert_rel(
            discrete_mean(&[1.0, 4.0], DiscreteMeanKind::Harmonic).unwrap(),
            1.6,
            1e-14,
        );
        let xs = [1.0, 2.0, 3.0];
        let dam = discrete_mean(&xs, DiscreteMeanKind::Arithmetic).unwrap();
        let dgm = discrete_mean(&xs, DiscreteMeanKind::Geometric).unwrap();
        let dhm = discrete_mean(&xs, DiscreteMeanKind::Harmonic).unwrap();
        assert_rel(dam, 2.0, 1e-14);
        assert_rel(dgm, 6.0_f64.powf(1.0 / 3.0), 1e-12);
        assert_rel(dhm, 18.0 / 11.0, 1e-12);
        assert!(dam >= dgm && dgm >= dhm);
        assert!(matches!(
            discrete_mean(&[], DiscreteMeanKind::Arithmetic),
            Err(Error::EmptyList)
        ));
        assert!(matches!(
            discrete_mean(&[1.0, 0.0], DiscreteMeanKind::Geometric),
            Err(Error::NonPositiveEntry(_))
        ));
    }

    #[test]
    fn csv_and_json_respect_divergence_conventions() {
        let m = HazardModel::weibull(1.0, 2.0).unwrap();
        let p = profile(&m, &[1.0, 2.0], &ProfileOptions::default()).unwrap();
        let csv = p.to_csv();
        assert!(csv.starts_with("t,r,afr,gfr,hfr,ai,gai,hai,flags\n"));
        assert!(csv.contains("Divergent"));
        assert!(!csv.contains("inf"));
        let json = p.to_json();
        assert!(json.contains("\"hai\":null"));
        assert!(json.contains("\"Divergent\""));
    }

    proptest! {
        #[test]
        fn discrete_mean_ordering(xs in proptest::collection::vec(1e-6f64..1e6, 1..20)) {
            let dam = discrete_mean(&xs, DiscreteMeanKind::Arithmetic).unwrap();
            let dgm = discrete_mean(&xs, DiscreteMeanKind::Geometric).unwrap();
            let dhm = discrete_mean(&xs, DiscreteMeanKind::Harmonic).unwrap();
            prop_assert!(dam >= dgm * (1.0 - 1e-12));
            prop_assert!(dgm >= dhm * (1.0 - 1e-12));
        }

        #[test]
        fn numeric_engine_matches_closed_forms_on_random_parameters(
            pick in 0usize..7,
            p1 in 0.1f64..8.0,
            p2 in 0.2f64..1.9,
            frac in 0.05f64..0.95,
        ) {
            // Shifted supports included: uniform with a > 0, pareto with
            // general thresholds.
            let (m, t) = match pick {
                0 => (HazardModel::exponential(p1).unwrap(), 0.2 + 4.0 * frac),
                1 => (HazardModel::weibull(p1, p2).unwrap(), 0.2 + 4.0 * frac),
                2 => (HazardModel::erlang_like(p1).unwrap(), 0.2 + 4.0 * frac),
                3 => {
                    let a = 0.6 * p1;
                    let b = a + 0.5 + p1;
                    (HazardModel::uniform(a, b).unwrap(), a + frac * (b - a))
                }
                4 => (HazardModel::rayleigh(p1, 0.4 + p2).unwrap(), 0.2 + 4.0 * frac),
                5 => {
                    let k = 0.3 + 0.4 * p1;
                    (HazardModel::pareto(p1, k).unwrap(), k * (1.02 + 4.0 * frac))
                }
                _ => (
                    HazardModel::truncated_log_weibull(p2 - 1.0, 0.4 + 0.5 * p1).unwrap(),
                    0.2 + 4.0 * frac,
                ),
            };
            for f in Functional::ALL {
                if let Oracle::Value(want) = m.closed_form(f, t).unwrap() {
                    let got = match f {
                        Functional::Afr => afr(&m, t).unwrap(),
                        Functional::Gfr => gfr(&m, t).unwrap(),
                        Functional::Hfr => hfr(&m, t).unwrap().finite().unwrap(),
                        Functional::Ai => ai(&m, t).unwrap(),
                        Functional::Gai => gai(&m, t).unwrap(),
                        Functional::Hai => hai(&m, t).unwrap().finite().unwrap(),
                    };
                    prop_assert!(
                        rel_close(got, want, 1e-6),
                        "{m:?} {} at t={t}: numeric {got} vs closed {want}",
                        f.name()
                    );
                }
            }
        }

        #[test]
        fn mean_chain_on_random_weibull(
            scale in 0.1f64..5.0,
            shape in 0.5f64..1.9,
            t in 0.2f64..4.0,
        ) {
            let m = HazardModel::weibull(scale, shape).unwrap();
            let a = afr(&m, t).unwrap();
            let g = gfr(&m, t).unwrap();
            let h = hfr(&m, t).unwrap().finite().unwrap();
            prop_assert!(h <= g * (1.0 + 1e-8));
            prop_assert!(g <= a * (1.0 + 1e-8));
        }
    }
}
