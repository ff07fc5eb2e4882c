//! Series systems of independent components and their mean-rate bounds.
//!
//! A series system fails when its first component fails, so its hazard is
//! the sum of the component hazards. The arithmetic mean rate inherits that
//! additivity exactly; the geometric and harmonic means instead obey lower
//! bounds expressed through discrete means of the component values, and the
//! system's geometric intensity is capped by the worst component intensity.

use crate::error::Result;
use crate::fmtnum::fmt12;
use crate::functionals::{afr, discrete_mean, gfr, hfr, DiscreteMeanKind, MeanValue};
use crate::model::HazardModel;

/// A series system: the components and their composite (summed) hazard.
#[derive(Debug, Clone)]
pub struct SeriesSystem {
    pub components: Vec<HazardModel>,
    pub composite: HazardModel,
}

/// Build a series system; all component supports must share a left endpoint.
pub fn series(components: Vec<HazardModel>) -> Result<SeriesSystem> {
    let composite = HazardModel::composite(components.clone())?;
    Ok(SeriesSystem {
        components,
        composite,
    })
}

/// Per-point bound checks; harmonic entries are `None` when some component
/// harmonic mean diverges (those bounds are skipped and flagged).
#[derive(Debug, Clone, Copy)]
pub struct PointBounds {
    pub t: f64,
    /// System geometric intensity ≤ max component geometric intensity.
    pub gai_upper: bool,
    /// G_sys ≥ n · DGM{G_i}.
    pub gfr_lower: bool,
    /// H_sys ≥ n · DHM{H_i}.
    pub hfr_lower: Option<bool>,
    /// n · DAM{A_i} = A_sys ≥ G_sys ≥ H_sys ≥ n · DHM{H_i}.
    pub chain: Option<bool>,
    /// G of a sum dominates the sum of G's: G_sys ≥ Σ G_i.
    pub gfr_superadditive: bool,
    /// Mediant bound: min r_i/G_i ≤ Σ r_i / Σ G_i ≤ max r_i/G_i.
    pub mediant: bool,
}

impl PointBounds {
    pub fn all_ok(&self) -> bool {
        self.gai_upper
            && self.gfr_lower
            && self.hfr_lower.unwrap_or(true)
            && self.chain.unwrap_or(true)
            && self.gfr_superadditive
            && self.mediant
    }
}

/// Report of [`verify_series_bounds`].
#[derive(Debug, Clone)]
pub struct SeriesBoundReport {
    pub points: Vec<PointBounds>,
    /// Some component harmonic mean diverged; harmonic bounds were skipped.
    pub harmonic_skipped: bool,
    pub tolerance: f64,
}

impl SeriesBoundReport {
    pub fn all_ok(&self) -> bool {
        self.points.iter().all(PointBounds::all_ok)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let opt = |b: Option<bool>| match b {
                    Some(v) => v.to_string(),
                    None => "null".to_string(),
                };
                format!(
                    "{{\"t\":{},\"gai_upper\":{},\"gfr_lower\":{},\"hfr_lower\":{},\"chain\":{},\"gfr_superadditive\":{},\"mediant\":{}}}",
                    fmt12(p.t),
                    p.gai_upper,
                    p.gfr_lower,
                    opt(p.hfr_lower),
                    opt(p.chain),
                    p.gfr_superadditive,
                    p.mediant
                )
            })
            .collect();
        format!(
            "{{\"harmonic_skipped\":{},\"tolerance\":{},\"all_ok\":{},\"points\":[\n{}\n]}}\n",
            self.harmonic_skipped,
            fmt12(self.tolerance),
            self.all_ok(),
            rows.join(",\n")
        )
    }
}

/// Default relative slack for bound comparisons.
pub const BOUND_TOL: f64 = 1e-9;

fn ge(a: f64, b: f64, tol: f64) -> bool {
    a >= b - tol * a.abs().max(b.abs()).max(1e-12)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-12)
}

/// Verify the series-system bound families at every grid point.
pub fn verify_series_bounds(
    sys: &SeriesSystem,
    grid: &[f64],
    tol: f64,
) -> Result<SeriesBoundReport> {
    let n = sys.components.len() as f64;
    let mut points = Vec::with_capacity(grid.len());
    let mut harmonic_skipped = false;
    for &t in grid {
        let r_sys = sys.composite.hazard(t)?;
        let a_sys = afr(&sys.composite, t)?;
        let g_sys = gfr(&sys.composite, t)?;
        let h_sys = hfr(&sys.composite, t)?;

        let mut rates = Vec::with_capacity(sys.components.len());
        let mut a_parts = Vec::with_capacity(sys.components.len());
        let mut g_parts = Vec::with_capacity(sys.components.len());
        let mut h_parts = Vec::with_capacity(sys.components.len());
        let mut h_all_finite = true;
        for c in &sys.components {
            rates.push(c.hazard(t)?);
            a_parts.push(afr(c, t)?);
            g_parts.push(gfr(c, t)?);
            match hfr(c, t)? {
                MeanValue::Finite(h) => h_parts.push(h),
                MeanValue::Divergent => h_all_finite = false,
            }
        }

        let gai_sys = r_sys / g_sys;
        let gai_max = rates
            .iter()
            .zip(&g_parts)
            .map(|(r, g)| r / g)
            .fold(f64::NEG_INFINITY, f64::max);
        let gai_upper = ge(gai_max, gai_sys, tol);

        let dgm = discrete_mean(&g_parts, DiscreteMeanKind::Geometric)?;
        let gfr_lower = ge(g_sys, n * dgm, tol);

        let sum_g: f64 = g_parts.iter().sum();
        let gfr_superadditive = ge(g_sys, sum_g, tol);

        let ratios: Vec<f64> = rates.iter().zip(&g_parts).map(|(r, g)| r / g).collect();
        let mediant_value = rates.iter().sum::<f64>() / sum_g;
        let rmin = ratios.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        let rmax = ratios.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
        let mediant = ge(mediant_value, rmin, tol) && ge(rmax, mediant_value, tol);

        let (hfr_lower, chain) = if h_all_finite {
            let dhm = discrete_mean(&h_parts, DiscreteMeanKind::Harmonic)?;
            let h_sys_v = h_sys.expect_finite()?;
            let hfr_lower = ge(h_sys_v, n * dhm, tol);
            let dam = discrete_mean(&a_parts, DiscreteMeanKind::Arithmetic)?;
            let chain = close(n * dam, a_sys, tol.max(1e-8))
                && ge(a_sys, g_sys, tol)
                && ge(g_sys, h_sys_v, tol)
                && ge(h_sys_v, n * dhm, tol);
            (Some(hfr_lower), Some(chain))
        } else {
            harmonic_skipped = true;
            (None, None)
        };

        points.push(PointBounds {
            t,
            gai_upper,
            gfr_lower,
            hfr_lower,
            chain,
            gfr_superadditive,
            mediant,
        });
    }
    Ok(SeriesBoundReport {
        points,
        harmonic_skipped,
        tolerance: tol,
    })
}
