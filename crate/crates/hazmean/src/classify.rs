//! Aging-class detection on finite grids and verification of the intensity
//! bound chain.
//!
//! Monotonicity from finitely many points is necessarily approximate: a
//! tolerance separates genuine trends from quadrature noise, and grids whose
//! differences stay inside the tolerance band without settling come back as
//! `Undetermined` rather than a spurious `NonMonotone`.

use crate::error::{Error, Result};
use crate::fmtnum::fmt12;
use crate::functionals::{profile, AgingProfile, ProfileOptions};
use crate::model::HazardModel;

/// Default tolerance for analytic models.
pub const ANALYTIC_TOL: f64 = 1e-7;
/// Default tolerance for kernel-estimated profiles.
pub const ESTIMATED_TOL: f64 = 0.02;

/// Functions whose monotonicity is classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTarget {
    Fr,
    Afr,
    Gfr,
    Hfr,
    Ai,
    Gai,
    Hai,
}

impl ClassTarget {
    pub const ALL: [ClassTarget; 7] = [
        ClassTarget::Fr,
        ClassTarget::Afr,
        ClassTarget::Gfr,
        ClassTarget::Hfr,
        ClassTarget::Ai,
        ClassTarget::Gai,
        ClassTarget::Hai,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClassTarget::Fr => "FR",
            ClassTarget::Afr => "AFR",
            ClassTarget::Gfr => "GFR",
            ClassTarget::Hfr => "HFR",
            ClassTarget::Ai => "AI",
            ClassTarget::Gai => "GAI",
            ClassTarget::Hai => "HAI",
        }
    }
}

/// Monotonicity label over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    NonMonotone,
    Undetermined,
}

impl Monotonicity {
    pub fn name(&self) -> &'static str {
        match self {
            Monotonicity::Increasing => "Increasing",
            Monotonicity::Decreasing => "Decreasing",
            Monotonicity::Constant => "Constant",
            Monotonicity::NonMonotone => "NonMonotone",
            Monotonicity::Undetermined => "Undetermined",
        }
    }
}

/// Verdict for one target; `witness` is present exactly for `NonMonotone`.
#[derive(Debug, Clone)]
pub struct ClassVerdict {
    pub target: ClassTarget,
    pub label: Monotonicity,
    pub witness: Option<(f64, f64)>,
    pub tolerance: f64,
}

/// Classify by the sign pattern of successive differences.
fn by_differences(grid: &[f64], values: &[f64], tol: f64) -> (Monotonicity, Option<(f64, f64)>) {
    let scale = values
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let theta = tol * scale;
    let total_variation: f64 = values.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    if total_variation <= theta {
        return (Monotonicity::Constant, None);
    }
    let mut first_up = None;
    let mut first_down = None;
    for (i, w) in values.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d > theta && first_up.is_none() {
            first_up = Some(i);
        }
        if d < -theta && first_down.is_none() {
            first_down = Some(i);
        }
    }
    match (first_up, first_down) {
        (Some(_), None) => (Monotonicity::Increasing, None),
        (None, Some(_)) => (Monotonicity::Decreasing, None),
        (Some(u), Some(d)) => {
            // The later of the two definite signs breaks the earlier trend.
            let i = u.max(d);
            (Monotonicity::NonMonotone, Some((grid[i], grid[i + 1])))
        }
        (None, None) => (Monotonicity::Undetermined, None),
    }
}

/// Classify a mean failure rate through its intensity: the mean increases
/// exactly where the intensity stays at or above one, and decreases where it
/// stays at or below one. Divergent rows enter as +∞.
fn by_intensity(grid: &[f64], intensity: &[f64], tol: f64) -> (Monotonicity, Option<(f64, f64)>) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut argmin = 0;
    let mut argmax = 0;
    for (i, &v) in intensity.iter().enumerate() {
        if v < min {
            min = v;
            argmin = i;
        }
        if v > max {
            max = v;
            argmax = i;
        }
    }
    let inc = min >= 1.0 - tol;
    let dec = max <= 1.0 + tol;
    match (inc, dec) {
        (true, true) => (Monotonicity::Constant, None),
        (true, false) => (Monotonicity::Increasing, None),
        (false, true) => (Monotonicity::Decreasing, None),
        (false, false) => (
            Monotonicity::NonMonotone,
            Some((grid[argmin], grid[argmax])),
        ),
    }
}

/// Classify all seven targets over a grid of at least 16 interior points.
///
/// FR and the three intensities are classified from successive differences;
/// AFR, GFR, and HFR through the intensity tests (their own values never
/// need differencing). The harmonic intensity comes back `Undetermined`
/// where it diverges — HFR itself is still classifiable there, since a
/// divergent harmonic intensity can only certify the increasing side.
pub fn classify(m: &HazardModel, grid: &[f64], tol: f64) -> Result<Vec<ClassVerdict>> {
    if grid.len() < 16 {
        return Err(Error::InvalidGrid(format!(
            "classification needs at least 16 grid points, got {}",
            grid.len()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let p = profile(m, grid, &ProfileOptions::default())?;
    let divergent = p.flags.iter().any(|f| f.divergent);
    let mut out = Vec::with_capacity(ClassTarget::ALL.len());
    for target in ClassTarget::ALL {
        let (label, witness) = match target {
            ClassTarget::Fr => by_differences(grid, &p.rate, tol),
            ClassTarget::Ai => by_differences(grid, &p.ai, tol),
            ClassTarget::Gai => by_differences(grid, &p.gai, tol),
            ClassTarget::Hai => {
                if divergent {
                    (Monotonicity::Undetermined, None)
                } else {
                    by_differences(grid, &p.hai, tol)
                }
            }
            ClassTarget::Afr => by_intensity(grid, &p.ai, tol),
            ClassTarget::Gfr => by_intensity(grid, &p.gai, tol),
            ClassTarget::Hfr => by_intensity(grid, &p.hai, tol),
        };
        out.push(ClassVerdict {
            target,
            label,
            witness,
            tolerance: tol,
        });
    }
    Ok(out)
}

/// Serialize verdicts as a JSON array (CLI `classify` output).
pub fn verdicts_to_json(verdicts: &[ClassVerdict]) -> String {
    let items: Vec<String> = verdicts
        .iter()
        .map(|v| {
            let witness = match v.witness {
                Some((a, b)) => format!("[{},{}]", fmt12(a), fmt12(b)),
                None => "null".to_string(),
            };
            format!(
                "{{\"target\":\"{}\",\"label\":\"{}\",\"witness\":{},\"tolerance\":{}}}",
                v.target.name(),
                v.label.name(),
                witness,
                fmt12(v.tolerance)
            )
        })
        .collect();
    format!("[\n{}\n]\n", items.join(",\n"))
}

/// How the profile grid relates to the model support in [`check_bounds`].
///
/// The intensity chain compares against the extreme rates over the whole
/// support; a grid that starts above the support left endpoint must fold in
/// the limiting rate there, or the chain is spuriously violated at early
/// grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupportEdge {
    /// The grid spans the full range the means integrate over (estimated
    /// profiles; tabulated models evaluated knot to knot).
    GridIsSupport,
    /// The support extends left of the grid with this limiting rate;
    /// `None` marks a rate that blows up at the endpoint.
    LeftRate(Option<f64>),
}

/// Row-level outcome of [`check_bounds`].
#[derive(Debug, Clone, Copy)]
pub struct RowBounds {
    pub t: f64,
    /// r/sup r ≤ ai ≤ gai ≤ hai ≤ r/inf r over the observed range.
    pub chain_ok: bool,
    /// Intensities sit on the right side of 1 given the FR trend; `None`
    /// when FR is not monotone over the grid.
    pub intensity_ok: Option<bool>,
}

/// Report of [`check_bounds`].
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub rows: Vec<RowBounds>,
    pub fr_label: Monotonicity,
    pub tolerance: f64,
}

impl BoundsReport {
    pub fn all_ok(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.chain_ok && r.intensity_ok.unwrap_or(true))
    }
}

/// Profile-and-check convenience for a catalog model.
pub fn model_bounds(m: &HazardModel, grid: &[f64], tol: f64) -> crate::error::Result<BoundsReport> {
    let p = profile(m, grid, &ProfileOptions::default())?;
    let edge = if m.support().left < grid[0] {
        SupportEdge::LeftRate(m.rate_left_limit())
    } else {
        SupportEdge::GridIsSupport
    };
    Ok(check_bounds(&p, edge, tol))
}

/// Check the pointwise intensity chain and, when the hazard is monotone over
/// the grid, that the geometric and harmonic intensities sit on the right
/// side of one.
pub fn check_bounds(p: &AgingProfile, edge: SupportEdge, tol: f64) -> BoundsReport {
    let mut sup = p.rate.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let mut inf = p.rate.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    match edge {
        SupportEdge::GridIsSupport => {}
        SupportEdge::LeftRate(Some(r0)) => {
            sup = sup.max(r0);
            inf = inf.min(r0);
        }
        SupportEdge::LeftRate(None) => sup = f64::INFINITY,
    }
    let (fr_label, _) = by_differences(&p.grid, &p.rate, tol);
    let le = |a: f64, b: f64| a <= b + tol * a.abs().max(b.abs()).max(1.0);
    let mut rows = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let r = p.rate[i];
        let (l, lg, lh) = (p.ai[i], p.gai[i], p.hai[i]);
        let chain_ok = if p.flags[i].divergent {
            // hai = ∞: only the finite part of the chain is checkable.
            le(r / sup, l) && le(l, lg)
        } else {
            le(r / sup, l) && le(l, lg) && le(lg, lh) && le(lh, r / inf)
        };
        let intensity_ok = match fr_label {
            Monotonicity::Increasing => Some(lg >= 1.0 - tol && lh >= 1.0 - tol),
            Monotonicity::Decreasing => Some(lg <= 1.0 + tol && lh <= 1.0 + tol),
            Monotonicity::Constant => {
                Some((lg - 1.0).abs() <= tol && (lh.is_finite() && (lh - 1.0).abs() <= tol))
            }
            _ => None,
        };
        rows.push(RowBounds {
            t: p.grid[i],
            chain_ok,
            intensity_ok,
        });
    }
    BoundsReport {
        rows,
        fr_label,
        tolerance: tol,
    }
}
