//! Pairwise stochastic orders with witness reporting.
//!
//! All orders here follow the hazard orientation: X is "smaller" than Y when
//! the X-side function dominates the Y-side one (a larger failure rate means
//! a shorter life). The survival order ST is checked through cumulative
//! hazards, where the same orientation applies.

use crate::error::{Error, Result};
use crate::fmtnum::fmt12;
use crate::functionals::{afr, ai, cumulative_hazard, gai, gfr, hai, hfr};
use crate::model::HazardModel;

/// Default relative tolerance for verdicts on analytic models.
pub const ORDER_TOL: f64 = 1e-9;

/// Order kinds. `Af` is "aging faster": the hazard ratio r_X/r_Y must be
/// nondecreasing. The rest compare a function pointwise over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Fr,
    Af,
    St,
    Afr,
    Gfr,
    Hfr,
    Ai,
    Gai,
    Hai,
}

impl OrderKind {
    pub const ALL: [OrderKind; 9] = [
        OrderKind::Fr,
        OrderKind::Af,
        OrderKind::St,
        OrderKind::Afr,
        OrderKind::Gfr,
        OrderKind::Hfr,
        OrderKind::Ai,
        OrderKind::Gai,
        OrderKind::Hai,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OrderKind::Fr => "FR",
            OrderKind::Af => "AF",
            OrderKind::St => "ST",
            OrderKind::Afr => "AFR",
            OrderKind::Gfr => "GFR",
            OrderKind::Hfr => "HFR",
            OrderKind::Ai => "AI",
            OrderKind::Gai => "GAI",
            OrderKind::Hai => "HAI",
        }
    }

    pub fn parse(s: &str) -> Result<OrderKind> {
        OrderKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown order kind '{s}'")))
    }
}

/// Verdict direction for a pair (X, Y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    XleY,
    YleX,
    Both,
    Neither,
}

impl Direction {
    pub fn name(&self) -> &'static str {
        match self {
            Direction::XleY => "XleY",
            Direction::YleX => "YleX",
            Direction::Both => "Both",
            Direction::Neither => "Neither",
        }
    }

    /// Whether this verdict asserts the given one-sided relation.
    pub fn covers(&self, side: Direction) -> bool {
        matches!(
            (self, side),
            (Direction::Both, Direction::XleY)
                | (Direction::Both, Direction::YleX)
                | (Direction::XleY, Direction::XleY)
                | (Direction::YleX, Direction::YleX)
        )
    }
}

/// Outcome of a single order check. Witnesses record a grid time where the
/// defining inequality of the respective direction fails: `Both` carries no
/// witnesses and `Neither` carries both.
#[derive(Debug, Clone)]
pub struct OrderReport {
    pub kind: OrderKind,
    pub direction: Direction,
    pub witness_x_le_y: Option<f64>,
    pub witness_y_le_x: Option<f64>,
    pub grid: Vec<f64>,
}

impl OrderReport {
    pub fn to_json(&self) -> String {
        let w = |o: Option<f64>| o.map(fmt12).unwrap_or_else(|| "null".to_string());
        format!(
            "{{\"kind\":\"{}\",\"direction\":\"{}\",\"witness_x_le_y\":{},\"witness_y_le_x\":{}}}",
            self.kind.name(),
            self.direction.name(),
            w(self.witness_x_le_y),
            w(self.witness_y_le_x)
        )
    }
}

fn check_common_grid(x: &HazardModel, y: &HazardModel, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("order grid is empty".into()));
    }
    let sx = x.support();
    let sy = y.support();
    let left = sx.left.max(sy.left);
    let right = sx.right.min(sy.right);
    if left >= right {
        return Err(Error::MixedSupports(sx.left, sy.left));
    }
    for &t in grid {
        if t <= left || t >= right {
            return Err(Error::MixedSupports(sx.left, sy.left));
        }
    }
    Ok(())
}

fn order_values(m: &HazardModel, kind: OrderKind, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter()
        .map(|&t| match kind {
            OrderKind::Fr => m.hazard(t),
            OrderKind::St => cumulative_hazard(m, t),
            OrderKind::Afr => afr(m, t),
            OrderKind::Gfr => gfr(m, t),
            OrderKind::Hfr => hfr(m, t)?.expect_finite(),
            OrderKind::Ai => ai(m, t),
            OrderKind::Gai => gai(m, t),
            OrderKind::Hai => hai(m, t)?.expect_finite(),
            OrderKind::Af => unreachable!("AF is handled by ratio monotonicity"),
        })
        .collect()
}

/// Check one order between two models over a common grid.
pub fn check_order(
    x: &HazardModel,
    y: &HazardModel,
    kind: OrderKind,
    grid: &[f64],
    tol: f64,
) -> Result<OrderReport> {
    check_common_grid(x, y, grid)?;
    if kind == OrderKind::Af {
        return check_af(x, y, grid, tol);
    }
    let vx = order_values(x, kind, grid)?;
    let vy = order_values(y, kind, grid)?;
    let mut witness_xy = None;
    let mut witness_yx = None;
    for i in 0..grid.len() {
        let slack = tol * vx[i].abs().max(vy[i].abs()).max(1e-12);
        if witness_xy.is_none() && vx[i] < vy[i] - slack {
            witness_xy = Some(grid[i]);
        }
        if witness_yx.is_none() && vy[i] < vx[i] - slack {
            witness_yx = Some(grid[i]);
        }
    }
    let direction = match (witness_xy.is_none(), witness_yx.is_none()) {
        (true, true) => Direction::Both,
        (true, false) => Direction::XleY,
        (false, true) => Direction::YleX,
        (false, false) => Direction::Neither,
    };
    Ok(OrderReport {
        kind,
        direction,
        witness_x_le_y: witness_xy,
        witness_y_le_x: witness_yx,
        grid: grid.to_vec(),
    })
}

/// AF order: the hazard ratio r_X/r_Y must be monotone across the grid.
/// A ratio that is constant within tolerance counts for both directions.
fn check_af(x: &HazardModel, y: &HazardModel, grid: &[f64], tol: f64) -> Result<OrderReport> {
    let ratio: Result<Vec<f64>> = grid
        .iter()
        .map(|&t| Ok(x.hazard(t)? / y.hazard(t)?))
        .collect();
    let ratio = ratio?;
    let scale = ratio
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let theta = tol * scale;
    // A definite downward step breaks "nondecreasing" (X ≤ Y side); a
    // definite upward step breaks "nonincreasing" (Y ≤ X side).
    let mut witness_xy = None;
    let mut witness_yx = None;
    for (i, w) in ratio.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d < -theta && witness_xy.is_none() {
            witness_xy = Some(grid[i + 1]);
        }
        if d > theta && witness_yx.is_none() {
            witness_yx = Some(grid[i + 1]);
        }
    }
    let direction = match (witness_xy.is_none(), witness_yx.is_none()) {
        (true, true) => Direction::Both,
        (true, false) => Direction::XleY,
        (false, true) => Direction::YleX,
        (false, false) => Direction::Neither,
    };
    Ok(OrderReport {
        kind: OrderKind::Af,
        direction,
        witness_x_le_y: witness_xy,
        witness_y_le_x: witness_yx,
        grid: grid.to_vec(),
    })
}

/// One implication between order verdicts.
#[derive(Debug, Clone)]
pub struct ImplicationCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Grid time at which the implied order fails, when it does.
    pub witness: Option<f64>,
}

/// Report of [`verify_implications`].
#[derive(Debug, Clone)]
pub struct ImplicationReport {
    pub checks: Vec<ImplicationCheck>,
}

impl ImplicationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        let items: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let w = c.witness.map(fmt12).unwrap_or_else(|| "null".to_string());
                format!(
                    "{{\"name\":\"{}\",\"holds\":{},\"witness\":{}}}",
                    c.name, c.holds, w
                )
            })
            .collect();
        format!("[{}]", items.join(","))
    }
}

/// Premise orders (FR, AF) compare pointwise functions whose grid samples
/// can miss a crossing between the support left endpoint and the first grid
/// point — the mean-rate conclusions integrate over exactly that region.
/// Harden the premise grid with dyadic points approaching the endpoint.
fn premise_grid(left: f64, grid: &[f64]) -> Vec<f64> {
    let mut g = grid.to_vec();
    let g0 = grid[0];
    for k in 1..=20 {
        let t = left + (g0 - left) * 2.0_f64.powi(-k);
        if t > left && t < g0 {
            g.push(t);
        }
    }
    g.sort_by(|a, b| a.partial_cmp(b).unwrap());
    g.dedup();
    g
}

/// Downgrade a pointwise-hazard verdict using the limiting rates at the
/// common left endpoint (`None` = the rate blows up there).
fn refine_fr_with_limits(
    x: &HazardModel,
    y: &HazardModel,
    mut r: OrderReport,
    tol: f64,
) -> OrderReport {
    let left = x.support().left.max(y.support().left);
    let lx = if x.support().left == left {
        x.rate_left_limit()
    } else {
        x.hazard(left).ok()
    };
    let ly = if y.support().left == left {
        y.rate_left_limit()
    } else {
        y.hazard(left).ok()
    };
    let lx = lx.unwrap_or(f64::INFINITY);
    let ly = ly.unwrap_or(f64::INFINITY);
    if lx.is_infinite() && ly.is_infinite() {
        return r;
    }
    let slack = tol * lx.max(ly).max(1e-12);
    let xy_at_edge = lx >= ly - slack;
    let yx_at_edge = ly >= lx - slack;
    if !xy_at_edge && r.witness_x_le_y.is_none() {
        r.witness_x_le_y = Some(left);
    }
    if !yx_at_edge && r.witness_y_le_x.is_none() {
        r.witness_y_le_x = Some(left);
    }
    r.direction = match (r.witness_x_le_y.is_none(), r.witness_y_le_x.is_none()) {
        (true, true) => Direction::Both,
        (true, false) => Direction::XleY,
        (false, true) => Direction::YleX,
        (false, false) => Direction::Neither,
    };
    r
}

fn implied(
    name: &'static str,
    premise: &OrderReport,
    conclusion: &OrderReport,
) -> ImplicationCheck {
    for side in [Direction::XleY, Direction::YleX] {
        if premise.direction.covers(side) && !conclusion.direction.covers(side) {
            let witness = match side {
                Direction::XleY => conclusion.witness_x_le_y,
                _ => conclusion.witness_y_le_x,
            };
            return ImplicationCheck {
                name,
                holds: false,
                witness,
            };
        }
    }
    ImplicationCheck {
        name,
        holds: true,
        witness: None,
    }
}

/// Verify the implication lattice for one pair: FR ⇒ {AFR, GFR, HFR},
/// AF ⇒ GAI, and AFR ⇔ ST (verdicts must agree in both directions).
///
/// The FR and AF premises are evaluated on the grid extended with dyadic
/// points toward the support left endpoint (plus a limiting-rate comparison
/// at the endpoint itself), so a hazard crossing below the first grid point
/// does not produce a spurious premise. When the harmonic mean diverges on
/// the grid, the FR ⇒ HFR leg is skipped (recorded as holding vacuously).
pub fn verify_implications(
    x: &HazardModel,
    y: &HazardModel,
    grid: &[f64],
    tol: f64,
) -> Result<ImplicationReport> {
    check_common_grid(x, y, grid)?;
    let left = x.support().left.max(y.support().left);
    let premise_pts = premise_grid(left, grid);
    let fr = refine_fr_with_limits(
        x,
        y,
        check_order(x, y, OrderKind::Fr, &premise_pts, tol)?,
        tol,
    );
    let af = check_order(x, y, OrderKind::Af, &premise_pts, tol)?;
    let afr_r = check_order(x, y, OrderKind::Afr, grid, tol)?;
    let gfr_r = check_order(x, y, OrderKind::Gfr, grid, tol)?;
    let gai_r = check_order(x, y, OrderKind::Gai, grid, tol)?;
    let st_r = check_order(x, y, OrderKind::St, grid, tol)?;
    let hfr_r = match check_order(x, y, OrderKind::Hfr, grid, tol) {
        Ok(r) => Some(r),
        Err(Error::DivergentFunctional) => None,
        Err(e) => return Err(e),
    };

    let mut checks = vec![
        implied("FR=>AFR", &fr, &afr_r),
        implied("FR=>GFR", &fr, &gfr_r),
    ];
    if let Some(h) = &hfr_r {
        checks.push(implied("FR=>HFR", &fr, h));
    } else {
        checks.push(ImplicationCheck {
            name: "FR=>HFR",
            holds: true,
            witness: None,
        });
    }
    checks.push(implied("AF=>GAI", &af, &gai_r));

    let equiv_ok = afr_r.direction == st_r.direction;
    let witness = if equiv_ok {
        None
    } else {
        afr_r
            .witness_x_le_y
            .or(st_r.witness_x_le_y)
            .or(afr_r.witness_y_le_x)
            .or(st_r.witness_y_le_x)
    };
    checks.push(ImplicationCheck {
        name: "AFR<=>ST",
        holds: equiv_ok,
        witness,
    });

    Ok(ImplicationReport { checks })
}
