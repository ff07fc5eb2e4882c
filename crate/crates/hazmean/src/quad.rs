//! Adaptive quadrature on finite intervals.
//!
//! The integrands produced by hazard models are smooth except possibly at
//! the left endpoint: logarithms and reciprocals of power-law rates blow up
//! at the start of the support. The integrator grades its mesh geometrically
//! toward the left endpoint (ratio 0.5, 32-segment blocks) and runs adaptive
//! Simpson inside each segment. When asked, it classifies a non-integrable
//! left tail as [`QuadEval::Divergent`] instead of failing: block increments
//! that keep their size (ratio above 0.9 for five consecutive extensions) or
//! a partial value beyond 1e12 mark divergence.

use crate::error::{Error, Result};

/// Default relative tolerance for the functional layer.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

const INITIAL_SEGMENTS: u32 = 32;
const BLOCK_SEGMENTS: u32 = 32;
const MAX_SEGMENTS: usize = 4096;
const PANEL_CAP: usize = 1 << 20;
const MAX_DEPTH: u32 = 48;
const DIVERGENCE_RATIO: f64 = 0.9;
const DIVERGENCE_RUN: usize = 5;
const DIVERGENCE_MAGNITUDE: f64 = 1e12;

/// Integral value together with an accumulated error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Outcome of an integral that is allowed to diverge at the left endpoint.
#[derive(Debug, Clone, Copy)]
pub enum QuadEval {
    Converged(Integral),
    Divergent,
}

/// Integrate `f` over `[lo, hi]`; divergence is reported as a failure.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<Integral> {
    match run(&f, lo, hi, rel_tol, false)? {
        QuadEval::Converged(i) => Ok(i),
        QuadEval::Divergent => Err(Error::QuadratureFailure {
            lo,
            hi,
            reason: "integral diverges".into(),
        }),
    }
}

/// Integrate `f` over `[lo, hi]`, detecting a divergent left tail.
pub fn integrate_div<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<QuadEval> {
    run(&f, lo, hi, rel_tol, true)
}

struct Segment {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    rough: f64,
}

struct Worker<'a, F> {
    f: &'a F,
    lo: f64,
    hi: f64,
    panels: usize,
}

impl<'a, F: Fn(f64) -> f64> Worker<'a, F> {
    fn eval(&self, x: f64) -> Result<f64> {
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::QuadratureFailure {
                lo: self.lo,
                hi: self.hi,
                reason: format!("non-finite integrand value at x = {x}"),
            })
        }
    }

    fn rough(&mut self, a: f64, b: f64) -> Result<Segment> {
        let fa = self.eval(a)?;
        self.rough_with_fa(a, b, fa)
    }

    fn rough_with_fa(&mut self, a: f64, b: f64, fa: f64) -> Result<Segment> {
        let m = 0.5 * (a + b);
        let fm = self.eval(m)?;
        let fb = self.eval(b)?;
        self.panels += 1;
        let rough = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        Ok(Segment {
            a,
            b,
            fa,
            fm,
            fb,
            rough,
        })
    }

    fn refine(&mut self, seg: &Segment, eps_abs: f64, rel_tol: f64) -> Result<(f64, f64)> {
        self.step(
            seg.a, seg.b, seg.fa, seg.fm, seg.fb, seg.rough, eps_abs, rel_tol, 0,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps_abs: f64,
        rel_tol: f64,
        depth: u32,
    ) -> Result<(f64, f64)> {
        if self.panels >= PANEL_CAP {
            return Err(Error::QuadratureFailure {
                lo: self.lo,
                hi: self.hi,
                reason: "panel budget exhausted".into(),
            });
        }
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        self.panels += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let s2 = left + right;
        let diff = s2 - whole;
        let tol = eps_abs.max(rel_tol * s2.abs());
        // Require at least one bisection so symmetric integrands are not
        // accepted off a lucky cancellation.
        if depth >= 1 && diff.abs() <= 15.0 * tol {
            return Ok((s2 + diff / 15.0, diff.abs() / 15.0));
        }
        if depth >= MAX_DEPTH || m <= a || m >= b {
            return Ok((s2, diff.abs()));
        }
        let (vl, el) = self.step(a, m, fa, flm, fm, left, 0.5 * eps_abs, rel_tol, depth + 1)?;
        let (vr, er) = self.step(m, b, fm, frm, fb, right, 0.5 * eps_abs, rel_tol, depth + 1)?;
        Ok((vl + vr, el + er))
    }
}

/// Append up to `count` geometric breakpoints approaching `lo`.
fn extend_breakpoints(bps: &mut Vec<f64>, lo: f64, width: f64, count: u32) {
    for _ in 0..count {
        let m = bps.len() as i32;
        let next = lo + width * 2.0_f64.powi(-m);
        let last = *bps.last().unwrap();
        if next >= last || next <= lo {
            break;
        }
        bps.push(next);
    }
}

fn run<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, rel_tol: f64, detect: bool) -> Result<QuadEval> {
    if !lo.is_finite() || !hi.is_finite() || hi <= lo {
        return Err(Error::InvalidParameter(format!(
            "integration interval [{lo}, {hi}] is not a finite, ordered pair"
        )));
    }
    let width = hi - lo;
    let mut w = Worker {
        f,
        lo,
        hi,
        panels: 0,
    };

    let mut bps = vec![hi];
    extend_breakpoints(&mut bps, lo, width, INITIAL_SEGMENTS);

    let mut segs = Vec::with_capacity(bps.len());
    for i in 0..bps.len() - 1 {
        segs.push(w.rough(bps[i + 1], bps[i])?);
    }
    let scale: f64 = segs
        .iter()
        .map(|s| s.rough.abs())
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    let eps_total = rel_tol * scale;

    let mut value = 0.0;
    let mut err = 0.0;
    let n_init = segs.len() as f64;
    for seg in &segs {
        let eps = eps_total * (0.5 * seg.rough.abs() / scale + 0.5 / n_init);
        let (v, e) = w.refine(seg, eps, rel_tol)?;
        value += v;
        err += e;
    }

    let lowest = *bps.last().unwrap();
    if lowest <= lo {
        return Ok(QuadEval::Converged(Integral { value, error: err }));
    }

    // Regular left endpoint: one adaptive segment closes the mesh.
    let f_lo = (w.f)(lo);
    if f_lo.is_finite() {
        let seg = w.rough_with_fa(lo, lowest, f_lo)?;
        let (v, e) = w.refine(&seg, 0.25 * eps_total, rel_tol)?;
        return Ok(QuadEval::Converged(Integral {
            value: value + v,
            error: err + e,
        }));
    }

    if detect && value.abs() > DIVERGENCE_MAGNITUDE {
        return Ok(QuadEval::Divergent);
    }

    // Singular left endpoint: extend the geometric mesh block by block.
    let mut prev_delta: Option<f64> = None;
    let mut run_len = 0usize;
    loop {
        if bps.len() > MAX_SEGMENTS {
            return Err(Error::QuadratureFailure {
                lo,
                hi,
                reason: "segment budget exhausted near singular endpoint".into(),
            });
        }
        let start = bps.len();
        extend_breakpoints(&mut bps, lo, width, BLOCK_SEGMENTS);
        if bps.len() == start {
            return Err(Error::QuadratureFailure {
                lo,
                hi,
                reason: "mesh cannot approach the singular endpoint any further".into(),
            });
        }
        let mut delta = 0.0;
        let mut delta_err = 0.0;
        for i in start - 1..bps.len() - 1 {
            let seg = w.rough(bps[i + 1], bps[i])?;
            let eps = (eps_total / 512.0).max(rel_tol * seg.rough.abs());
            let (v, e) = w.refine(&seg, eps, rel_tol)?;
            delta += v;
            delta_err += e;
        }
        value += delta;
        err += delta_err;

        if detect && value.abs() > DIVERGENCE_MAGNITUDE {
            return Ok(QuadEval::Divergent);
        }
        if let Some(prev) = prev_delta {
            let same_sign = delta * prev > 0.0;
            let ratio = if prev == 0.0 {
                0.0
            } else {
                (delta / prev).abs()
            };
            if detect && same_sign && ratio > DIVERGENCE_RATIO {
                run_len += 1;
                if run_len >= DIVERGENCE_RUN {
                    return Ok(QuadEval::Divergent);
                }
            } else {
                run_len = 0;
            }
            if delta.abs() <= eps_total && ratio <= DIVERGENCE_RATIO {
                let tail = if ratio < 1.0 {
                    delta.abs() * ratio / (1.0 - ratio)
                } else {
                    delta.abs()
                };
                return Ok(QuadEval::Converged(Integral {
                    value,
                    error: err + tail,
                }));
            }
        } else if delta.abs() <= 0.1 * eps_total {
            return Ok(QuadEval::Converged(Integral {
                value,
                error: err + delta.abs(),
            }));
        }
        prev_delta = Some(delta);
    }
}
