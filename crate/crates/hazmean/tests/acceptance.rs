//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! Criterion 10a is currently red: the interior-quantile evaluation this
//! pipeline (deliberately) uses does not reproduce the boundary-driven bias
//! sign pattern it asserts; see the comment on that test.

use std::sync::OnceLock;
use std::time::Instant;

use hazmean::catalog::{
    random_model_with_grid, random_monotone_model, random_proportional_pair, random_series_system,
    random_zero_left_model,
};
use hazmean::classify::model_bounds;
use hazmean::estimate::{estimated_profile, kernel_hazard_on_grid, Bandwidth, SurvivalSample};
use hazmean::functionals::{
    gfr, hfr, interval_gm, interval_hm, profile, residual, IntervalSpec, MeanValue, ProfileOptions,
};
use hazmean::grid::{linear_grid, log_grid};
use hazmean::model::{Functional, HazardModel, Oracle};
use hazmean::orders::{check_order, verify_implications, Direction, OrderKind, ORDER_TOL};
use hazmean::simstudy::{run_study, sample_weibull, SimConfig, SimReport};
use hazmean::systems::{series, verify_series_bounds, BOUND_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Catalog fixtures with grids for criteria 1–3.
fn oracle_fixtures() -> Vec<(&'static str, HazardModel, Vec<f64>)> {
    vec![
        (
            "exponential",
            HazardModel::exponential(1.0).unwrap(),
            log_grid(0.05, 5.0, 64).unwrap(),
        ),
        (
            "weibull",
            HazardModel::weibull(0.5, 1.5).unwrap(),
            log_grid(0.05, 5.0, 64).unwrap(),
        ),
        (
            "erlang-like",
            HazardModel::erlang_like(1.0).unwrap(),
            log_grid(0.05, 5.0, 64).unwrap(),
        ),
        (
            "uniform",
            HazardModel::uniform(0.0, 2.0).unwrap(),
            linear_grid(0.04, 1.96, 64),
        ),
        (
            "rayleigh",
            HazardModel::rayleigh(1.0, 1.0).unwrap(),
            log_grid(0.05, 5.0, 64).unwrap(),
        ),
        (
            "pareto",
            HazardModel::pareto(2.0, 1.0).unwrap(),
            log_grid(1.04, 8.0, 64).unwrap(),
        ),
        (
            "trunc-log-weibull",
            HazardModel::truncated_log_weibull(0.0, 1.0).unwrap(),
            log_grid(0.05, 5.0, 64).unwrap(),
        ),
    ]
}

#[test]
fn c01_oracle_agreement() {
    let started = Instant::now();
    let mut max_err: f64 = 0.0;
    let mut checks = 0usize;
    for (name, model, grid) in oracle_fixtures() {
        let p = profile(&model, &grid, &ProfileOptions::default()).unwrap();
        for (i, &t) in grid.iter().enumerate() {
            for f in Functional::ALL {
                let numeric = match f {
                    Functional::Afr => p.afr[i],
                    Functional::Gfr => p.gfr[i],
                    Functional::Hfr => p.hfr[i],
                    Functional::Ai => p.ai[i],
                    Functional::Gai => p.gai[i],
                    Functional::Hai => p.hai[i],
                };
                match model.closed_form(f, t).unwrap() {
                    Oracle::Value(v) => {
                        let e = rel_err(numeric, v);
                        assert!(
                            e <= 1e-6,
                            "{name} {} at t={t}: numeric {numeric} vs closed {v} (rel {e:.3e})",
                            f.name()
                        );
                        max_err = max_err.max(e);
                        checks += 1;
                    }
                    Oracle::Divergent => {
                        assert!(
                            p.flags[i].divergent,
                            "{name} {} at t={t}: oracle divergent but numeric finite",
                            f.name()
                        );
                    }
                    Oracle::Unavailable => {}
                }
            }
        }
        if name == "trunc-log-weibull" {
            // Geometric-mean identity G(t) = sqrt(r(t) r(0)) with the
            // left-endpoint limit r(0) = (1/b)e^(-a/b).
            let r0 = model.rate_left_limit().unwrap();
            for &t in &grid {
                let g = gfr(&model, t).unwrap();
                let want = (model.hazard(t).unwrap() * r0).sqrt();
                assert!(rel_err(g, want) <= 1e-6, "identity off at t={t}");
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = elapsed < 5.0;
    report(
        "criterion 01 oracle-agreement",
        pass,
        &format!("{checks} comparisons, max rel err {max_err:.2e}, {elapsed:.2}s"),
    );
    assert!(pass, "runtime {elapsed:.2}s exceeds the 5 s budget");
}

#[test]
fn c02_weibull_constants() {
    let grid = log_grid(0.05, 5.0, 64).unwrap();
    let mut max_dev: f64 = 0.0;
    for &beta in &[0.5, 1.0, 1.5] {
        let m = HazardModel::weibull(0.5, beta).unwrap();
        let p = profile(&m, &grid, &ProfileOptions::default()).unwrap();
        for i in 0..p.len() {
            max_dev = max_dev.max(rel_err(p.ai[i], beta));
            max_dev = max_dev.max(rel_err(p.gai[i], (beta - 1.0).exp()));
        }
    }
    for &beta in &[0.6, 1.5] {
        let m = HazardModel::weibull(1.3, beta).unwrap();
        let p = profile(&m, &grid, &ProfileOptions::default()).unwrap();
        for i in 0..p.len() {
            max_dev = max_dev.max(rel_err(p.hai[i], 1.0 / (2.0 - beta)));
        }
    }
    assert!(max_dev <= 1e-6, "max deviation {max_dev:.3e}");
    // Shape 2 reports a divergent harmonic family.
    let m = HazardModel::weibull(0.5, 2.0).unwrap();
    for &t in &[0.3, 1.0, 4.0] {
        assert!(
            hfr(&m, t).unwrap().is_divergent(),
            "hfr finite at t={t} for shape 2"
        );
    }
    report(
        "criterion 02 weibull-constants",
        true,
        &format!("max deviation {max_dev:.2e}; shape 2 divergent"),
    );
}

#[test]
fn c03_intensity_sides_of_one() {
    let tol = 1e-7;
    for (name, model, grid) in oracle_fixtures() {
        let p = profile(&model, &grid, &ProfileOptions::default()).unwrap();
        match name {
            "erlang-like" | "rayleigh" | "uniform" => {
                let min_gai = p.gai.iter().cloned().fold(f64::INFINITY, f64::min);
                let min_hai = p.hai.iter().cloned().fold(f64::INFINITY, f64::min);
                assert!(min_gai >= 1.0 - tol, "{name}: min gai {min_gai}");
                assert!(min_hai >= 1.0 - tol, "{name}: min hai {min_hai}");
            }
            "pareto" => {
                let max_gai = p.gai.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let max_hai = p.hai.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                assert!(max_gai <= 1.0 + tol, "pareto: max gai {max_gai}");
                assert!(max_hai <= 1.0 + tol, "pareto: max hai {max_hai}");
            }
            _ => {}
        }
    }
    report(
        "criterion 03 monotone-rate-intensity-test",
        true,
        "IFR >= 1-1e-7, DFR <= 1+1e-7",
    );
}

#[test]
fn c04_intensity_chain_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let mut rows = 0usize;
    for trial in 0..100 {
        let (m, grid) = random_model_with_grid(&mut rng, 32);
        let bounds = model_bounds(&m, &grid, 1e-7).unwrap();
        assert!(bounds.all_ok(), "trial {trial}: chain violated for {m:?}");
        let p = profile(&m, &grid, &ProfileOptions::default()).unwrap();
        for i in 0..p.len() {
            if !p.flags[i].divergent {
                assert!(
                    p.hfr[i] <= p.gfr[i] * (1.0 + 1e-7),
                    "trial {trial} row {i}: H > G"
                );
            }
            assert!(
                p.gfr[i] <= p.afr[i] * (1.0 + 1e-7),
                "trial {trial} row {i}: G > A"
            );
            rows += 1;
        }
    }
    report(
        "criterion 04 chain-and-mean-ordering",
        true,
        &format!("100 models, {rows} rows, zero violations"),
    );
}

#[test]
fn c05_interval_mean_theorems() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let slack = 1e-9;
    for trial in 0..50 {
        let (m, increasing) = random_monotone_model(&mut rng);
        let left = m.support().left;
        for _ in 0..20 {
            let s = left + rand::Rng::random_range(&mut rng, 0.05..2.0);
            let t = rand::Rng::random_range(&mut rng, 0.05..2.0);
            let iv = IntervalSpec::new(s, t).unwrap();
            let gm = interval_gm(&m, &iv).unwrap();
            let hm = interval_hm(&m, &iv).unwrap().expect_finite().unwrap();
            let h_s = m.hazard(s).unwrap();
            let h_st = m.hazard(s + t).unwrap();
            let (lo, hi) = if increasing { (h_s, h_st) } else { (h_st, h_s) };
            for (label, v) in [("gm", gm), ("hm", hm)] {
                assert!(
                    v >= lo * (1.0 - slack) - 1e-12 && v <= hi * (1.0 + slack) + 1e-12,
                    "trial {trial}: {label} {v} outside [{lo}, {hi}] for {m:?} at (s={s}, t={t})"
                );
            }
            // The interval means themselves keep the harmonic-geometric-
            // arithmetic ordering.
            let am = hazmean::interval_am(&m, &iv).unwrap();
            assert!(
                hm <= gm * (1.0 + 1e-9) && gm <= am * (1.0 + 1e-9),
                "trial {trial}: hm/gm/am ordering"
            );
        }
        // Monotone in the duration at fixed offset.
        let s = left + 0.5;
        let mut last_gm = f64::NAN;
        let mut last_hm = f64::NAN;
        for &t in &linear_grid(0.1, 2.0, 16) {
            let iv = IntervalSpec::new(s, t).unwrap();
            let gm = interval_gm(&m, &iv).unwrap();
            let hm = interval_hm(&m, &iv).unwrap().expect_finite().unwrap();
            if !last_gm.is_nan() {
                if increasing {
                    assert!(
                        gm >= last_gm * (1.0 - slack),
                        "trial {trial}: gm not nondecreasing"
                    );
                    assert!(
                        hm >= last_hm * (1.0 - slack),
                        "trial {trial}: hm not nondecreasing"
                    );
                } else {
                    assert!(
                        gm <= last_gm * (1.0 + slack),
                        "trial {trial}: gm not nonincreasing"
                    );
                    assert!(
                        hm <= last_hm * (1.0 + slack),
                        "trial {trial}: hm not nonincreasing"
                    );
                }
            }
            last_gm = gm;
            last_hm = hm;
        }
    }
    report(
        "criterion 05 interval-mean-theorems",
        true,
        "50 models x 20 intervals + 16-point trends, zero violations",
    );
}

#[test]
fn c06_residual_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut max_err: f64 = 0.0;
    for _ in 0..20 {
        let m = random_zero_left_model(&mut rng);
        let x = rand::Rng::random_range(&mut rng, 0.3..2.0);
        let t = rand::Rng::random_range(&mut rng, 0.2..2.0);
        let res = residual(&m, x).unwrap();
        let iv = IntervalSpec::new(x, t).unwrap();
        let lhs_g = gfr(&res, t).unwrap();
        let rhs_g = interval_gm(&m, &iv).unwrap();
        max_err = max_err.max(rel_err(lhs_g, rhs_g));
        let lhs_h = hfr(&res, t).unwrap().expect_finite().unwrap();
        let rhs_h = interval_hm(&m, &iv).unwrap().expect_finite().unwrap();
        max_err = max_err.max(rel_err(lhs_h, rhs_h));
    }
    assert!(max_err <= 1e-8, "max rel err {max_err:.3e}");
    report(
        "criterion 06 residual-identities",
        true,
        &format!("20 triples, max rel err {max_err:.2e}"),
    );
}

#[test]
fn c07_series_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let grid = log_grid(0.05, 3.0, 32).unwrap();
    for trial in 0..100 {
        let sys = random_series_system(&mut rng, 5);
        let report = verify_series_bounds(&sys, &grid, BOUND_TOL).unwrap();
        assert!(report.all_ok(), "trial {trial}: bound violated");
        assert!(
            !report.harmonic_skipped,
            "trial {trial}: generator produced divergent component"
        );
    }
    // Identical components achieve the lower bounds with equality.
    for m in [
        HazardModel::exponential(1.3).unwrap(),
        HazardModel::weibull(0.6, 1.4).unwrap(),
        HazardModel::rayleigh(0.5, 2.0).unwrap(),
    ] {
        let n = 3.0;
        let sys = series(vec![m.clone(), m.clone(), m]).unwrap();
        for &t in &[0.4, 1.1, 2.6] {
            let a_sys = hazmean::afr(&sys.composite, t).unwrap();
            let g_sys = gfr(&sys.composite, t).unwrap();
            let h_sys = hfr(&sys.composite, t).unwrap().expect_finite().unwrap();
            let a_i = hazmean::afr(&sys.components[0], t).unwrap();
            let g_i = gfr(&sys.components[0], t).unwrap();
            let h_i = hfr(&sys.components[0], t).unwrap().expect_finite().unwrap();
            assert!(rel_err(a_sys, n * a_i) <= 1e-9);
            assert!(rel_err(g_sys, n * g_i) <= 1e-9);
            assert!(rel_err(h_sys, n * h_i) <= 1e-9);
        }
    }
    report(
        "criterion 07 series-bounds",
        true,
        "100 random systems, zero violations; identical-component equality <= 1e-9",
    );
}

#[test]
fn c08_order_lattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let grid = log_grid(0.05, 3.0, 16).unwrap();
    for trial in 0..200 {
        let x = random_zero_left_model(&mut rng);
        let y = random_zero_left_model(&mut rng);
        let imps = verify_implications(&x, &y, &grid, ORDER_TOL).unwrap();
        assert!(
            imps.all_hold(),
            "trial {trial}: lattice violated for {x:?} vs {y:?}: {imps:?}"
        );
    }
    for trial in 0..20 {
        let (x, y) = random_proportional_pair(&mut rng);
        let left = x.support().left.max(y.support().left);
        let pair_grid: Vec<f64> = grid.iter().map(|&t| left + t).collect();
        let g = check_order(&x, &y, OrderKind::Gai, &pair_grid, ORDER_TOL).unwrap();
        assert_eq!(
            g.direction,
            Direction::Both,
            "trial {trial}: GAI not tied for {x:?} vs {y:?}"
        );
        let h = check_order(&x, &y, OrderKind::Hai, &pair_grid, ORDER_TOL).unwrap();
        assert_eq!(h.direction, Direction::Both, "trial {trial}: HAI not tied");
    }
    report(
        "criterion 08 order-lattice",
        true,
        "200 pairs, zero violations; 20 proportional pairs tie",
    );
}

#[test]
fn c09_estimation_sanity() {
    let times = sample_weibull(1.0, 1.0, 5000, 20240901).unwrap();
    let sample = SurvivalSample::new(times.into_iter().map(|t| (t, true)).collect()).unwrap();
    let mut sorted = sample.times().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| sorted[((sorted.len() - 1) as f64 * p) as usize];
    let grid = linear_grid(q(0.1), q(0.9), 32);
    let est = kernel_hazard_on_grid(&sample, Bandwidth::Auto, &grid).unwrap();
    let p = estimated_profile(&est);
    let mut max_dev: f64 = 0.0;
    for i in 0..p.len() {
        max_dev = max_dev.max((p.ai[i] - 1.0).abs());
        assert!(
            (p.ai[i] - 1.0).abs() <= 0.15,
            "ai {} at t={}",
            p.ai[i],
            p.grid[i]
        );
        assert!(p.hfr[i] <= p.gfr[i] * (1.0 + 1e-12) && p.gfr[i] <= p.afr[i] * (1.0 + 1e-12));
    }
    report(
        "criterion 09 estimation-sanity",
        true,
        &format!("max |ai-1| = {max_dev:.3}; mean ordering holds"),
    );
}

fn study() -> &'static SimReport {
    static STUDY: OnceLock<SimReport> = OnceLock::new();
    STUDY.get_or_init(|| {
        let cfg = SimConfig {
            alpha: 0.5,
            beta: 1.5,
            sample_sizes: (1..=10).map(|k| k * 1000).collect(),
            replications: 100,
            base_seed: 20240613,
            bandwidth: Bandwidth::Auto,
            grid_points: 64,
        };
        let started = Instant::now();
        let report = run_study(&cfg).expect("study at reference settings runs");
        let elapsed = started.elapsed().as_secs_f64();
        println!("[acceptance] simulation study completed in {elapsed:.1}s");
        assert!(elapsed <= 600.0, "study exceeded the 10-minute budget");
        report
    })
}

/// Criterion 10a asserts the sign pattern "HAI negative, all others
/// positive". That pattern comes from evaluating the estimators down to the
/// left data boundary, where a vanishing-at-zero hazard is strongly
/// over-estimated; this pipeline evaluates on the interior [0.1, 0.9]
/// quantile grid instead and measures small negative biases for the mean
/// rates and a positive bias for the harmonic intensity. The assertion is
/// kept as specified and is expected to fail; 10b/10c pass.
#[test]
fn c10a_simulation_bias_signs() {
    let r = study();
    let mut ok = true;
    let mut detail = String::new();
    for cell in &r.cells {
        let want_negative = cell.functional == "HAI";
        let good = if want_negative {
            cell.bias < 0.0
        } else {
            cell.bias > 0.0
        };
        if !good {
            ok = false;
            detail.push_str(&format!(
                "{}@n={} bias {:+.2e}; ",
                cell.functional, cell.n, cell.bias
            ));
        }
    }
    report(
        "criterion 10a simulation-bias-signs",
        ok,
        if ok {
            "signs as asserted"
        } else {
            detail.as_str()
        },
    );
    assert!(ok, "bias signs deviate from the asserted pattern: {detail}");
}

#[test]
fn c10b_failure_rate_bias_dominates() {
    let r = study();
    for &n in &r.config.sample_sizes {
        let hr = r.cell("HR", n).unwrap().bias;
        let gfr_b = r.cell("GFR", n).unwrap().bias;
        let afr_b = r.cell("AFR", n).unwrap().bias;
        assert!(
            hr > gfr_b,
            "n={n}: bias(HR) {hr:.3e} <= bias(GFR) {gfr_b:.3e}"
        );
        assert!(
            hr > afr_b,
            "n={n}: bias(HR) {hr:.3e} <= bias(AFR) {afr_b:.3e}"
        );
    }
    report(
        "criterion 10b hr-bias-dominates",
        true,
        "bias(HR) > bias(GFR), bias(AFR) at every n",
    );
}

#[test]
fn c10c_afr_gfr_bias_comparable() {
    let r = study();
    let n = *r.config.sample_sizes.last().unwrap();
    let afr_b = r.cell("AFR", n).unwrap().bias.abs();
    let gfr_b = r.cell("GFR", n).unwrap().bias.abs();
    let ratio = afr_b.max(gfr_b) / afr_b.min(gfr_b).max(1e-300);
    assert!(ratio <= 2.0, "|bias| ratio {ratio:.2} at n={n}");
    report(
        "criterion 10c afr-gfr-comparable",
        true,
        &format!("|bias| ratio {ratio:.2} at n={n}"),
    );
}

#[test]
fn c10_report_orderings() {
    // Informational, not a gate: the complete orderings depend on
    // replication counts and smoothing internals that are not pinned down.
    let r = study();
    println!(
        "[acceptance] observed bias order (largest first): {}",
        r.bias_order.join(" > ")
    );
    println!(
        "[acceptance] observed mse order  (largest first): {}",
        r.mse_order.join(" > ")
    );
    println!(
        "[acceptance] reference orderings: bias HR>AI>GAI>HAI>HFR>AFR~GFR, mse HAI>HR>GAI>AI>HFR>AFR>GFR"
    );
    report("criterion 10 orderings-reported", true, "informational");
}

#[test]
fn c11_determinism() {
    let cfg = SimConfig {
        alpha: 0.5,
        beta: 1.5,
        sample_sizes: vec![1000],
        replications: 5,
        base_seed: 20240613,
        bandwidth: Bandwidth::Auto,
        grid_points: 32,
    };
    let a = run_study(&cfg).unwrap();
    let b = run_study(&cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_csv(), b.to_csv());
    report("criterion 11 determinism", true, "byte-identical reports");
}

#[test]
fn c04_divergence_flagging_matches_convention() {
    // Companion to criterion 4: rows where the harmonic family diverges are
    // flagged and carry the H=0 / intensity=∞ conventions.
    let m = HazardModel::weibull(1.0, 2.0).unwrap();
    let p = profile(
        &m,
        &log_grid(0.1, 2.0, 8).unwrap(),
        &ProfileOptions::default(),
    )
    .unwrap();
    for i in 0..p.len() {
        assert!(p.flags[i].divergent);
        assert_eq!(p.hfr[i], 0.0);
        assert!(p.hai[i].is_infinite());
    }
    match hfr(&m, 1.0).unwrap() {
        MeanValue::Divergent => {}
        MeanValue::Finite(v) => panic!("expected divergence, got {v}"),
    }
}
