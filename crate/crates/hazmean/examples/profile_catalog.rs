//! Aging profiles for catalog models.
//!
//! Computes the hazard, its three means (arithmetic/geometric/harmonic),
//! and the three aging intensities over a grid, then prints one table per
//! model. The harmonic columns show `-` where the reciprocal-hazard
//! integral diverges.

use hazmean::functionals::{profile, ProfileOptions};
use hazmean::grid::log_grid;
use hazmean::model::HazardModel;

fn main() {
    let models = vec![
        ("exponential λ=1", HazardModel::exponential(1.0).unwrap()),
        (
            "weibull α=0.5 β=1.5",
            HazardModel::weibull(0.5, 1.5).unwrap(),
        ),
        (
            "linear hazard 1+t",
            HazardModel::rayleigh(1.0, 1.0).unwrap(),
        ),
        (
            "weibull α=0.5 β=2 (divergent harmonic family)",
            HazardModel::weibull(0.5, 2.0).unwrap(),
        ),
    ];
    let grid = log_grid(0.1, 4.0, 8).unwrap();
    for (name, model) in models {
        println!("== {name}");
        let p = profile(&model, &grid, &ProfileOptions::default()).unwrap();
        println!(
            "{:>8} {:>9} {:>9} {:>9} {:>9} {:>7} {:>7} {:>7}",
            "t", "r", "afr", "gfr", "hfr", "ai", "gai", "hai"
        );
        for i in 0..p.len() {
            let (hfr, hai) = if p.flags[i].divergent {
                ("-".to_string(), "-".to_string())
            } else {
                (format!("{:.4}", p.hfr[i]), format!("{:.4}", p.hai[i]))
            };
            println!(
                "{:>8.4} {:>9.4} {:>9.4} {:>9.4} {:>9} {:>7.4} {:>7.4} {:>7}",
                p.grid[i], p.rate[i], p.afr[i], p.gfr[i], hfr, p.ai[i], p.gai[i], hai
            );
        }
        println!();
    }

    // The same profile is exportable as CSV or JSON.
    let m = HazardModel::weibull(0.5, 1.5).unwrap();
    let p = profile(
        &m,
        &log_grid(0.1, 2.0, 4).unwrap(),
        &ProfileOptions::default(),
    )
    .unwrap();
    println!("CSV form:\n{}", p.to_csv());
}
