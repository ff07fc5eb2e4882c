//! Aging-class verdicts for catalog models.
//!
//! For each model, prints the monotonicity verdict of the hazard (FR), the
//! mean rates (AFR/GFR/HFR), and the intensities (AI/GAI/HAI), then checks
//! the intensity bound chain.

use hazmean::classify::{classify, model_bounds, ANALYTIC_TOL};
use hazmean::grid::{linear_grid, log_grid};
use hazmean::model::HazardModel;

fn main() {
    let cases = vec![
        (
            "exponential λ=1",
            HazardModel::exponential(1.0).unwrap(),
            log_grid(0.1, 5.0, 24).unwrap(),
        ),
        (
            "pareto a=2 k=1",
            HazardModel::pareto(2.0, 1.0).unwrap(),
            linear_grid(1.1, 8.0, 24),
        ),
        (
            "uniform on (0,2)",
            HazardModel::uniform(0.0, 2.0).unwrap(),
            linear_grid(0.1, 1.9, 24),
        ),
        (
            "linear hazard 1+t",
            HazardModel::rayleigh(1.0, 1.0).unwrap(),
            log_grid(0.1, 6.0, 24).unwrap(),
        ),
        (
            "erlang-like λ=1",
            HazardModel::erlang_like(1.0).unwrap(),
            log_grid(0.1, 5.0, 24).unwrap(),
        ),
    ];
    for (name, model, grid) in cases {
        println!("== {name}");
        let verdicts = classify(&model, &grid, ANALYTIC_TOL).unwrap();
        for v in &verdicts {
            let witness = v
                .witness
                .map(|(a, b)| format!("  breaks between t={a:.3} and t={b:.3}"))
                .unwrap_or_default();
            println!("  {:<4} {:<13}{witness}", v.target.name(), v.label.name());
        }
        let bounds = model_bounds(&model, &grid, ANALYTIC_TOL).unwrap();
        println!(
            "  intensity bound chain ok at every row: {}\n",
            bounds.all_ok()
        );
    }
}
