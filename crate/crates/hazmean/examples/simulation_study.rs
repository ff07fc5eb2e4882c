//! Monte Carlo bias/MSE study of the functional estimators.
//!
//! Runs a reduced study on Weibull(0.5, 1.5) data and prints the per-size
//! bias and MSE table plus the resulting orderings. Pass `--full` for the
//! full-size study (n = 1000..10000, 100 replications; takes a few minutes
//! in debug builds).

use hazmean::estimate::Bandwidth;
use hazmean::simstudy::{run_study, SimConfig};

fn main() {
    let full = std::env::args().any(|a| a == "--full");
    let cfg = if full {
        SimConfig {
            alpha: 0.5,
            beta: 1.5,
            sample_sizes: (1..=10).map(|k| k * 1000).collect(),
            replications: 100,
            base_seed: 20240613,
            bandwidth: Bandwidth::Auto,
            grid_points: 64,
        }
    } else {
        SimConfig {
            alpha: 0.5,
            beta: 1.5,
            sample_sizes: vec![500, 2000],
            replications: 25,
            base_seed: 20240613,
            bandwidth: Bandwidth::Auto,
            grid_points: 64,
        }
    };
    let report = run_study(&cfg).expect("study runs");
    println!("functional      n        bias          mse");
    for c in &report.cells {
        println!(
            "{:<10} {:>6}  {:>12.3e}  {:>12.3e}",
            c.functional, c.n, c.bias, c.mse
        );
    }
    println!(
        "\nbias order (largest first): {}",
        report.bias_order.join(" > ")
    );
    println!(
        "mse order  (largest first): {}",
        report.mse_order.join(" > ")
    );
    println!(
        "replications: {} attempted, {} failed",
        report.attempted_replications, report.failed_replications
    );
}
