//! Stochastic-order comparison of two lifetime models.
//!
//! Checks every order kind for a pair, prints directions and witnesses,
//! and verifies the implication lattice (FR ⇒ mean-rate orders, AF ⇒ GAI,
//! AFR ⇔ ST).

use hazmean::grid::log_grid;
use hazmean::model::HazardModel;
use hazmean::orders::{check_order, verify_implications, OrderKind, ORDER_TOL};

fn main() {
    // X has hazard 2t (aging), Y a flat hazard 2; their ratio t is
    // nondecreasing, so X ages faster than Y.
    let x = HazardModel::weibull(1.0, 2.0).unwrap();
    let y = HazardModel::exponential(2.0).unwrap();
    let grid = log_grid(0.1, 5.0, 32).unwrap();

    println!("X: weibull α=1 β=2 (hazard 2t)   Y: exponential λ=2\n");
    for kind in OrderKind::ALL {
        match check_order(&x, &y, kind, &grid, ORDER_TOL) {
            Ok(r) => {
                let mut note = String::new();
                if let Some(t) = r.witness_x_le_y {
                    note.push_str(&format!("  X<=Y fails at t={t:.3}"));
                }
                if let Some(t) = r.witness_y_le_x {
                    note.push_str(&format!("  Y<=X fails at t={t:.3}"));
                }
                println!("  {:<4} {:<8}{note}", kind.name(), r.direction.name());
            }
            Err(e) => println!("  {:<4} skipped: {e}", kind.name()),
        }
    }

    let imps = verify_implications(&x, &y, &grid, ORDER_TOL).unwrap();
    println!("\nimplication lattice:");
    for c in &imps.checks {
        println!(
            "  {:<9} {}",
            c.name,
            if c.holds { "holds" } else { "VIOLATED" }
        );
    }

    // Proportional hazards tie the intensity orders in both directions.
    let a = HazardModel::weibull(2.0, 1.5).unwrap();
    let b = HazardModel::weibull(1.0, 1.5).unwrap();
    let g = check_order(&a, &b, OrderKind::Gai, &grid, ORDER_TOL).unwrap();
    println!(
        "\nproportional pair weibull(2,1.5) vs weibull(1,1.5): GAI direction = {}",
        g.direction.name()
    );
}
