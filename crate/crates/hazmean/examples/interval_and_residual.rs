//! Interval-average rates, the specific aging factor, and residual
//! lifetimes.
//!
//! For a monotone hazard, the interval geometric and harmonic means over
//! [s, s+t] are pinned between the endpoint rates and grow with t; the
//! residual lifetime at age x reproduces them as ordinary means.

use hazmean::functionals::{
    gfr, hfr, interval_am, interval_gm, interval_hm, residual, specific_aging_factor, IntervalSpec,
};
use hazmean::model::HazardModel;

fn main() {
    let m = HazardModel::rayleigh(0.5, 1.0).unwrap();
    let s = 1.0;
    println!("linear hazard 0.5+t, interval means over [s, s+t] at s = {s}:");
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "t", "r(s)", "am", "gm", "hm", "r(s+t)"
    );
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let iv = IntervalSpec::new(s, t).unwrap();
        println!(
            "{:>6.2} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            t,
            m.hazard(s).unwrap(),
            interval_am(&m, &iv).unwrap(),
            interval_gm(&m, &iv).unwrap(),
            interval_hm(&m, &iv).unwrap().finite().unwrap(),
            m.hazard(s + t).unwrap(),
        );
    }

    // Memorylessness: the aging factor is 1 exactly for constant hazards,
    // and at least 1 for increasing ones.
    println!("\nspecific aging factor F̄(t)F̄(s)/F̄(t+s) at t = s = 1:");
    let iv = IntervalSpec::new(1.0, 1.0).unwrap();
    for (name, model) in [
        ("exponential λ=2", HazardModel::exponential(2.0).unwrap()),
        ("weibull α=1 β=2", HazardModel::weibull(1.0, 2.0).unwrap()),
        ("linear hazard 0.5+t", m.clone()),
    ] {
        println!(
            "  {:<20} {:.6}",
            name,
            specific_aging_factor(&model, &iv).unwrap()
        );
    }

    // Residual lifetime at age x: ordinary means of the residual equal the
    // interval means of the original model.
    let x = 1.0;
    let t = 1.5;
    let res = residual(&m, x).unwrap();
    let iv = IntervalSpec::new(x, t).unwrap();
    println!("\nresidual lifetime at age x = {x}:");
    println!(
        "  gfr(residual, t)  = {:.9}   interval gm = {:.9}",
        gfr(&res, t).unwrap(),
        interval_gm(&m, &iv).unwrap()
    );
    println!(
        "  hfr(residual, t)  = {:.9}   interval hm = {:.9}",
        hfr(&res, t).unwrap().finite().unwrap(),
        interval_hm(&m, &iv).unwrap().finite().unwrap()
    );
}
