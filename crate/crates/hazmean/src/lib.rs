//! Mean failure rates and aging intensities for lifetime models.
//!
//! A lifetime distribution with hazard rate r(t) can be summarized over
//! `[ℓ, t]` by the arithmetic, geometric, and harmonic means of r and by the
//! ratio of r(t) to each mean (the aging intensities). This crate provides:
//!
//! - a catalog of parametric hazard models with closed-form functionals
//!   ([`model`]),
//! - a numeric engine computing the means, intensities, interval averages,
//!   specific aging factor, and residual-lifetime transforms ([`functionals`]),
//! - aging-class detection and bound checks ([`classify`]),
//! - series-system composition and bound verification ([`systems`]),
//! - pairwise stochastic-order checks with witness reporting ([`orders`]),
//! - kernel hazard estimation from censored samples ([`estimate`]),
//! - a Monte Carlo bias/MSE study of the estimators ([`simstudy`]).
//!
//! Start with the runnable examples (`cargo run --example profile_catalog`)
//! or the `hazmean` binary, which exposes the same capabilities as batch
//! subcommands.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod estimate;
pub mod functionals;
pub mod grid;
pub mod model;
pub mod orders;
pub mod quad;
pub mod simstudy;
pub mod systems;

mod fmtnum;

pub use error::{Error, Result};
pub use functionals::{
    afr, ai, discrete_mean, gai, gfr, hai, hfr, interval_am, interval_gm, interval_hm, profile,
    residual, specific_aging_factor, AgingProfile, DiscreteMeanKind, IntervalSpec, MeanValue,
    ProfileOptions, RowFlags,
};
pub use model::{Functional, HazardModel, Oracle, Support};
