//! Statistical laboratory for box-similarity criteria under randomized
//! perturbations.
//!
//! A detector's localization error is modeled as a Gaussian displacement of
//! the predicted box against a fixed reference square. This crate provides:
//!
//! - Monte-Carlo samplers of any criterion's value distribution, with
//!   reproducible parallel seeding and KDE-smoothed density estimates;
//! - closed-form densities and quadrature moments for the criteria that
//!   admit them (same-size squares, horizontal shift);
//! - empirical order-violation rates of the size-adaptive criterion versus
//!   plain overlap ranking;
//! - tie-corrected Kendall rank correlation.

mod model;
mod order;
mod rank;
mod sampler;
mod theory;

pub use model::{ModelError, PerturbationModel, SizeMode};
pub use order::order_violation_rate;
pub use rank::{kendall_tau, TauError};
pub use sampler::{
    expectation_curve, sample_criterion, DistributionSummary, PDF_GRID_POINTS,
};
pub use theory::{
    atom_at_zero, theoretical_moments, theoretical_pdf, Moments, QuadratureError, TheoryError,
    TheoryKind,
};

pub use boxcore::ShiftMode;
