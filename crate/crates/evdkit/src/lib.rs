//! Extreme-value distribution toolkit: nine Gumbel-type families with
//! densities, quantiles, sampling, moments, maximum-likelihood and
//! probability-weighted-moment fitting, goodness-of-fit statistics,
//! right-tail classification, and a Monte Carlo study harness.

pub mod dataio;
pub mod dist;
pub mod error;
pub mod estimate;
pub mod gof;
pub mod montecarlo;
pub mod optim;
pub mod quad;
pub mod seeding;
pub mod special;
pub mod tails;

pub use dist::{Family, ParamVector, Spec};
pub use error::{Error, Result};
