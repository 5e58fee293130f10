//! Exact arithmetic for probabilistic Stirling numbers of the second kind
//! `S_Y(n, m; x)` and the generalized sums of powers they produce.
//!
//! All values are exact rationals. The only floating point code lives in
//! [`montecarlo`].

pub mod appell;
pub mod cnn;
pub mod combinat;
pub mod difference;
pub mod distributions;
pub mod error;
pub mod gen_stirling;
pub mod montecarlo;
pub mod poly;
pub mod polylog;
pub mod rational;
pub mod series;
pub mod sums;

pub use appell::{AppellSeed, AppellSequence};
pub use cnn::{cnn_alternating, cnn_table, CnNTable};
pub use distributions::{DistributionSpec, MomentSequence, SumMoments};
pub use error::{Error, Result};
pub use gen_stirling::{GenStirlingResult, Path};
pub use montecarlo::SampleEstimate;
pub use poly::Polynomial;
pub use rational::Rational;
pub use series::EGFSeries;
pub use sums::IdentityReport;
