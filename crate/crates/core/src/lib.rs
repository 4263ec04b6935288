//! Numerical laboratory for singular-value functionals of positive compact
//! operators: ζ and heat-kernel curves, Dixmier averages, tail traces,
//! majorization, and the matrix inequalities behind them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod counterexample;
pub mod error;
pub mod functionals;
pub mod grid;
pub mod logspace;
pub mod matrixlab;
pub mod model_io;
pub mod quad;
pub mod series;
pub mod stepfn;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{Curve, LogGrid};
pub use stepfn::{SpectralModel, StepFunction};
