//! Quasi-periodic solutions of the nonlinear wave equation
//! `v_tt − v_xx + v³ = f(v)` near resonant bifurcation points.
//!
//! The modules follow the construction bottom-up: [`elliptic`] supplies the
//! calibrated cnoidal profile β, [`fourier_field`] the weighted spaces on the
//! torus, [`diophantine`] the small-divisor bounds, [`bifurcation`] the
//! Green operator and the nondegeneracy checks, [`ls_solver`] the
//! Lyapunov–Schmidt solver, and [`cli`] a thin command-line layer.

pub mod bifurcation;
pub mod cli;
pub mod diophantine;
pub mod elliptic;
mod error;
pub mod fourier_field;
pub mod ls_solver;

pub use error::{Error, Result};
