//! Exact continued fractions of polynomial square roots, polynomial Pell
//! equations, elliptic-curve torsion and the classification of Pellian
//! monic quartics over ℤ[x].

pub mod arith;
pub mod classify;
pub mod config;
pub mod contfrac;
pub mod curves;
pub mod pell;
pub mod poly;
pub mod report;
pub mod verify;

pub use arith::{Field, RatFun, Rational};
pub use config::RunConfig;
pub use poly::Poly;
