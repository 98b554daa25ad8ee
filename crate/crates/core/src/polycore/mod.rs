//! Exact arithmetic kernel over the rationals.

pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod univariate;

pub use parse::{parse_poly, parse_tuple};
pub use poly::{Monomial, Poly, Var, VarSet, NVARS};
pub use rational::{int, parse_rational, rat, Rational};
pub use resultant::{discriminant, resultant};
pub use univariate::{Bound, UPoly};
