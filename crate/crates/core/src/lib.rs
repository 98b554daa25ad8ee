//! Exact classification of quadratic maps `K^2 -> K^n` up to affine
//! equivalence, over the complex and the real numbers.
//!
//! The crate is layered bottom-up:
//!
//! * [`polycore`] exact rational arithmetic, polynomials, resultants, linear algebra
//! * [`groebner`] Buchberger bases, normal forms, quotient algebras, colon ideals
//! * [`quadmap`] quadratic maps, the affine group action, jacobian minors
//! * [`invariants`] critical scheme, topological degree, self-intersection, orbit dimension
//! * [`orbitdb`] the orbit table, closure poset, degeneration families, identities
//! * [`classifier`] invariant vector to orbit label
//! * [`normalizer`] the Theta pipeline and witnesses
//! * [`cli`] documents, expression parsing and the `qmap` subcommands

pub mod classifier;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod invariants;
pub mod normalizer;
pub mod orbitdb;
pub mod polycore;
pub mod quadmap;

pub use error::{Error, Result};
pub use polycore::{Poly, Rational, UPoly, Var};
pub use quadmap::{AffineMap, AffinePair, Field, QuadMap};
