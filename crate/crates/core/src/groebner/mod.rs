//! Groebner bases over Q and the ideal computations built on them.

mod buchberger;
pub mod ideal_ops;
pub mod order;
pub mod points;

pub use buchberger::GroebnerBasis;
pub use ideal_ops::{
    colon_and_eliminate, intersect, local_multiplicity, quotient_by, EliminatedGenerator,
};
pub use order::MonomialOrder;
pub use points::{solve_xy, PointCluster, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}
