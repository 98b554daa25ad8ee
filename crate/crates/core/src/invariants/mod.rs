//! Invariants of the affine action: critical scheme, topological degree,
//! self-intersection, orbit dimension and the real refinements.

pub mod critical;
pub mod degree;
pub mod orbit;
pub mod real;
pub mod self_intersection;

pub use critical::{critical_scheme, CriticalKind, CriticalReport};
pub use degree::{topological_degree, topological_degree_seeded, Degree, DegreeReport, DEFAULT_DEGREE_SEED};
pub use orbit::{group_dimension, orbit_dimension, stabilizer_dimension};
pub use real::{conic_type, real_signatures, BinaryFormType, ConicType, PencilSignature, RealSignatures};
pub use self_intersection::{
    fold_locus, self_intersection, self_intersection_colon, self_intersection_midpoint, SIReport, SiKind,
};

use crate::polycore::{Poly, Var, NVARS};

/// `p(x, y) -> p(x2, y2)`
pub(crate) fn to_second_copy(p: &Poly) -> Poly {
    let mut subs: [Option<Poly>; NVARS] = Default::default();
    subs[Var::X.index()] = Some(Poly::var(Var::X2));
    subs[Var::Y.index()] = Some(Poly::var(Var::Y2));
    p.compose(&subs)
}
