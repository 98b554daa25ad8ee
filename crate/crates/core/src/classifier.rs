//! Invariant vector to orbit label.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    critical_scheme, orbit_dimension, real_signatures, self_intersection_colon, topological_degree_seeded, CriticalKind,
    Degree, DegreeReport, RealSignatures, DEFAULT_DEGREE_SEED,
};
use crate::orbitdb::{lookup, records, CriticalSignature, OrbitBase, OrbitLabel, OrbitRecord, RealKey};
use crate::polycore::linalg::rref_with_transform;
use crate::polycore::Rational;
use crate::quadmap::{AffineMap, AffinePair, Field, QuadMap};

/// Target dimension after dropping redundant components.
pub fn reduced_ambient(n: usize, dim_a: usize) -> usize {
    if n < 3 {
        n
    } else {
        dim_a.max(3)
    }
}

/// A target change `L` with `L ∘ F = (G, 0, ..., 0)`, where `G` has
/// `max(3, dim_a)` components (or `n` when `n < 3`). Maps whose
/// nonconstant parts are independent come back unchanged.
pub fn reduce_ambient(f: &QuadMap) -> (QuadMap, AffinePair) {
    let n = f.n();
    let rows = f.coeff_matrix();
    let lin: Vec<Vec<Rational>> = rows.iter().map(|r| r[..5].to_vec()).collect();
    let (_, pivots, t) = rref_with_transform(&lin);
    let rank = pivots.len();
    if rank == n {
        return (f.clone(), AffinePair::identity(n));
    }
    let consts: Vec<Rational> = rows.iter().map(|r| r[5].clone()).collect();
    let shift = (0..n)
        .map(|i| {
            if i < rank {
                Rational::zero()
            } else {
                -t[i].iter().zip(&consts).map(|(a, b)| a * b).sum::<Rational>()
            }
        })
        .collect();
    let l = AffineMap::new(t, shift).expect("row reduction transforms are invertible");
    let pair = AffinePair { target: l, source: AffineMap::identity(2) };
    let full = pair.act(f).expect("dimensions agree");
    let m = reduced_ambient(n, rank);
    let g = QuadMap::new(f.field(), full.components()[..m].to_vec()).expect("a truncation stays quadratic");
    (g, pair)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantVector {
    pub dim_a: usize,
    pub dim_q: usize,
    pub mu: Degree,
    pub critical: CriticalSignature,
    /// Factor `(degree, multiplicity)` pairs of the self-intersection, when `mu = 1`.
    pub si_signature: Option<Vec<(u32, usize)>>,
    /// Target dimension after [`reduce_ambient`].
    pub reduced_n: usize,
    pub reduced_orbit_dimension: usize,
    /// Orbit dimension in the original target.
    pub orbit_dimension: usize,
    pub real: Option<RealSignatures>,
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(dim_a={}, dim_q={}, mu={}, critical={:?}, si={:?}, n_r={}, orbit_dim={})",
            self.dim_a, self.dim_q, self.mu, self.critical, self.si_signature, self.reduced_n, self.reduced_orbit_dimension
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub label: OrbitLabel,
    pub invariants: InvariantVector,
    /// `None` below `K^3`, where the grouping into types is not tabulated.
    pub topological_type: Option<u8>,
    pub expected_orbit_dim: usize,
    pub orbit_dim_formula: String,
}

pub fn critical_signature(f: &QuadMap) -> CriticalSignature {
    let c = critical_scheme(f);
    match c.kind {
        CriticalKind::Empty => CriticalSignature::Empty,
        CriticalKind::Finite => CriticalSignature::Finite(c.partition()),
        CriticalKind::Curve => CriticalSignature::Curve(c.curve_degree().unwrap_or(0)),
        CriticalKind::Plane => CriticalSignature::Plane,
    }
}

/// Degree samples that all landed on the generic locus. A disagreement means
/// some base point was special, so a fresh set of seven is drawn from `seed + k`.
pub fn generic_degree(f: &QuadMap, seed: u64) -> Result<DegreeReport> {
    let mut last = None;
    for k in 0..DEGREE_RETRIES {
        match topological_degree_seeded(f, seed.wrapping_add(k)) {
            Ok(r) => return Ok(r),
            Err(e @ Error::DegreeSamplesDisagree(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

const DEGREE_RETRIES: u64 = 3;

/// Every entry of the invariant vector, computed on the reduced map.
pub fn invariant_vector(f: &QuadMap) -> Result<InvariantVector> {
    let (g, _) = reduce_ambient(f);
    let mu = generic_degree(&g, DEFAULT_DEGREE_SEED)?.value;
    let si_signature = match mu {
        Degree::Finite(1) => Some(self_intersection_colon(&g)?.signature()),
        _ => None,
    };
    let real = match f.field() {
        Field::Real => Some(real_signatures(&g)?),
        Field::Complex => None,
    };
    Ok(InvariantVector {
        dim_a: g.dim_affine(),
        dim_q: g.dim_quadratic(),
        mu,
        critical: critical_signature(&g),
        si_signature,
        reduced_n: g.n(),
        reduced_orbit_dimension: orbit_dimension(&g),
        orbit_dimension: orbit_dimension(f),
        real,
    })
}

fn fits(r: &OrbitRecord, n: usize) -> bool {
    r.minimal_n.max(r.label.min_series_ambient()) <= n
}

fn matches(r: &OrbitRecord, v: &InvariantVector) -> bool {
    r.dim_a == v.dim_a
        && r.dim_q == v.dim_q
        && r.mu == v.mu
        && r.critical == v.critical
        && r.si_signature == v.si_signature
        && r.orbit_dim_at(v.reduced_n) == v.reduced_orbit_dimension
}

fn real_key_holds(key: RealKey, s: &RealSignatures) -> bool {
    match key {
        RealKey::RealCriticalPoints(k) => s.real_critical_count == Some(k),
        RealKey::CriticalConic(c) => s.conic_type == Some(c),
        RealKey::QuadraticForm(b) => s.binary_form_type == Some(b),
        RealKey::QuadraticPencil(p) => s.pencil_signature == Some(p),
    }
}

fn resolve(v: &InvariantVector) -> Result<OrbitBase> {
    let found: Vec<&OrbitRecord> =
        records().iter().filter(|r| !r.label.primed && fits(r, v.reduced_n) && matches(r, v)).collect();
    let [rec] = found[..] else {
        let names: Vec<String> = found.iter().map(|r| r.label.to_string()).collect();
        return Err(Error::Unclassifiable(format!("{} (candidates: [{}])", v, names.join(", "))));
    };
    let Some(real) = &v.real else {
        return Ok(rec.label);
    };
    if !rec.label.has_real_twin() {
        return Ok(rec.label);
    }
    let twin = lookup(rec.label.prime())?;
    let hits: Vec<OrbitBase> = [rec, twin]
        .into_iter()
        .filter(|r| r.real_key.is_some_and(|k| real_key_holds(k, real)))
        .map(|r| r.label)
        .collect();
    match hits[..] {
        [b] => Ok(b),
        _ => Err(Error::Unclassifiable(format!("{} with real signatures {:?}", rec.label, real))),
    }
}

pub fn classify(f: &QuadMap) -> Result<ClassificationReport> {
    let invariants = invariant_vector(f)?;
    let base = resolve(&invariants)?;
    let label = OrbitLabel::new(base, f.n(), f.field())?;
    let rec = lookup(base)?;
    let expected = expected_orbit_dim(&label)?;
    if expected != invariants.orbit_dimension {
        return Err(Error::Inconsistent(format!(
            "{} in K^{} should have orbit dimension {}, found {}",
            base,
            f.n(),
            expected,
            invariants.orbit_dimension
        )));
    }
    Ok(ClassificationReport {
        label,
        invariants,
        topological_type: topological_type(&label)?,
        expected_orbit_dim: expected,
        orbit_dim_formula: rec.orbit_dim_formula(),
    })
}

pub fn topological_type(label: &OrbitLabel) -> Result<Option<u8>> {
    let rec = lookup(label.base)?;
    Ok(if label.ambient_n < 3 { None } else { rec.topological_type(label.field) })
}

pub fn expected_orbit_dim(label: &OrbitLabel) -> Result<usize> {
    Ok(lookup(label.base)?.orbit_dim_at(label.ambient_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_tuple;
    use crate::quadmap::map_from_ints;
    use rand::SeedableRng;

    fn map(field: Field, s: &str) -> QuadMap {
        QuadMap::new(field, parse_tuple(s).unwrap()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = map(Field::Complex, "x+y, 2x+2y, 0");
        let (g, w) = reduce_ambient(&f);
        assert_eq!(g, map(Field::Complex, "x+y, 0, 0"));
        assert_eq!(w.act(&f).unwrap(), g.embed(3));
        let f1 = map(Field::Complex, "x^2+y, y^2+x, xy");
        assert_eq!(reduce_ambient(&f1), (f1.clone(), AffinePair::identity(3)));
        let g0 = map(Field::Complex, "x^2+1, xy, y^2, x, y, x+y-2, 3x^2-y");
        let (g, w) = reduce_ambient(&g0);
        assert_eq!(g.n(), 5);
        assert_eq!(w.act(&g0).unwrap(), g.embed(7));
    }

    #[test]
    fn anchors() {
        let f2 = map(Field::Complex, "x^2+y, y^2+x, xy+1/2x+1/2y");
        assert_eq!(classify(&f2).unwrap().label.base, OrbitBase::f(2));
        let f1p = "x^2-y^2+x, 2xy-y, -3x^2+y^2";
        assert_eq!(classify(&map(Field::Real, f1p)).unwrap().label.base, OrbitBase::f(1).prime());
        assert_eq!(classify(&map(Field::Complex, f1p)).unwrap().label.base, OrbitBase::f(1));
        assert_eq!(classify(&map(Field::Real, "x^2-y^2, xy, 0")).unwrap().label.base, OrbitBase::f(13).prime());
    }

    #[test]
    fn f10_orbit_is_stable() {
        let f10 = map(Field::Complex, "x^2+y, xy, 0");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let p = AffinePair::random(3, &mut rng, 3);
            assert_eq!(classify(&p.act(&f10).unwrap()).unwrap().label.base, OrbitBase::f(10));
        }
    }

    #[test]
    fn expected_dims() {
        let l = |b, n| OrbitLabel::new(b, n, Field::Complex).unwrap();
        assert_eq!(expected_orbit_dim(&l(OrbitBase::f(7), 3)).unwrap(), 15);
        assert_eq!(expected_orbit_dim(&l(OrbitBase::f(7), 5)).unwrap(), 21);
        assert_eq!(expected_orbit_dim(&l(OrbitBase::g(4), 4)).unwrap(), 21);
        assert_eq!(expected_orbit_dim(&l(OrbitBase::f(29), 3)).unwrap(), 3);
        assert_eq!(topological_type(&l(OrbitBase::f(5), 3)).unwrap(), Some(5));
        assert_eq!(topological_type(&l(OrbitBase::f(8), 3)).unwrap(), Some(5));
        assert_eq!(topological_type(&l(OrbitBase::f(3), 3)).unwrap(), Some(3));
        assert_eq!(topological_type(&l(OrbitBase::f(29), 3)).unwrap(), Some(18));
    }

    #[test]
    fn constant_and_linear_maps() {
        let z = map_from_ints(Field::Complex, &[[0, 0, 0, 0, 0, 5]]);
        assert_eq!(classify(&z).unwrap().label.base, OrbitBase::f(29));
        let l = map(Field::Real, "x - 1, 2x - y, x + y + 4, y");
        assert_eq!(classify(&l).unwrap().label.base, OrbitBase::f(24));
    }
}
