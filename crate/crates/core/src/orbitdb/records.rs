use std::sync::OnceLock;

use serde::Serialize;

use super::labels::OrbitBase;
use crate::error::{Error, Result};
use crate::invariants::{group_dimension, BinaryFormType, ConicType, Degree, PencilSignature};
use crate::polycore::{parse_poly, parse_tuple, Poly};
use crate::quadmap::{Field, QuadMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(tag = "kind", content = "data", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CriticalSignature {
    Empty,
    /// Point multiplicities, descending.
    Finite(Vec<usize>),
    /// Degree of the gcd of the minors.
    Curve(u32),
    Plane,
}

/// The real invariant separating a complex orbit into its two real orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum RealKey {
    RealCriticalPoints(usize),
    CriticalConic(ConicType),
    QuadraticForm(BinaryFormType),
    QuadraticPencil(PencilSignature),
}

#[derive(Clone, Copy)]
enum Crit {
    Empty,
    Finite(&'static [usize]),
    Curve(u32),
    Plane,
}

struct Entry {
    base: OrbitBase,
    form: &'static str,
    n_min: usize,
    dim_a: usize,
    dim_q: usize,
    mu: Degree,
    crit: Crit,
    si: Option<&'static [(u32, usize)]>,
    si_poly: Option<&'static str>,
    orbit_dim: usize,
    topo_c: Option<u8>,
    topo_r: u8,
    real_key: Option<RealKey>,
}

const INF: Degree = Degree::Infinite;
const ONE: Degree = Degree::Finite(1);
const E: Option<&[(u32, usize)]> = Some(&[]);
const LINE: Option<&[(u32, usize)]> = Some(&[(1, 1)]);

const fn f(i: u8) -> OrbitBase {
    OrbitBase::f(i)
}
const fn g(i: u8) -> OrbitBase {
    OrbitBase::g(i)
}

#[allow(clippy::too_many_arguments)]
const fn e(
    base: OrbitBase,
    form: &'static str,
    n_min: usize,
    dims: (usize, usize),
    mu: Degree,
    crit: Crit,
    si: Option<&'static [(u32, usize)]>,
    orbit_dim: usize,
    topo: (Option<u8>, u8),
) -> Entry {
    Entry {
        base,
        form,
        n_min,
        dim_a: dims.0,
        dim_q: dims.1,
        mu,
        crit,
        si,
        si_poly: None,
        orbit_dim,
        topo_c: topo.0,
        topo_r: topo.1,
        real_key: None,
    }
}

const fn si(mut entry: Entry, p: &'static str) -> Entry {
    entry.si_poly = Some(p);
    entry
}

const fn rk(mut entry: Entry, k: RealKey) -> Entry {
    entry.real_key = Some(k);
    entry
}

use Crit::{Curve, Empty, Finite, Plane};
use RealKey::*;

/// Orbit dimensions are in the reference ambient: `K^3` for the `F` series,
/// `K^4` for `G1..G4` and `K^5` for `G0`.
const ENTRIES: &[Entry] = &[
    rk(si(e(f(1), "x^2+y, y^2+x, xy", 3, (3, 3), ONE, Finite(&[1, 1, 1]), Some(&[(3, 1)]), 18, (Some(1), 1)), "x^3+y^3+3xy-1"), RealCriticalPoints(1)),
    si(e(f(2), "x^2+y, y^2+x, xy+1/2x+1/2y", 3, (3, 3), ONE, Finite(&[2, 1]), Some(&[(1, 1), (1, 2)]), 17, (Some(2), 3)), "(x-y)^2(x+y-1)"),
    si(e(f(3), "x^2, y^2+x, xy", 3, (3, 3), ONE, Finite(&[3]), Some(&[(1, 3)]), 16, (Some(3), 4)), "x^3"),
    e(f(4), "x^2, y^2, xy", 3, (3, 3), Degree::Finite(2), Finite(&[3]), None, 14, (Some(4), 5)),
    si(e(f(5), "x^2, y^2, x+y", 3, (3, 2), ONE, Finite(&[1]), LINE, 17, (Some(5), 6)), "x+y"),
    e(f(6), "x^2+y, y^2, x", 3, (3, 2), ONE, Empty, E, 16, (Some(6), 7)),
    rk(e(f(7), "x^2+y, y^2+x, 0", 2, (2, 2), Degree::Finite(4), Curve(2), None, 15, (Some(7), 8)), CriticalConic(ConicType::Hyperbola)),
    si(e(f(8), "x^2, xy, y", 3, (3, 2), ONE, Finite(&[1]), LINE, 16, (Some(5), 6)), "y"),
    e(f(9), "x^2+y, xy, x", 3, (3, 2), ONE, Empty, E, 15, (Some(6), 7)),
    e(f(10), "x^2+y, xy, 0", 2, (2, 2), Degree::Finite(3), Curve(2), None, 14, (Some(8), 10)),
    si(e(f(11), "x^2, y^2, y", 3, (3, 2), Degree::Finite(2), Curve(1), None, 15, (Some(9), 11)), "x"),
    e(f(12), "x^2+y, y^2, 0", 2, (2, 2), Degree::Finite(4), Curve(2), None, 14, (Some(10), 12)),
    rk(e(f(13), "x^2, y^2, 0", 2, (2, 2), Degree::Finite(4), Curve(2), None, 13, (Some(11), 13)), CriticalConic(ConicType::RealLinePair)),
    e(f(14), "x^2, xy, x", 3, (3, 2), ONE, Curve(1), LINE, 14, (Some(12), 15)),
    e(f(15), "x^2-x, xy, 0", 2, (2, 2), Degree::Finite(2), Curve(2), None, 13, (Some(13), 16)),
    e(f(16), "x^2, xy, 0", 2, (2, 2), Degree::Finite(2), Curve(2), None, 12, (Some(14), 17)),
    rk(e(f(17), "xy, x, y", 3, (3, 1), ONE, Empty, E, 14, (Some(6), 7)), QuadraticForm(BinaryFormType::RealProduct)),
    e(f(18), "x^2, x, y", 3, (3, 1), ONE, Empty, E, 13, (Some(6), 7)),
    rk(e(f(19), "xy, x+y, 0", 2, (2, 1), Degree::Finite(2), Curve(1), None, 13, (Some(9), 11)), QuadraticForm(BinaryFormType::RealProduct)),
    e(f(20), "x, xy, 0", 2, (2, 1), ONE, Curve(1), LINE, 12, (Some(12), 15)),
    e(f(21), "x^2, y, 0", 2, (2, 1), Degree::Finite(2), Curve(1), None, 12, (Some(9), 11)),
    e(f(22), "x^2+y, x, 0", 2, (2, 1), ONE, Empty, E, 11, (Some(6), 7)),
    e(f(23), "x^2, x, 0", 2, (2, 1), INF, Plane, None, 10, (Some(15), 18)),
    e(f(24), "x, y, 0", 2, (2, 0), ONE, Empty, E, 9, (Some(6), 7)),
    rk(e(f(25), "xy, 0, 0", 1, (1, 1), INF, Plane, None, 10, (Some(16), 19)), QuadraticForm(BinaryFormType::RealProduct)),
    e(f(26), "x^2+y, 0, 0", 1, (1, 1), INF, Plane, None, 9, (Some(15), 18)),
    e(f(27), "x^2, 0, 0", 1, (1, 1), INF, Plane, None, 8, (Some(17), 21)),
    e(f(28), "x, 0, 0", 1, (1, 0), INF, Plane, None, 7, (Some(15), 18)),
    e(f(29), "0, 0, 0", 1, (0, 0), INF, Plane, None, 3, (Some(18), 22)),
    e(g(0), "x^2, xy, y^2, x, y", 5, (5, 3), ONE, Empty, E, 30, (Some(6), 7)),
    e(g(1), "x^2+y, y^2, xy, x", 4, (4, 3), ONE, Empty, E, 24, (Some(6), 7)),
    si(e(g(2), "x^2, y^2, xy, x", 4, (4, 3), ONE, Finite(&[1]), LINE, 23, (Some(5), 6)), "x"),
    rk(e(g(3), "x^2, y^2, x, y", 4, (4, 2), ONE, Empty, E, 22, (Some(6), 7)), QuadraticPencil(PencilSignature::TwoRealDegenerate)),
    e(g(4), "x^2, xy, x, y", 4, (4, 2), ONE, Empty, E, 21, (Some(6), 7)),
    rk(e(f(1).prime(), "x^2-y^2+x, 2xy-y, -3x^2+y^2", 3, (3, 3), ONE, Finite(&[1, 1, 1]), Some(&[(3, 1)]), 18, (None, 2)), RealCriticalPoints(3)),
    rk(e(f(7).prime(), "x^2-y^2+x, 2xy-y, 0", 2, (2, 2), Degree::Finite(4), Curve(2), None, 15, (None, 9)), CriticalConic(ConicType::Ellipse)),
    rk(e(f(13).prime(), "x^2-y^2, xy, 0", 2, (2, 2), Degree::Finite(4), Curve(2), None, 13, (None, 14)), CriticalConic(ConicType::ComplexLinePair)),
    rk(e(f(17).prime(), "x^2+y^2, x, y", 3, (3, 1), ONE, Empty, E, 14, (None, 7)), QuadraticForm(BinaryFormType::IrreducibleOverReals)),
    rk(e(f(19).prime(), "x^2+y^2, x, 0", 2, (2, 1), Degree::Finite(2), Curve(1), None, 13, (None, 11)), QuadraticForm(BinaryFormType::IrreducibleOverReals)),
    rk(e(f(25).prime(), "x^2+y^2, 0, 0", 1, (1, 1), INF, Plane, None, 10, (None, 20)), QuadraticForm(BinaryFormType::IrreducibleOverReals)),
    rk(e(g(3).prime(), "x^2-y^2, xy, x, y", 4, (4, 2), ONE, Empty, E, 22, (None, 7)), QuadraticPencil(PencilSignature::NoRealDegenerate)),
];

/// Normal forms in targets `K^1` and `K^2`. These come from the classification
/// of maps into the plane and the line, entered as their own table; a test
/// checks each row against the truncated entry of the main table.
pub const LOW_AMBIENT_TABLE: &[(OrbitBase, usize, &str)] = &[
    (f(7), 2, "x^2+y, y^2+x"),
    (f(10), 2, "x^2+y, xy"),
    (f(12), 2, "x^2+y, y^2"),
    (f(13), 2, "x^2, y^2"),
    (f(15), 2, "x^2-x, xy"),
    (f(16), 2, "x^2, xy"),
    (f(19), 2, "xy, x+y"),
    (f(20), 2, "x, xy"),
    (f(21), 2, "x^2, y"),
    (f(22), 2, "x^2+y, x"),
    (f(23), 2, "x^2, x"),
    (f(24), 2, "x, y"),
    (f(25), 2, "xy, 0"),
    (f(26), 2, "x^2+y, 0"),
    (f(27), 2, "x^2, 0"),
    (f(28), 2, "x, 0"),
    (f(29), 2, "0, 0"),
    (f(7).prime(), 2, "x^2-y^2+x, 2xy-y"),
    (f(13).prime(), 2, "x^2-y^2, xy"),
    (f(19).prime(), 2, "x^2+y^2, x"),
    (f(25).prime(), 2, "x^2+y^2, 0"),
    (f(25), 1, "xy"),
    (f(26), 1, "x^2+y"),
    (f(27), 1, "x^2"),
    (f(28), 1, "x"),
    (f(29), 1, "0"),
    (f(25).prime(), 1, "x^2+y^2"),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub label: OrbitBase,
    #[serde(serialize_with = "ser_map")]
    pub normal_form: QuadMap,
    /// Target dimension of `normal_form` and of `orbit_dim`.
    pub reference_n: usize,
    /// Smallest target the normal form fits in.
    pub minimal_n: usize,
    pub dim_a: usize,
    pub dim_q: usize,
    pub mu: Degree,
    pub critical: CriticalSignature,
    /// `(degree, multiplicity)` of the self-intersection factors, for `mu = 1`.
    pub si_signature: Option<Vec<(u32, usize)>>,
    /// Explicit self-intersection (or, for `mu = 2`, fold) polynomial where known.
    #[serde(serialize_with = "ser_opt_poly")]
    pub si_poly: Option<Poly>,
    pub orbit_dim: usize,
    pub stabilizer_dim: usize,
    pub topological_type_complex: Option<u8>,
    pub topological_type_real: u8,
    pub real_key: Option<RealKey>,
}

fn ser_map<S: serde::Serializer>(m: &QuadMap, s: S) -> std::result::Result<S::Ok, S::Error> {
    let parts: Vec<String> = m.components().iter().map(|p| p.to_string()).collect();
    parts.serialize(s)
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<Poly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.as_ref().map(|p| p.to_string()).serialize(s)
}

impl OrbitRecord {
    fn from_entry(e: &Entry) -> OrbitRecord {
        let field = if e.base.primed { Field::Real } else { Field::Complex };
        let comps = parse_tuple(e.form).expect("table normal forms parse");
        let normal_form = QuadMap::new(field, comps).expect("table normal forms are quadratic");
        let reference_n = normal_form.n();
        let critical = match e.crit {
            Crit::Empty => CriticalSignature::Empty,
            Crit::Finite(p) => CriticalSignature::Finite(p.to_vec()),
            Crit::Curve(d) => CriticalSignature::Curve(d),
            Crit::Plane => CriticalSignature::Plane,
        };
        OrbitRecord {
            label: e.base,
            normal_form,
            reference_n,
            minimal_n: e.n_min,
            dim_a: e.dim_a,
            dim_q: e.dim_q,
            mu: e.mu,
            critical,
            si_signature: e.si.map(|s| s.to_vec()),
            si_poly: e.si_poly.map(|s| parse_poly(s).expect("table polynomials parse")),
            orbit_dim: e.orbit_dim,
            stabilizer_dim: group_dimension(reference_n) - e.orbit_dim,
            topological_type_complex: e.topo_c,
            topological_type_real: e.topo_r,
            real_key: e.real_key,
        }
    }

    /// Orbit dimension in `K^n`, growing by `1 + dim_a` per target dimension.
    pub fn orbit_dim_at(&self, n: usize) -> usize {
        let step = 1 + self.dim_a as i64;
        (self.orbit_dim as i64 + step * (n as i64 - self.reference_n as i64)) as usize
    }

    /// The closed form `(1 + dim_a) n + c` as text.
    pub fn orbit_dim_formula(&self) -> String {
        let step = 1 + self.dim_a as i64;
        let c = self.orbit_dim as i64 - step * self.reference_n as i64;
        let lead = if step == 1 { "n".to_string() } else { format!("{}n", step) };
        match c {
            0 => lead,
            c if c > 0 => format!("{}+{}", lead, c),
            c => format!("{}{}", lead, c),
        }
    }

    /// The normal form composed with the standard inclusion into (or truncated to) `K^n`.
    pub fn normal_form_at(&self, n: usize) -> Result<QuadMap> {
        if n < self.minimal_n.max(self.label.min_series_ambient()) {
            return Err(Error::DimensionMismatch(format!("{} does not fit in K^{}", self.label, n)));
        }
        if n >= self.reference_n {
            return Ok(self.normal_form.embed(n));
        }
        let comps = self.normal_form.components()[..n].to_vec();
        QuadMap::new(self.normal_form.field(), comps)
    }

    pub fn topological_type(&self, field: Field) -> Option<u8> {
        match field {
            Field::Complex => self.topological_type_complex,
            Field::Real => Some(self.topological_type_real),
        }
    }
}

pub fn records() -> &'static [OrbitRecord] {
    static RECORDS: OnceLock<Vec<OrbitRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| ENTRIES.iter().map(OrbitRecord::from_entry).collect())
}

pub fn lookup(base: OrbitBase) -> Result<&'static OrbitRecord> {
    records()
        .iter()
        .find(|r| r.label == base)
        .ok_or_else(|| Error::UnknownLabel(base.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Var;

    #[test]
    fn one_record_per_label() {
        let labels: Vec<OrbitBase> = records().iter().map(|r| r.label).collect();
        assert_eq!(labels, OrbitBase::real());
    }

    #[test]
    fn lookups() {
        let f12 = lookup(OrbitBase::f(12)).unwrap();
        assert_eq!(f12.mu, Degree::Finite(4));
        assert_eq!(f12.orbit_dim, 14);
        let g2 = lookup(OrbitBase::g(2)).unwrap();
        assert_eq!(g2.si_poly.as_ref().unwrap(), &Poly::var(Var::X));
        assert_eq!(g2.orbit_dim, 23);
        let f29 = lookup(OrbitBase::f(29)).unwrap();
        assert!(f29.normal_form.components().iter().all(|p| p.is_zero()));
        assert_eq!(f29.orbit_dim_formula(), "n");
        assert_eq!(lookup(OrbitBase::f(1)).unwrap().orbit_dim_formula(), "4n+6");
        assert_eq!(lookup(OrbitBase::g(0)).unwrap().orbit_dim_formula(), "6n");
    }

    #[test]
    fn stored_formulas() {
        let f7 = lookup(OrbitBase::f(7)).unwrap();
        assert_eq!(f7.orbit_dim_at(5), 21);
        assert_eq!(lookup(OrbitBase::g(4)).unwrap().orbit_dim_at(4), 21);
        assert_eq!(lookup(OrbitBase::f(1)).unwrap().orbit_dim_at(4), 22);
    }

    #[test]
    fn low_ambient_rows_truncate_the_main_table() {
        for (base, n, form) in LOW_AMBIENT_TABLE {
            let rec = lookup(*base).unwrap();
            let want = rec.normal_form_at(*n).unwrap();
            assert_eq!(want.components(), parse_tuple(form).unwrap().as_slice(), "{} in K^{}", base, n);
            assert!(rec.dim_a <= *n);
        }
        assert_eq!(LOW_AMBIENT_TABLE.iter().filter(|(b, n, _)| *n == 2 && !b.primed).count(), 17);
    }

    #[test]
    fn minimal_ambient_fits() {
        for r in records() {
            let comps = r.normal_form.components();
            assert!(comps[r.minimal_n..].iter().all(|p| p.is_zero()), "{}", r.label);
            assert!(r.minimal_n == 1 || !comps[r.minimal_n - 1].is_zero(), "{}", r.label);
            assert!(r.normal_form_at(r.minimal_n.max(r.label.min_series_ambient())).is_ok());
        }
    }
}
