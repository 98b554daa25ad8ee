//! Every tabulated normal form, in every target it fits, classifies back to
//! its own label with the stored invariants.

use quadmap::classifier::{classify, expected_orbit_dim, invariant_vector};
use quadmap::invariants::degree::Degree;
use quadmap::orbitdb::labels::OrbitBase;
use quadmap::orbitdb::records::{lookup, records, LOW_AMBIENT_TABLE};
use quadmap::polycore::parse_tuple;
use quadmap::{Field, QuadMap};

const MAX_N: usize = 6;

fn lowest_n(base: OrbitBase) -> usize {
    let rec = lookup(base).unwrap();
    rec.minimal_n.max(base.min_series_ambient()).max(1)
}

fn check(base: OrbitBase, f: &QuadMap) {
    let rec = lookup(base).unwrap();
    let n = f.n();
    let report = classify(f).unwrap_or_else(|e| panic!("{base} in K^{n} over {:?}: {e}", f.field()));
    assert_eq!(report.label.base, base, "K^{n} over {:?}", f.field());
    assert_eq!(report.label.ambient_n, n);
    let v = &report.invariants;
    assert_eq!(v.dim_a, rec.dim_a, "{base}");
    assert_eq!(v.dim_q, rec.dim_q, "{base}");
    assert_eq!(v.mu, rec.mu, "{base}");
    assert_eq!(v.critical, rec.critical, "{base}");
    assert_eq!(v.si_signature, rec.si_signature, "{base}");
    assert_eq!(v.orbit_dimension, rec.orbit_dim_at(n), "{base} in K^{n}");
    assert_eq!(report.expected_orbit_dim, v.orbit_dimension);
    if n >= 3 {
        assert_eq!(report.topological_type, rec.topological_type(f.field()), "{base}");
    } else {
        assert_eq!(report.topological_type, None);
    }
}

#[test]
fn complex_normal_forms_in_every_target() {
    let mut seen = 0;
    for base in OrbitBase::complex() {
        for n in lowest_n(base)..=MAX_N {
            check(base, &lookup(base).unwrap().normal_form_at(n).unwrap());
            seen += 1;
        }
    }
    assert!(seen > 34 * 3, "{seen}");
}

#[test]
fn real_normal_forms_in_every_target() {
    for base in OrbitBase::real() {
        for n in lowest_n(base)..=MAX_N {
            let f = lookup(base).unwrap().normal_form_at(n).unwrap().with_field(Field::Real);
            check(base, &f);
        }
    }
}

#[test]
fn low_ambient_forms() {
    for (base, n, form) in LOW_AMBIENT_TABLE {
        let field = if base.primed { Field::Real } else { Field::Complex };
        let f = QuadMap::new(field, parse_tuple(form).unwrap()).unwrap().embed(*n);
        assert_eq!(f.n(), *n);
        check(*base, &f);
    }
}

#[test]
fn consistency_on_the_table() {
    for rec in records() {
        let field = if rec.label.primed { Field::Real } else { Field::Complex };
        let f = rec.normal_form.with_field(field);
        let v = invariant_vector(&f).unwrap();
        let label = classify(&f).unwrap().label;
        assert_eq!(v.orbit_dimension, expected_orbit_dim(&label).unwrap(), "{}", rec.label);
        let n = rec.reference_n;
        assert_eq!(rec.orbit_dim + rec.stabilizer_dim, n * (n + 1) + 6, "{}", rec.label);
    }
}

#[test]
fn record_shape() {
    assert_eq!(records().len(), 34 + 7);
    let infinite = records().iter().filter(|r| r.mu == Degree::Infinite).count();
    assert!(infinite > 0);
    for rec in records() {
        assert_eq!(rec.normal_form.n(), rec.reference_n);
        assert!(rec.dim_q <= rec.dim_a && rec.dim_a <= 5, "{}", rec.label);
        assert_eq!(rec.normal_form.dim_affine(), rec.dim_a, "{}", rec.label);
        assert_eq!(rec.si_signature.is_some(), rec.mu == Degree::Finite(1), "{}", rec.label);
    }
}
