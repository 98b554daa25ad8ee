//! Seeded sweeps and property tests over random maps and random group elements.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadmap::classifier::{classify, expected_orbit_dim};
use quadmap::cli::{parse_documents, MapDocument};
use quadmap::groebner::{GroebnerBasis, MonomialOrder};
use quadmap::orbitdb::labels::OrbitBase;
use quadmap::orbitdb::records::lookup;
use quadmap::polycore::rational::{neg_mul, sub_mul};
use quadmap::polycore::{parse_rational, Monomial, Poly};
use quadmap::{AffinePair, Error, Field, QuadMap, Rational};

fn random_map(rng: &mut ChaCha8Rng, n: usize, range: i64, field: Field) -> QuadMap {
    let rows: Vec<Vec<Rational>> =
        (0..n).map(|_| (0..6).map(|_| Rational::from_integer(rng.gen_range(-range..=range).into())).collect()).collect();
    QuadMap::from_rows(field, &rows).unwrap()
}

#[test]
fn totality_on_small_integer_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x707a_1117);
    for n in 1..=6 {
        for i in 0..1000 {
            let f = random_map(&mut rng, n, 3, Field::Complex);
            match classify(&f) {
                Ok(r) => assert_eq!(r.invariants.orbit_dimension, expected_orbit_dim(&r.label).unwrap()),
                Err(e @ Error::Unclassifiable(_)) => panic!("n={n} #{i} {f}: {e}"),
                Err(e) => panic!("n={n} #{i} {f}: unexpected {e}"),
            }
        }
    }
}

#[test]
fn totality_over_the_reals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x707a_1118);
    for n in 1..=4 {
        for i in 0..150 {
            let f = random_map(&mut rng, n, 3, Field::Real);
            let r = classify(&f).unwrap_or_else(|e| panic!("n={n} #{i} {f}: {e}"));
            assert_eq!(r.label.field, Field::Real);
            let c = classify(&f.with_field(Field::Complex)).unwrap();
            assert_eq!(r.label.base.unprimed(), c.label.base, "{f}");
        }
    }
}

fn label_and_n() -> impl Strategy<Value = (OrbitBase, usize)> {
    let labels = OrbitBase::real();
    (0..labels.len(), 0usize..3).prop_map(move |(i, extra)| {
        let base = labels[i];
        let rec = lookup(base).unwrap();
        let lo = rec.minimal_n.max(base.min_series_ambient()).max(1);
        (base, (lo + extra).min(5).max(lo))
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn wide_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        small_rational(),
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(p, q)| Rational::new(p.into(), q.into())),
        (any::<i128>(), any::<u64>()).prop_map(|(p, q)| Rational::new(p.into(), (i128::from(q) + 1).into())),
    ]
}

fn quadratic_xy() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-5i64..=5, 6).prop_map(|c| {
        let monos = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)];
        Poly::from_terms(monos.iter().zip(&c).map(|(&(a, b), &k)| (Monomial::xy(a, b), Rational::from_integer(k.into()))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn classification_is_affine_invariant((base, n) in label_and_n(), seed in any::<u64>()) {
        let field = if base.primed { Field::Real } else { Field::Complex };
        let f = lookup(base).unwrap().normal_form_at(n).unwrap().with_field(field);
        let g = AffinePair::random(n, &mut ChaCha8Rng::seed_from_u64(seed), 3).act(&f).unwrap();
        let r = classify(&g).unwrap();
        prop_assert_eq!(r.label.base, base);
        prop_assert_eq!(r.invariants.orbit_dimension, expected_orbit_dim(&r.label).unwrap());
    }

    #[test]
    fn document_round_trip(rows in proptest::collection::vec(proptest::collection::vec(wide_rational(), 6), 1..5), real in any::<bool>()) {
        let field = if real { Field::Real } else { Field::Complex };
        let f = QuadMap::from_rows(field, &rows).unwrap();
        let doc = MapDocument::from_map(&f);
        let json = doc.to_json();
        prop_assert_eq!(&MapDocument::parse(&json).unwrap(), &doc);
        prop_assert_eq!(doc.to_map().unwrap(), f);
        let batch = format!("[{json}, {json}]\n{json}");
        prop_assert_eq!(parse_documents(&batch).unwrap().len(), 3);
    }

    #[test]
    fn rational_text_round_trip(r in wide_rational()) {
        prop_assert_eq!(parse_rational(&r.to_string()), Some(r));
    }

    #[test]
    fn fused_arithmetic_matches_plain(a in wide_rational(), b in wide_rational(), c in wide_rational()) {
        prop_assert_eq!(sub_mul(&a, &c, &b), &a - &c * &b);
        prop_assert_eq!(neg_mul(&c, &b), -(&c * &b));
    }

    #[test]
    fn groebner_basis_is_canonical(p in quadratic_xy(), q in quadratic_xy(), r in quadratic_xy()) {
        let order = MonomialOrder::DegRevLex;
        let a = GroebnerBasis::new(&[p.clone(), q.clone(), r.clone()], order);
        let b = GroebnerBasis::new(&[r.clone(), &p + &q, q.clone()], order);
        prop_assert_eq!(a.basis(), b.basis());
        for g in [&p, &q, &r] {
            prop_assert!(a.normal_form(g).is_zero());
        }
        prop_assert!(a.contains(&(&(&p * &q) - &(&r * &r))));
    }

    #[test]
    fn orbit_dimension_grows_with_the_target(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(&mut rng, n, 3, Field::Complex);
        let small = classify(&f).unwrap();
        let big = classify(&f.embed(n + 1)).unwrap();
        prop_assert_eq!(small.label.base, big.label.base);
        prop_assert_eq!(big.invariants.orbit_dimension, small.invariants.orbit_dimension + 1 + small.invariants.dim_a);
    }
}
