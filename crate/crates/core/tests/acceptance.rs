//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Expected values are written out here from the published list of normal
//! forms, independently of the crate's own orbit table.

use std::time::Instant;

use num_complex::Complex64;
use quadmap::classifier::classify;
use quadmap::groebner::PointCluster;
use quadmap::invariants::{
    critical_scheme, fold_locus, orbit_dimension, self_intersection, self_intersection_colon, self_intersection_midpoint,
    topological_degree, CriticalKind, Degree,
};
use quadmap::normalizer::{find_witness, reduce_to_omega2};
use quadmap::orbitdb::{family_for, identity_selftests, records, verify_families, OrbitBase, OrbitLabel};
use quadmap::polycore::rational::to_f64;
use quadmap::polycore::{parse_poly, parse_tuple, rat, Rational};
use quadmap::{AffinePair, Field, QuadMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `F1..F29` normal forms.
const F: [&str; 29] = [
    "x^2+y, y^2+x, xy",
    "x^2+y, y^2+x, xy + 1/2 x + 1/2 y",
    "x^2, y^2+x, xy",
    "x^2, y^2, xy",
    "x^2, y^2, x+y",
    "x^2+y, y^2, x",
    "x^2+y, y^2+x, 0",
    "x^2, xy, y",
    "x^2+y, xy, x",
    "x^2+y, xy, 0",
    "x^2, y^2, y",
    "x^2+y, y^2, 0",
    "x^2, y^2, 0",
    "x^2, xy, x",
    "x^2-x, xy, 0",
    "x^2, xy, 0",
    "xy, x, y",
    "x^2, x, y",
    "xy, x+y, 0",
    "x, xy, 0",
    "x^2, y, 0",
    "x^2+y, x, 0",
    "x^2, x, 0",
    "x, y, 0",
    "xy, 0, 0",
    "x^2+y, 0, 0",
    "x^2, 0, 0",
    "x, 0, 0",
    "0, 0, 0",
];

/// `G1..G4` normal forms.
const G: [&str; 4] = ["x^2+y, y^2, xy, x", "x^2, y^2, xy, x", "x^2, y^2, x, y", "x^2, xy, x, y"];

const DIM_N3: [usize; 29] = [18, 17, 16, 14, 17, 16, 15, 16, 15, 14, 15, 14, 13, 14, 13, 12, 14, 13, 13, 12, 12, 11, 10, 9, 10, 9, 8, 7, 3];

fn map(field: Field, src: &str) -> QuadMap {
    QuadMap::new(field, parse_tuple(src).expect("valid expression")).expect("quadratic")
}

fn f(i: usize) -> QuadMap {
    map(Field::Complex, F[i - 1])
}

fn g(i: usize) -> QuadMap {
    map(Field::Complex, G[i - 1])
}

fn label(m: &QuadMap) -> String {
    classify(m).map_or_else(|e| format!("error: {e}"), |r| r.label.base.to_string())
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn orbit_dims_n3() -> Outcome {
    for i in 1..=29 {
        let d = orbit_dimension(&f(i));
        ensure(d == DIM_N3[i - 1], || format!("F{i}: {d}, expected {}", DIM_N3[i - 1]))?;
    }
    Ok("29 normal forms".into())
}

fn orbit_dims_n4() -> Outcome {
    for (i, want) in [(1, 24), (2, 23), (3, 22), (4, 21)] {
        let d = orbit_dimension(&g(i));
        ensure(d == want, || format!("G{i}: {d}, expected {want}"))?;
    }
    let f1 = orbit_dimension(&f(1).embed(4));
    ensure(f1 == 4 * 4 + 6, || format!("(F1, 0): {f1}, expected 22"))?;
    for i in 1..=29 {
        let m = f(i);
        let want = DIM_N3[i - 1] + 1 + m.dim_affine();
        let d = orbit_dimension(&m.embed(4));
        ensure(d == want, || format!("(F{i}, 0): {d}, expected {want}"))?;
    }
    Ok("G1..G4 and 29 embedded maps".into())
}

fn embedding_increments() -> Outcome {
    let mut checked = 0;
    for rec in records() {
        let nf = &rec.normal_form;
        let step = 1 + nf.dim_affine();
        for n in rec.minimal_n.max(rec.label.min_series_ambient())..6 {
            let at = |k| rec.normal_form_at(k).map(|m| orbit_dimension(&m)).map_err(|e| e.to_string());
            let (lo, hi) = (at(n)?, at(n + 1)?);
            ensure(hi == lo + step, || format!("{} at n={n}: {lo} -> {hi}, step should be {step}", rec.label))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} increments over {} labels", records().len()))
}

fn degrees() -> Outcome {
    let finite: [(usize, usize); 23] = [
        (1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 1), (7, 4), (8, 1), (9, 1), (10, 3), (11, 2), (12, 4),
        (13, 4), (14, 1), (15, 2), (16, 2), (17, 1), (18, 1), (19, 2), (20, 1), (21, 2), (22, 1), (24, 1),
    ];
    for (i, mu) in finite {
        let r = topological_degree(&f(i)).map_err(|e| format!("F{i}: {e}"))?;
        ensure(r.samples.len() == 7, || format!("F{i}: {} samples", r.samples.len()))?;
        ensure(r.value == Degree::Finite(mu), || format!("F{i}: mu {}, expected {mu}", r.value))?;
    }
    for i in 25..=29 {
        let r = topological_degree(&f(i)).map_err(|e| format!("F{i}: {e}"))?;
        ensure(r.value == Degree::Infinite, || format!("F{i}: mu {}, expected INFINITE", r.value))?;
    }
    let g2 = topological_degree(&g(2)).map_err(|e| e.to_string())?.value;
    ensure(g2 == Degree::Finite(1), || format!("G2: mu {g2}"))?;
    Ok("23 finite values, F25..F29 infinite, G2".into())
}

/// `prod (y + e x - e^2)` over the cube roots of unity, at a point.
fn three_lines(x: f64, y: f64) -> Complex64 {
    (0..3)
        .map(|k| {
            let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            y + e * x - e * e
        })
        .product()
}

fn self_intersections() -> Outcome {
    // The generic cubic against the product of its three lines.
    let cubic = parse_poly("x^3+y^3+3xy-1").map_err(|e| e.to_string())?;
    let at = |x: &Rational, y: &Rational| to_f64(&cubic.eval_xy(x, y));
    let (x0, y0) = (rat(3, 10), rat(-7, 10));
    let scale = three_lines(to_f64(&x0), to_f64(&y0)) / at(&x0, &y0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (x, y) = (rat(rng.gen_range(-20..=20), 7), rat(rng.gen_range(-20..=20), 9));
        let err = (three_lines(to_f64(&x), to_f64(&y)) - scale * at(&x, &y)).norm();
        ensure(err < 1e-9, || format!("three-line product differs from the cubic at ({x}, {y})"))?;
    }
    let cases: [(&str, QuadMap, &str, Vec<(&str, usize)>); 7] = [
        ("F1", f(1), "x^3+y^3+3xy-1", vec![("x^3+y^3+3xy-1", 1)]),
        ("F2", f(2), "(x-y)^2 (x+y-1)", vec![("x-y", 2), ("x+y-1", 1)]),
        ("F3", f(3), "x^3", vec![("x", 3)]),
        ("F5", f(5), "x+y", vec![("x+y", 1)]),
        ("F8", f(8), "y", vec![("y", 1)]),
        ("F11", f(11), "x", vec![("x", 1)]),
        ("G2", g(2), "x", vec![("x", 1)]),
    ];
    for (name, m, gen, factors) in cases {
        // with two sheets the curve is where they meet
        let si = match topological_degree(&m).map_err(|e| e.to_string())?.value {
            Degree::Finite(1) => self_intersection(&m),
            _ => fold_locus(&m),
        }
        .map_err(|e| format!("{name}: {e}"))?;
        let want = parse_poly(gen).map_err(|e| e.to_string())?.normalized();
        let got = si.generator.as_ref().map(|p| p.normalized());
        ensure(got.as_ref() == Some(&want), || format!("{name}: {got:?}, expected {want}"))?;
        let mut got_f: Vec<(String, usize)> = si.factors.iter().map(|(p, k)| (p.normalized().to_string(), *k)).collect();
        let mut want_f: Vec<(String, usize)> =
            factors.iter().map(|(p, k)| (parse_poly(p).unwrap().normalized().to_string(), *k)).collect();
        got_f.sort();
        want_f.sort();
        ensure(got_f == want_f, || format!("{name}: factors {got_f:?}, expected {want_f:?}"))?;
    }
    Ok("7 curves with multiplicities".into())
}

fn critical_schemes() -> Outcome {
    let c1 = critical_scheme(&f(1));
    ensure(c1.kind == CriticalKind::Finite && c1.partition() == vec![1, 1, 1], || format!("F1: {:?}", c1.partition()))?;
    let half = rat(1, 2);
    let has_half = c1.points.as_ref().is_some_and(|p| {
        p.clusters.iter().any(|c| matches!(c, PointCluster::Rational { x, y, multiplicity: 1 } if *x == half && *y == half))
    });
    ensure(has_half, || "F1: (1/2, 1/2) missing".into())?;
    let c2 = critical_scheme(&f(2)).partition();
    ensure(c2 == vec![2, 1], || format!("F2: {c2:?}"))?;
    for i in [3, 4] {
        let c = critical_scheme(&f(i));
        ensure(c.kind == CriticalKind::Finite && c.partition() == vec![3], || format!("F{i}: {:?}", c.partition()))?;
    }
    for i in [6, 9, 17, 18, 22, 24] {
        let k = critical_scheme(&f(i)).kind;
        ensure(k == CriticalKind::Empty, || format!("F{i}: {k:?}, expected EMPTY"))?;
    }
    for i in [23, 25, 26, 27, 28, 29] {
        let k = critical_scheme(&f(i)).kind;
        ensure(k == CriticalKind::Plane, || format!("F{i}: {k:?}, expected PLANE"))?;
    }
    Ok("F1..F4, 6 empty, 6 plane".into())
}

fn real_splits() -> Outcome {
    let pairs = [
        ("x^2-y^2+x, 2xy-y, -3x^2+y^2", "F1'", 1),
        ("x^2-y^2+x, 2xy-y, 0", "F7'", 7),
        ("x^2-y^2, xy, 0", "F13'", 13),
        ("x^2+y^2, x, y", "F17'", 17),
        ("x^2+y^2, x, 0", "F19'", 19),
        ("x^2+y^2, 0, 0", "F25'", 25),
    ];
    for (src, want, twin) in pairs {
        let got = label(&map(Field::Real, src));
        ensure(got == want, || format!("({src}): {got}, expected {want}"))?;
        let got = label(&f(twin).with_field(Field::Real));
        ensure(got == format!("F{twin}"), || format!("real F{twin}: {got}"))?;
    }
    let got = label(&map(Field::Real, "x^2-y^2, xy, x, y"));
    ensure(got == "G3'", || format!("(x^2-y^2, xy, x, y): {got}"))?;
    let got = label(&g(3).with_field(Field::Real));
    ensure(got == "G3", || format!("real G3: {got}"))?;
    Ok("7 primed representatives and their twins".into())
}

fn families() -> Outcome {
    let checks = verify_families().map_err(|e| e.to_string())?;
    ensure(checks.len() >= 12, || format!("only {} families", checks.len()))?;
    for c in &checks {
        ensure(c.ok, || format!("{} -> {}: {:?}", c.upper, c.lower, c.samples))?;
    }
    for (u, l) in [("G2", "G3"), ("F1", "F2"), ("F2", "F3")] {
        let (u, l): (OrbitBase, OrbitBase) = (u.parse().unwrap(), l.parse().unwrap());
        ensure(family_for(u, l).is_some(), || format!("no family {u} -> {l}"))?;
    }
    Ok(format!("{} families", checks.len()))
}

fn equivariance() -> Outcome {
    let panel = [f(1), f(2), f(3), f(4), f(5), f(7), f(8), f(11), f(13), f(15), f(20), g(2)];
    let want: Vec<String> = panel.iter().map(label).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    let mut cases = 0;
    for _ in 0..200 {
        for (m, w) in panel.iter().zip(&want) {
            let moved = AffinePair::random(m.n(), &mut rng, 4).act(m).map_err(|e| e.to_string())?;
            let got = label(&moved);
            ensure(&got == w, || format!("{w} moved to {moved}: {got}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn random_integer_map(n: usize, rng: &mut ChaCha8Rng) -> QuadMap {
    let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..6).map(|_| rat(rng.gen_range(-9..=9), 1)).collect()).collect();
    QuadMap::from_rows(Field::Complex, &rows).expect("rows of six")
}

fn genericity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0010);
    let mut share = vec![];
    for (n, want) in [(3, "F1"), (5, "G0")] {
        let hits = (0..500).filter(|_| label(&random_integer_map(n, &mut rng)) == want).count();
        ensure(hits >= 450, || format!("n={n}: {hits}/500 classify as {want}"))?;
        share.push(format!("{want} {hits}/500"));
    }
    Ok(share.join(", "))
}

fn identities_and_witnesses() -> Outcome {
    let ids = identity_selftests();
    if let Some(bad) = ids.iter().find(|c| !c.holds) {
        return Err(format!("identity {}: {}", bad.name, bad.detail));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0011);
    let mut worst: f64 = 0.0;
    for i in 1..=3 {
        let nf = f(i);
        let target = OrbitLabel::new(format!("F{i}").parse().unwrap(), 3, Field::Complex).unwrap();
        for k in 0..50 {
            let m = AffinePair::random(3, &mut rng, 4).act(&nf).map_err(|e| e.to_string())?;
            let red = reduce_to_omega2(&m, 0).map_err(|e| format!("F{i} #{k}: {e}"))?;
            let w = find_witness(&m, &target).map_err(|e| format!("F{i} #{k}: {e}"))?;
            worst = worst.max(red.residual).max(w.residual);
            ensure(red.residual <= 1e-8 && w.residual <= 1e-8, || {
                format!("F{i} #{k}: residuals {:e} / {:e}", red.residual, w.residual)
            })?;
        }
    }
    Ok(format!("{} identities, 150 witnesses, worst residual {worst:.1e}", ids.len()))
}

fn si_methods_agree() -> Outcome {
    let mut checked = 0;
    for rec in records().iter().filter(|r| r.mu == Degree::Finite(1)) {
        let m = &rec.normal_form;
        let colon = self_intersection_colon(m).map_err(|e| format!("{}: {e}", rec.label))?;
        let mid = self_intersection_midpoint(m).map_err(|e| format!("{}: {e}", rec.label))?;
        let (a, b) = (colon.radical(), mid.map(|p| p.normalized()));
        ensure(a == b, || format!("{}: colon {a:?}, midpoint {b:?}", rec.label))?;
        checked += 1;
    }
    Ok(format!("{checked} normal forms with mu = 1"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("orbit dimensions in K^3", orbit_dims_n3),
        ("orbit dimensions in K^4", orbit_dims_n4),
        ("embedding increments up to K^6", embedding_increments),
        ("topological degrees", degrees),
        ("self-intersection curves", self_intersections),
        ("critical schemes", critical_schemes),
        ("real splits", real_splits),
        ("degeneration families", families),
        ("equivariance, 200 pairs x 12 forms", equivariance),
        ("genericity of F1 and G0", genericity),
        ("identities and witness residuals", identities_and_witnesses),
        ("colon and midpoint self-intersection agree", si_methods_agree),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 passed in {:.1}s", 12 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
