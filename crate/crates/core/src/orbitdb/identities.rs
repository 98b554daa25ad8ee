//! Polynomial identities behind the normal forms, expanded exactly.
//!
//! Each check composes `L ∘ F ∘ R` symbolically and compares it with the
//! expected right-hand side. Target coordinates are written `x, y, z, w`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::invariants::self_intersection_colon;
use crate::normalizer::{escape_grid, omega1_map, omega1_params, shifted_e1, theta, theta1_exact, theta_shift};
use crate::polycore::linalg::{det, inverse};
use crate::polycore::parse::{parse_tuple_in, DEFAULT_NAMES};
use crate::polycore::rational::rat;
use crate::polycore::{Poly, Rational, Var, NVARS};
use crate::quadmap::{cofactor_transform_check, small_rational, AffineMap, AffinePair, Field, QuadMap};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

const TARGET_NAMES: [(char, Var); 4] = [('x', Var::X), ('y', Var::Y), ('z', Var::X2), ('w', Var::Y2)];

/// Parameter instances for the identities with free constants.
fn instances() -> [(Rational, Rational); 3] {
    [(rat(1, 1), rat(1, 1)), (rat(2, 1), rat(-3, 1)), (rat(1, 2), rat(5, 3))]
}

/// A composition identity `L ∘ F ∘ R = rhs`.
pub struct Composition<'a> {
    pub l: &'a str,
    pub f: &'a str,
    pub r: &'a str,
    pub rhs: &'a str,
}

/// `L ∘ F ∘ R` with `L` in target coordinates.
pub fn compose(l: &[Poly], f: &[Poly], r: &[Poly]) -> Vec<Poly> {
    let mut inner_subs: [Option<Poly>; NVARS] = Default::default();
    inner_subs[0] = Some(r[0].clone());
    inner_subs[1] = Some(r[1].clone());
    let inner: Vec<Poly> = f.iter().map(|p| p.compose(&inner_subs)).collect();
    let mut outer_subs: [Option<Poly>; NVARS] = Default::default();
    for (slot, (_, v)) in inner.iter().zip(TARGET_NAMES) {
        outer_subs[v.index()] = Some(slot.clone());
    }
    l.iter().map(|p| p.compose(&outer_subs)).collect()
}

impl Composition<'_> {
    pub fn expand(&self, consts: &[(char, Rational)]) -> Result<(Vec<Poly>, Vec<Poly>)> {
        let l = parse_tuple_in(self.l, &TARGET_NAMES, consts)?;
        let f = parse_tuple_in(self.f, &DEFAULT_NAMES, consts)?;
        let r = parse_tuple_in(self.r, &DEFAULT_NAMES, consts)?;
        let rhs = parse_tuple_in(self.rhs, &DEFAULT_NAMES, consts)?;
        Ok((compose(&l, &f, &r), rhs))
    }

    pub fn holds(&self, consts: &[(char, Rational)]) -> Result<bool> {
        let (lhs, rhs) = self.expand(consts)?;
        Ok(lhs == rhs)
    }

    fn check(&self, name: &str, consts: &[(char, Rational)]) -> IdentityCheck {
        let detail = |lhs: &[Poly]| lhs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        match self.expand(consts) {
            Ok((lhs, rhs)) => IdentityCheck {
                name: name.to_string(),
                holds: lhs == rhs,
                detail: if lhs == rhs { format!("= ({})", detail(&rhs)) } else { format!("got ({})", detail(&lhs)) },
            },
            Err(e) => IdentityCheck { name: name.to_string(), holds: false, detail: e.to_string() },
        }
    }
}

fn named(prefix: &str, consts: &[(char, Rational)]) -> String {
    let vals: Vec<String> = consts.iter().map(|(c, v)| format!("{c}={v}")).collect();
    if vals.is_empty() {
        prefix.to_string()
    } else {
        format!("{prefix} [{}]", vals.join(", "))
    }
}

pub const F5_TOPOLOGY: Composition<'static> =
    Composition { l: "x, y, z", f: "x^2, y^2, x+y", r: "x-y, y", rhs: "x^2-2xy+y^2, y^2, x" };

pub const F5_TO_F8_TOPOLOGY: Composition<'static> =
    Composition { l: "-1/2 (x - y - z^2), y, z", f: "x^2-2xy+y^2, y^2, x", r: "x, y", rhs: "xy, y^2, x" };

pub const F5_REDUCTION: Composition<'static> = Composition {
    l: "a^2 x - a^2/b z + a^4/(4 b^2), b^2 y - b^2/a z + b^4/(4 a^2), z - (a^3+b^3)/(2 a b)",
    f: "x^2+y, y^2+x, a x + b y",
    r: "x/a + a/(2 b), y/b + b/(2 a)",
    rhs: "x^2, y^2, x+y",
};

/// The uncorrected constants; they do not give `F5`.
pub const F5_REDUCTION_UNCORRECTED: Composition<'static> = Composition {
    l: "a^2 x - a^2/b z + a^4/(4 b^2), b^2 y - b^2/a z + (2 b^4 - a^4)/(4 a^2), z - (a^3+b^3)/(4 a^2)",
    ..F5_REDUCTION
};

pub const F6_REDUCTION_X: Composition<'static> =
    Composition { l: "x, y - z/a, z/a", f: "x^2+y, y^2+x, a x", r: "x, y", rhs: "x^2+y, y^2, x" };

pub const F6_REDUCTION_Y: Composition<'static> =
    Composition { l: "y, x - z/b, z/b", f: "x^2+y, y^2+x, b y", r: "y, x", rhs: "x^2+y, y^2, x" };

pub const F6_STABILIZER: Composition<'static> = Composition {
    l: "x/p^2 - 2 q z/p^2 + q^2/p^2, y/r^2, (z - q)/p",
    f: "x^2+y, y^2, x",
    r: "p x + q, r y",
    rhs: "x^2 + r/p^2 y, y^2, x",
};

pub const F6_STABILIZER_UNCORRECTED: Composition<'static> =
    Composition { l: "x/p^2 - 2 q z/p + q^2/p^2, y/r^2, (z - q)/p", ..F6_STABILIZER };

pub const F8_LINEAR: Composition<'static> =
    Composition { l: "x - z/b, y, z/b", f: "x^2+y, xy, b y", r: "x, y", rhs: "x^2, xy, y" };

pub const F8_SCALING: Composition<'static> = Composition {
    l: "b^2/a^2 x, b^3/a^3 y, b/a^2 z",
    f: "x^2+y, xy, a x + b y",
    r: "a/b x, a^2/b^2 y",
    rhs: "x^2+y, xy, x+y",
};

pub const F8_REDUCTION: Composition<'static> = Composition {
    l: "x - z + 1/4, y + x - 3/2 z + 1/2, z - 1",
    f: "x^2+y, xy, x+y",
    r: "x + 1/2, y - x + 1/2",
    rhs: "x^2, xy, y",
};

pub const F8_REDUCTION_UNCORRECTED: Composition<'static> = Composition { r: "x + 1/2, y - x - 1/2", ..F8_REDUCTION };

pub const F3_REDUCTION: Composition<'static> = Composition {
    l: "x + y + 2z + 1, y - 3/4, y + z + 1/2",
    f: "x^2+y, y^2+x, xy - 3/2 x - 3/2 y",
    r: "x - y + 1/2, y + 1/2",
    rhs: "x^2, y^2+x, xy",
};

pub const G2_REDUCTION: Composition<'static> = Composition {
    l: "x + 2 c w + c^2 + a b/2, y + b^2/4, z + (b w + b c)/2, w + c",
    f: "x^2 + a y, y^2 + b y, xy + c y, x",
    r: "x - c, y - b/2",
    rhs: "x^2 + a y, y^2, xy, x",
};

pub const G1_SCALING: Composition<'static> = Composition {
    l: "x/a^2, y/a^2, z/a^2, w/a",
    f: "x^2 + a y, y^2, xy, x",
    r: "a x, a y",
    rhs: "x^2 + y, y^2, xy, x",
};

/// The translation-and-constants step onto `(x^2 + e1 y, y^2 + d2 x, xy + d3 x + e3 y)`,
/// applied to `L ∘ F` whose quadratic parts are `x^2, y^2, xy`. Constants:
/// `a, b, c = d1, e1, g1`, `d, e, g = d2, e2, g2`, `h, k, m = d3, e3, g3`.
pub const OMEGA1_STEP: Composition<'static> = Composition {
    l: "x - c + (a/2)^2 + b e/2, y - g + (e/2)^2 + a d/2, z + (a h + e k)/2 - a e/4 - m",
    f: "x^2 + a x + b y + c, y^2 + d x + e y + g, xy + h x + k y + m",
    r: "x - a/2, y - e/2",
    rhs: "x^2 + b y, y^2 + d x, xy + (h - e/2) x + (k - a/2) y",
};

pub const OMEGA1_STEP_UNCORRECTED: Composition<'static> = Composition {
    l: "x - c + (a/2)^2 + a e/2, y - g + (e/2)^2 + a e/2, z + (-a e + a h + e k)/2 - m",
    ..OMEGA1_STEP
};

/// `a(α), b(α)` on the two-point curve, double root at `α/2`.
pub fn two_point_parameters(alpha: &Rational) -> (Rational, Rational) {
    let a3 = alpha * alpha * alpha;
    let a = -(&a3 + rat(2, 1)) / (rat(2, 1) * alpha);
    let b = -(rat(2, 1) * &a3 + rat(1, 1)) / (rat(2, 1) * alpha * alpha);
    (a, b)
}

pub fn on_two_point_curve(a: &Rational, b: &Rational) -> bool {
    let v = rat(2, 1) * a * a * a + a * a * b * b + rat(9, 2) * a * b + rat(2, 1) * b * b * b - rat(27, 16);
    v.is_zero()
}

/// The self-intersection cubic of `(x^2 + y, y^2 + x, xy + a x + b y)`.
pub const OMEGA2_SI: &str = "x^3 - 2x^2 y a - 2x^2 a^2 - x^2 b - 2x y^2 b - 4x y a b + 3x y - 2x a^2 b + x a - x b^2 \
     + y^3 - y^2 a - 2y^2 b^2 - y a^2 - 2y a b^2 + y b + a^3 + 3a b + b^3 - 1";

/// Uncorrected, with constant term `+1`.
pub const OMEGA2_SI_UNCORRECTED: &str = "x^3 - 2x^2 y a - 2x^2 a^2 - x^2 b - 2x y^2 b - 4x y a b + 3x y - 2x a^2 b + x a - x b^2 \
     + y^3 - y^2 a - 2y^2 b^2 - y a^2 - 2y a b^2 + y b + a^3 + 3a b + b^3 + 1";

/// The double and simple lines of the two-point self-intersection.
pub const TWO_POINT_SI: &str = "(p x + y - (p^3+1)/(2p))^2 (1/p^2 x + y - (p^6+1)/(2p^4))";

fn poly_in(src: &str, consts: &[(char, Rational)]) -> Result<Poly> {
    Ok(parse_tuple_in(src, &DEFAULT_NAMES, consts)?.remove(0))
}

fn omega2(a: &Rational, b: &Rational) -> Result<QuadMap> {
    let comps = parse_tuple_in("x^2+y, y^2+x, xy + a x + b y", &DEFAULT_NAMES, &[('a', a.clone()), ('b', b.clone())])?;
    QuadMap::new(Field::Complex, comps)
}

fn si_matches(f: &QuadMap, expected: &Poly) -> Result<bool> {
    let si = self_intersection_colon(f)?;
    Ok(si.generator.is_some_and(|g| g.normalized() == expected.normalized()))
}

fn check(name: String, holds: Result<bool>, detail: &str) -> IdentityCheck {
    match holds {
        Ok(h) => IdentityCheck { name, holds: h, detail: detail.to_string() },
        Err(e) => IdentityCheck { name, holds: false, detail: e.to_string() },
    }
}

fn random_full_rank(rng: &mut ChaCha8Rng) -> QuadMap {
    loop {
        let rows: Vec<Vec<Rational>> = (0..3).map(|_| (0..6).map(|_| small_rational(rng, 4)).collect()).collect();
        let f = QuadMap::from_rows(Field::Complex, &rows).expect("three rows");
        if f.dim_quadratic() == 3 {
            return f;
        }
    }
}

/// `Φ1(F)^{-1} ∘ F`, whose quadratic parts are `x^2, y^2, xy`.
fn normalize_quadratic_parts(f: &QuadMap) -> Result<QuadMap> {
    let q: Vec<Vec<Rational>> =
        f.coeff_matrix().into_iter().map(|r| vec![r[0].clone(), r[2].clone(), r[1].clone()]).collect();
    let m = inverse(&q).ok_or(crate::error::Error::SingularLinearPart)?;
    AffinePair { target: AffineMap::new(m, vec![Rational::zero(); 3])?, source: AffineMap::identity(2) }.act(f)
}

fn omega1_step_consts(g: &QuadMap) -> Vec<(char, Rational)> {
    let h = g.coeff_matrix();
    let names = [('a', 0, 3), ('b', 0, 4), ('c', 0, 5), ('d', 1, 3), ('e', 1, 4), ('g', 1, 5), ('h', 2, 3), ('k', 2, 4), ('m', 2, 5)];
    names.iter().map(|&(c, i, j)| (c, h[i][j].clone())).collect()
}

/// Every transcribed identity, each instantiated where it has free constants.
pub fn identity_selftests() -> Vec<IdentityCheck> {
    let mut out = vec![
        F5_TOPOLOGY.check("F5 after (x - y, y)", &[]),
        F5_TO_F8_TOPOLOGY.check("(x^2 - 2xy + y^2, y^2, x) to (xy, y^2, x)", &[]),
        F3_REDUCTION.check("cusp map to F3", &[]),
        F8_REDUCTION.check("(x^2 + y, xy, x + y) to F8", &[]),
    ];
    for (a, b) in instances() {
        let ab = [('a', a.clone()), ('b', b.clone())];
        out.push(F5_REDUCTION.check(&named("(x^2 + y, y^2 + x, ax + by) to F5", &ab), &ab));
        out.push(F6_REDUCTION_X.check(&named("(x^2 + y, y^2 + x, ax) to F6", &ab), &ab));
        out.push(F6_REDUCTION_Y.check(&named("(x^2 + y, y^2 + x, by) to F6", &ab), &ab));
        out.push(F8_LINEAR.check(&named("(x^2 + y, xy, by) to F8", &ab), &ab));
        out.push(F8_SCALING.check(&named("(x^2 + y, xy, ax + by) to (x^2 + y, xy, x + y)", &ab), &ab));
        let pqr = [('p', a.clone()), ('q', b.clone()), ('r', &a * &b)];
        out.push(F6_STABILIZER.check(&named("F6 under (px + q, ry)", &pqr), &pqr));
        let abc = [('a', a.clone()), ('b', b.clone()), ('c', &a - &b)];
        out.push(G2_REDUCTION.check(&named("(x^2 + ay, y^2 + by, xy + cy, x) to (x^2 + ay, y^2, xy, x)", &abc), &abc));
        out.push(G1_SCALING.check(&named("(x^2 + ay, y^2, xy, x) to G1", &ab), &ab));
        let si = poly_in(OMEGA2_SI, &ab).and_then(|p| si_matches(&omega2(&a, &b)?, &p));
        out.push(check(named("self-intersection cubic of (x^2 + y, y^2 + x, xy + ax + by)", &ab), si, "colon ideal"));
    }
    let (c, d) = (rat(-3, 2), rat(-3, 2));
    out.push(check("cusp parameters on the two-point curve".into(), Ok(on_two_point_curve(&c, &d)), "(-3/2, -3/2)"));
    for alpha in [rat(-1, 1), rat(2, 1), rat(1, 3)] {
        let (a, b) = two_point_parameters(&alpha);
        let p = [('p', alpha.clone())];
        out.push(check(named("two-point parametrization on the curve", &p), Ok(on_two_point_curve(&a, &b)), ""));
        let ab = [('a', a.clone()), ('b', b.clone())];
        let factored = (|| {
            let lines = poly_in(TWO_POINT_SI, &p)?;
            let cubic = poly_in(OMEGA2_SI, &ab)?;
            Ok(lines.normalized() == cubic.normalized() && si_matches(&omega2(&a, &b)?, &lines)?)
        })();
        out.push(check(named("two-point self-intersection factors as a double and a simple line", &p), factored, ""));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de7);
    for i in 0..5 {
        let f = random_full_rank(&mut rng);
        let step = (|| {
            let g = normalize_quadratic_parts(&f)?;
            OMEGA1_STEP.holds(&omega1_step_consts(&g))
        })();
        out.push(check(format!("translation step onto the first normal shape #{i}"), step, ""));
        let landed = theta(&f).map(|(m, p)| omega1_params(&m).is_some() && p.act(&f).ok() == Some(m));
        out.push(check(format!("theta lands in the first normal shape #{i}"), landed, ""));
        let p: Vec<Vec<Rational>> = (0..3).map(|_| (0..3).map(|_| small_rational(&mut rng, 3)).collect()).collect();
        if !det(&p).is_zero() {
            out.push(check(format!("cofactor rule for the jacobian minors #{i}"), cofactor_transform_check(&p, &f), ""));
        }
        let params: [Rational; 4] = std::array::from_fn(|_| small_rational(&mut rng, 4));
        let g = omega1_map(&params, Field::Complex);
        let shifted = escape_grid().into_iter().step_by(7).try_fold(true, |acc, (al, be)| {
            let h = theta_shift(&g, &al, &be)?;
            Ok(acc && omega1_params(&h).is_some_and(|q| q[0] == shifted_e1(&params, &al, &be)))
        });
        out.push(check(format!("shifted e1 formula #{i}"), shifted, ""));
    }
    let cube = omega1_map(&[rat(1, 1), rat(8, 1), rat(3, 1), rat(-5, 1)], Field::Complex);
    let scaled = theta1_exact(&cube).and_then(|r| {
        let target = QuadMap::new(
            Field::Complex,
            parse_tuple_in("x^2+y, y^2+x, xy + 3/4 x - 5/2 y", &DEFAULT_NAMES, &[])?,
        )?;
        Ok(r.is_some_and(|(m, p)| m == target && p.act(&cube).ok() == Some(m)))
    });
    out.push(check("cube-root scaling with e1 = 1, d2 = 8".into(), scaled, ""));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds() {
        let report = identity_selftests();
        assert!(report.len() > 40);
        for c in &report {
            assert!(c.holds, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn topology_example() {
        assert!(F5_TO_F8_TOPOLOGY.holds(&[]).unwrap());
        assert!(F5_TOPOLOGY.holds(&[]).unwrap());
    }

    #[test]
    fn uncorrected_constants_fail() {
        for (a, b) in instances().into_iter().skip(1) {
            let ab = [('a', a.clone()), ('b', b.clone())];
            assert!(!F5_REDUCTION_UNCORRECTED.holds(&ab).unwrap());
            let pqr = [('p', a.clone()), ('q', b.clone()), ('r', &a * &b)];
            assert!(!F6_STABILIZER_UNCORRECTED.holds(&pqr).unwrap());
        }
        assert!(!F8_REDUCTION_UNCORRECTED.holds(&[]).unwrap());
        for (a, b) in instances() {
            let ab = [('a', a.clone()), ('b', b.clone())];
            let uncorrected = poly_in(OMEGA2_SI_UNCORRECTED, &ab).unwrap();
            assert!(!si_matches(&omega2(&a, &b).unwrap(), &uncorrected).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = normalize_quadratic_parts(&random_full_rank(&mut rng)).unwrap();
        assert!(!OMEGA1_STEP_UNCORRECTED.holds(&omega1_step_consts(&g)).unwrap());
    }

    #[test]
    fn two_point_parameters_avoid_the_cusp() {
        assert_eq!(two_point_parameters(&rat(1, 1)), (rat(-3, 2), rat(-3, 2)));
        assert_eq!(two_point_parameters(&rat(-1, 1)), (rat(1, 2), rat(1, 2)));
    }
}
