//! One-parameter degenerations. A family lies in `upper` for `t != 0` and in
//! `lower` at `t = 0`; `t` plays the role of `1/n` in a sequence.

use serde::Serialize;

use super::labels::OrbitBase;
use super::poset::edges;
use crate::classifier::classify;
use crate::error::Result;
use crate::polycore::{parse_tuple, rat, Rational, Var};
use crate::quadmap::{Field, QuadMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub upper: OrbitBase,
    pub lower: OrbitBase,
    /// Components in `x, y` and the parameter `t`.
    pub expr: &'static str,
}

const fn fam(upper: OrbitBase, lower: OrbitBase, expr: &'static str) -> Family {
    Family { upper, lower, expr }
}
const fn f(i: u8) -> OrbitBase {
    OrbitBase::f(i)
}
const fn g(i: u8) -> OrbitBase {
    OrbitBase::g(i)
}

pub const FAMILIES: &[Family] = &[
    fam(g(2), g(3), "x^2, y^2, t xy + y, x"),
    fam(g(3), g(4), "x^2 - t y^2, xy, x, y"),
    // Rational points of the F2 discriminant curve, alpha = t/2 in its parametrization.
    fam(f(2), f(6), "x^2+y, y^2+x, -2t^2 xy + (t^3+4) x + 1/4 t (t^3+16) y"),
    fam(f(2), f(8), "x^2, t y^2 + t x + y, xy"),
    fam(f(5), f(8), "x^2, t y^2 + xy, y"),
    fam(f(3), f(9), "x^2 + y - 3t^2 y^2, t^3 y^2 + x, 2xy + 3t y^2"),
    // The cusp point (a, b) = (-3/2, -3/2) of the discriminant curve; with
    // plus signs the family stays in the generic orbit.
    fam(f(3), f(7), "x^2+y, y^2+x, t xy - 3/2 t x - 3/2 t y"),
    fam(f(6), f(9), "x^2+y, t y^2 + xy, x"),
    fam(f(9), f(14), "x^2 + t y, xy, x"),
    fam(f(9), f(17), "t x^2 + y, xy, x"),
    fam(f(11), f(14), "x^2, t y^2 + xy, x"),
    fam(f(4), f(18), "x^2, 1/2 t y^2 + y, t xy + x"),
    fam(f(14), f(18), "x^2, t xy + y, x"),
    // The chain through the generic orbit: leave the discriminant curve, then
    // run along it into a cusp.
    fam(f(1), f(2), "x^2+y, y^2+x, xy + (1/2 + t) x + 1/2 y"),
    fam(
        f(2),
        f(3),
        "x^2+y, y^2+x, 2(1+t)^2 xy - (1+t)((1+t)^3 + 2) x - (2(1+t)^3 + 1) y",
    ),
];

impl Family {
    pub fn at(&self, t: &Rational) -> Result<QuadMap> {
        let comps = parse_tuple(self.expr)?.into_iter().map(|p| p.eval_var(Var::T, t)).collect();
        QuadMap::new(Field::Complex, comps)
    }
}

pub fn degeneration_families() -> &'static [Family] {
    FAMILIES
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyCheck {
    pub upper: OrbitBase,
    pub lower: OrbitBase,
    pub expr: &'static str,
    /// `(t, label found)` at `t = 1, 1/2, 1/3, 0`.
    pub samples: Vec<(String, String)>,
    pub on_stored_edge: bool,
    pub ok: bool,
}

pub fn verify_family(fam: &Family) -> Result<FamilyCheck> {
    let ts = [rat(1, 1), rat(1, 2), rat(1, 3), rat(0, 1)];
    let mut samples = vec![];
    let mut ok = true;
    for t in &ts {
        let label = classify(&fam.at(t)?)?.label.base;
        let want = if t == &ts[3] { fam.lower } else { fam.upper };
        ok &= label == want;
        samples.push((t.to_string(), label.to_string()));
    }
    let on_stored_edge = edges().iter().any(|e| e.upper == fam.upper && e.lower == fam.lower);
    Ok(FamilyCheck { upper: fam.upper, lower: fam.lower, expr: fam.expr, samples, on_stored_edge, ok: ok && on_stored_edge })
}

pub fn verify_families() -> Result<Vec<FamilyCheck>> {
    FAMILIES.iter().map(verify_family).collect()
}

/// The family for an edge, if one is stored.
pub fn family_for(upper: OrbitBase, lower: OrbitBase) -> Option<&'static Family> {
    FAMILIES.iter().find(|f| f.upper == upper && f.lower == lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Poly;

    #[test]
    fn families_parse_in_their_ambient() {
        for fam in FAMILIES {
            let m = fam.at(&rat(1, 1)).unwrap();
            let n = if fam.upper.series == crate::orbitdb::Series::G { 4 } else { 3 };
            assert_eq!(m.n(), n, "{}", fam.expr);
        }
    }

    #[test]
    fn plus_signs_give_the_generic_orbit() {
        let m = QuadMap::new(Field::Complex, parse_tuple("x^2+y, y^2+x, xy + 3/2 x + 3/2 y").unwrap()).unwrap();
        assert_eq!(classify(&m).unwrap().label.base, f(1));
    }

    #[test]
    fn discriminant_parametrization_is_on_the_curve() {
        // a(s) = -(s^3+2)/(2s), b(s) = -(2s^3+1)/(2s^2) satisfies
        // 2a^3 + a^2 b^2 + 9/2 ab + 2b^3 - 27/16 = 0 identically. Cleared of
        // denominators.
        let s = Poly::var(Var::T);
        let a_num = -&(&s.pow(3) + &Poly::int(2)); // over 2s
        let b_num = -&(&s.pow(3).scale(&rat(2, 1)) + &Poly::int(1)); // over 2s^2
        // Multiply the curve by (2s)^3 (2s^2)^3 = 64 s^9.
        let two_s = s.scale(&rat(2, 1));
        let two_s2 = s.pow(2).scale(&rat(2, 1));
        let terms = [
            a_num.pow(3).scale(&rat(2, 1)) * two_s2.pow(3),
            a_num.pow(2) * b_num.pow(2) * two_s.clone() * two_s2.clone(),
            (&a_num * &b_num).scale(&rat(9, 2)) * two_s.pow(2) * two_s2.pow(2),
            b_num.pow(3).scale(&rat(2, 1)) * two_s.pow(3),
            (two_s.pow(3) * two_s2.pow(3)).scale(&rat(-27, 16)),
        ];
        let total = terms.iter().fold(Poly::zero(), |acc, t| &acc + t);
        assert!(total.is_zero(), "{}", total);
    }
}
