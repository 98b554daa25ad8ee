use serde::Serialize;

use super::degree::{topological_degree, Degree};
use super::real::{conic_type, ConicType};
use super::to_second_copy;
use crate::error::{Error, Result};
use crate::groebner::{colon_and_eliminate, EliminatedGenerator, GroebnerBasis, MonomialOrder};
use crate::polycore::{Poly, Var, VarSet};
use crate::quadmap::{Field, QuadMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SiKind {
    Empty,
    Curve,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SIReport {
    pub kind: SiKind,
    /// Generator of the eliminated ideal, normalized.
    pub generator: Option<Poly>,
    /// Square-free decomposition of the generator.
    pub factors: Vec<(Poly, usize)>,
    /// Over R: rational factors whose real zero set is a curve.
    pub real_locus: Option<Vec<Poly>>,
}

impl SIReport {
    fn empty(field: Field) -> Self {
        SIReport {
            kind: SiKind::Empty,
            generator: None,
            factors: vec![],
            real_locus: (field == Field::Real).then(Vec::new),
        }
    }

    fn from_generator(g: Poly, field: Field) -> Self {
        let factors = g.squarefree_factors();
        let real_locus = (field == Field::Real).then(|| real_curve_factors(&factors));
        SIReport { kind: SiKind::Curve, generator: Some(g), factors, real_locus }
    }

    /// `(degree, multiplicity)` pairs, sorted.
    pub fn signature(&self) -> Vec<(u32, usize)> {
        let mut s: Vec<(u32, usize)> = self.factors.iter().map(|(p, k)| (p.degree(), *k)).collect();
        s.sort();
        s
    }

    pub fn radical(&self) -> Option<Poly> {
        self.generator.as_ref().map(|g| g.squarefree_part())
    }
}

/// Splits off rational lines, then keeps pieces with a one-dimensional real zero set.
fn real_curve_factors(factors: &[(Poly, usize)]) -> Vec<Poly> {
    let mut out = vec![];
    for (f, _) in factors {
        let mut rest = f.clone();
        for l in f.rational_linear_factors() {
            rest = rest.div_exact(&l).expect("factor divides");
            out.push(l);
        }
        if rest.is_constant() {
            continue;
        }
        let keep = match rest.degree() {
            2 => !matches!(
                conic_type(&rest),
                Some(ConicType::ImaginaryEllipse | ConicType::ComplexLinePair | ConicType::ComplexParallelLines)
            ),
            d => d % 2 == 1 || d > 2,
        };
        if keep {
            out.push(rest.normalized());
        }
    }
    out
}

fn fiber_product(f: &QuadMap) -> Vec<Poly> {
    f.components()
        .iter()
        .map(|p| p - &to_second_copy(p))
        .filter(|g| !g.is_zero())
        .collect()
}

/// Colon-ideal method without checking the degree first.
pub fn self_intersection_colon(f: &QuadMap) -> Result<SIReport> {
    let gens = fiber_product(f);
    if gens.is_empty() {
        return Err(Error::Precondition("constant map has no self-intersection curve".into()));
    }
    match colon_and_eliminate(&gens)? {
        EliminatedGenerator::Unit => Ok(SIReport::empty(f.field())),
        EliminatedGenerator::Curve(g) => Ok(SIReport::from_generator(g, f.field())),
        EliminatedGenerator::Zero => Err(Error::Precondition("generic fiber is not a single point".into())),
    }
}

/// Self-intersection scheme of a map with `mu = 1`.
pub fn self_intersection(f: &QuadMap) -> Result<SIReport> {
    let mu = topological_degree(f)?.value;
    if mu != Degree::Finite(1) {
        return Err(Error::Precondition(format!("self-intersection needs mu = 1, got {}", mu)));
    }
    self_intersection_colon(f)
}

fn eliminate_second_copy(gens: &[Poly]) -> Vec<Poly> {
    let elim = VarSet::of(&[Var::X2, Var::Y2]);
    GroebnerBasis::new(gens, MonomialOrder::elimination(elim)).eliminate(elim)
}

/// Set-level self-intersection from the midpoint identity
/// `F(u + v/2) - F(u - v/2) = DF(u) v`: the union of the lines `u + ker DF(u)`
/// over critical `u`. Returns the square-free curve, `None` when empty.
pub fn self_intersection_midpoint(f: &QuadMap) -> Result<Option<Poly>> {
    let u = |p: &Poly| to_second_copy(p);
    let mut gens: Vec<Poly> = f.jacobian_minors().iter().map(u).filter(|m| !m.is_zero()).collect();
    let dx = &Poly::x() - &Poly::var(Var::X2);
    let dy = &Poly::y() - &Poly::var(Var::Y2);
    for c in f.components() {
        let g = &(&u(&c.deriv(Var::X)) * &dx) + &(&u(&c.deriv(Var::Y)) * &dy);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    let elim = eliminate_second_copy(&gens);
    if elim.is_empty() {
        return Err(Error::Precondition("rank drops to zero on the critical set".into()));
    }
    let g = Poly::gcd_all(&elim);
    Ok((!g.is_constant()).then(|| g.squarefree_part()))
}

/// `F^{-1}(F(C))`: where the fiber meets the critical set. For `mu >= 2` this is
/// the locus where preimages collide.
pub fn fold_locus(f: &QuadMap) -> Result<SIReport> {
    let mut gens: Vec<Poly> =
        f.jacobian_minors().iter().map(to_second_copy).filter(|m| !m.is_zero()).collect();
    if gens.is_empty() {
        return Err(Error::Precondition("critical set is the whole plane".into()));
    }
    gens.extend(fiber_product(f));
    let elim = eliminate_second_copy(&gens);
    let g = Poly::gcd_all(&elim);
    if elim.is_empty() || g.is_constant() {
        return Ok(SIReport::empty(f.field()));
    }
    Ok(SIReport::from_generator(g.squarefree_part(), f.field()))
}
