use super::buchberger::GroebnerBasis;
use super::order::MonomialOrder;
use super::QuotientDim;
use crate::error::{Error, Result};
use crate::polycore::{Poly, Rational, Var, VarSet};

fn t_vars() -> VarSet {
    VarSet::of(&[Var::T])
}

fn t_trick(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let t = Poly::var(Var::T);
    let one_minus_t = &Poly::one() - &t;
    a.iter()
        .map(|p| &t * p)
        .chain(b.iter().map(|p| &one_minus_t * p))
        .collect()
}

/// Generators of `<a> ∩ <b>`. Inputs must not involve `t`.
pub fn intersect(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    GroebnerBasis::new(&t_trick(a, b), MonomialOrder::elimination(t_vars())).eliminate(t_vars())
}

/// Generators of `<a> : h`.
pub fn quotient_by(a: &[Poly], h: &Poly) -> Vec<Poly> {
    intersect(a, std::slice::from_ref(h))
        .into_iter()
        .map(|g| g.div_exact(h).expect("intersection with <h> is divisible by h"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum EliminatedGenerator {
    /// The eliminated ideal is zero.
    Zero,
    /// The eliminated ideal is the whole ring.
    Unit,
    Curve(Poly),
}

/// `((I : (x - x2)) ∩ (I : (y - y2))) ∩ Q[x, y]`, required to be principal.
///
/// The two quotients are intersected and `x2, y2` eliminated in a single basis
/// computation under the block order `{t, x2, y2} > {x, y}`.
pub fn colon_and_eliminate(ideal: &[Poly]) -> Result<EliminatedGenerator> {
    let hx = &Poly::x() - &Poly::var(Var::X2);
    let hy = &Poly::y() - &Poly::var(Var::Y2);
    let qx = quotient_by(ideal, &hx);
    let qy = quotient_by(ideal, &hy);
    let elim = VarSet::of(&[Var::T, Var::X2, Var::Y2]);
    let gb = GroebnerBasis::new(&t_trick(&qx, &qy), MonomialOrder::elimination(elim));
    let gens = gb.eliminate(elim);
    match gens.len() {
        0 => Ok(EliminatedGenerator::Zero),
        1 if gens[0].is_constant() => Ok(EliminatedGenerator::Unit),
        1 => Ok(EliminatedGenerator::Curve(gens[0].normalized())),
        n => Err(Error::NotPrincipal(n)),
    }
}

/// `dim Q[x,y]/(I + m_p^N)` at the stable `N`, for an isolated zero `p`.
pub fn local_multiplicity(ideal: &[Poly], point: &[Rational; 2]) -> Result<usize> {
    if ideal
        .iter()
        .any(|g| !g.eval_xy(&point[0], &point[1]).eq(&Rational::from_integer(0.into())))
    {
        return Err(Error::Precondition("point is not a zero of the ideal".into()));
    }
    let mx = &Poly::x() - &Poly::constant(point[0].clone());
    let my = &Poly::y() - &Poly::constant(point[1].clone());
    let mut prev: Option<usize> = None;
    for n in 1..=8u32 {
        let mut gens = ideal.to_vec();
        for i in 0..=n {
            gens.push(&mx.pow(i) * &my.pow(n - i));
        }
        let gb = GroebnerBasis::new(&gens, MonomialOrder::DegRevLex);
        let QuotientDim::Finite(d) = gb.quotient_dimension(VarSet::XY) else {
            unreachable!("contains a power of the maximal ideal")
        };
        if prev == Some(d) {
            return Ok(d);
        }
        prev = Some(d);
    }
    Err(Error::Precondition("point is not an isolated zero".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::int;

    #[test]
    fn intersection_of_principal_ideals() {
        let x = Poly::x();
        let y = Poly::y();
        let i = intersect(&[&x * &y], &[&x * &x]);
        assert_eq!(i, vec![&(&x * &x) * &y]);
    }

    #[test]
    fn quotient_removes_factor() {
        let x = Poly::x();
        let y = Poly::y();
        let q = quotient_by(&[&(&x * &x) * &y, &y * &y], &y);
        let gb = GroebnerBasis::new(&q, MonomialOrder::DegRevLex);
        assert_eq!(gb.basis(), vec![y.clone(), &x * &x]);
    }

    #[test]
    fn multiplicity_of_a_cusp_point() {
        let x = Poly::x();
        let y = Poly::y();
        // <x^2, y>: length 2; <x^2, xy, y^2>: length 3
        assert_eq!(local_multiplicity(&[&x * &x, y.clone()], &[int(0), int(0)]).unwrap(), 2);
        assert_eq!(
            local_multiplicity(&[&x * &x, &x * &y, &y * &y], &[int(0), int(0)]).unwrap(),
            3
        );
        assert!(local_multiplicity(std::slice::from_ref(&x), &[int(0), int(0)]).is_err());
        assert!(local_multiplicity(&[&x - &Poly::int(1)], &[int(0), int(0)]).is_err());
    }
}
