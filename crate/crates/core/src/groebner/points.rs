use num_complex::Complex64;
use num_traits::Zero;

use super::buchberger::GroebnerBasis;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polycore::linalg::{charpoly, solve, transpose};
use crate::polycore::{rational::int, Poly, Rational, UPoly, VarSet};

/// Points sharing one multiplicity and one defining factor in `l = x + c*y`.
#[derive(Clone, Debug, PartialEq)]
pub enum PointCluster {
    Rational {
        x: Rational,
        y: Rational,
        multiplicity: usize,
    },
    /// Points whose `l`-values are the roots of `min_poly`, with no rational root.
    Algebraic {
        min_poly: UPoly,
        count: usize,
        multiplicity: usize,
        real_count: usize,
    },
}

impl PointCluster {
    pub fn multiplicity(&self) -> usize {
        match self {
            PointCluster::Rational { multiplicity, .. } | PointCluster::Algebraic { multiplicity, .. } => {
                *multiplicity
            }
        }
    }
    pub fn count(&self) -> usize {
        match self {
            PointCluster::Rational { .. } => 1,
            PointCluster::Algebraic { count, .. } => *count,
        }
    }
}

/// Zeros of a zero-dimensional ideal of `Q[x, y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    /// Length of the quotient algebra.
    pub length: usize,
    pub distinct: usize,
    pub real_distinct: usize,
    /// Separating form `l = x + sep * y`.
    pub sep: Rational,
    /// On the zeros, `x = rur_x(l)` and `y = rur_y(l)`.
    pub rur_x: UPoly,
    pub rur_y: UPoly,
    pub clusters: Vec<PointCluster>,
}

impl PointSet {
    fn empty() -> Self {
        PointSet {
            length: 0,
            distinct: 0,
            real_distinct: 0,
            sep: Rational::zero(),
            rur_x: UPoly::zero(),
            rur_y: UPoly::zero(),
            clusters: vec![],
        }
    }

    /// Multiplicities of the distinct points, descending.
    pub fn partition(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self
            .clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.multiplicity(), c.count()))
            .collect();
        p.sort_by(|a, b| b.cmp(a));
        p
    }

    /// Numerical coordinates of every distinct point with its multiplicity.
    pub fn complex_points(&self) -> Vec<(Complex64, Complex64, usize)> {
        let mut out = vec![];
        for c in &self.clusters {
            match c {
                PointCluster::Rational { x, y, multiplicity } => out.push((
                    Complex64::new(crate::polycore::rational::to_f64(x), 0.0),
                    Complex64::new(crate::polycore::rational::to_f64(y), 0.0),
                    *multiplicity,
                )),
                PointCluster::Algebraic { min_poly, multiplicity, .. } => {
                    for l in min_poly.complex_roots() {
                        out.push((self.rur_x.eval_complex(l), self.rur_y.eval_complex(l), *multiplicity));
                    }
                }
            }
        }
        out
    }
}

fn sep_candidates() -> impl Iterator<Item = Rational> {
    std::iter::once(int(0)).chain((1..).flat_map(|k| [int(k), int(-k)]))
}

/// Solves a zero-dimensional system in `x, y` exactly.
pub fn solve_xy(gens: &[Poly]) -> Result<PointSet> {
    if !gens.iter().all(|g| g.support().is_subset(VarSet::XY)) {
        return Err(Error::Precondition("system must involve only x and y".into()));
    }
    let gb = GroebnerBasis::new(gens, MonomialOrder::DegRevLex);
    if gb.is_unit() {
        return Ok(PointSet::empty());
    }
    let basis = gb
        .standard_monomials(VarSet::XY)
        .ok_or_else(|| Error::Precondition("system is not zero-dimensional".into()))?;
    let length = basis.len();
    let x = Poly::x();
    let y = Poly::y();

    // Seidenberg: adjoin the square-free parts of the coordinate eliminants
    let chi = |f: &Poly| charpoly(&gb.multiplication_matrix(VarSet::XY, f).unwrap());
    let mut rad_gens = gb.basis();
    rad_gens.push(Poly::from_upoly(&chi(&x).squarefree_part(), crate::polycore::Var::X));
    rad_gens.push(Poly::from_upoly(&chi(&y).squarefree_part(), crate::polycore::Var::Y));
    let rad = GroebnerBasis::new(&rad_gens, MonomialOrder::DegRevLex);
    let rad_basis = rad.standard_monomials(VarSet::XY).expect("radical is zero-dimensional");
    let distinct = rad_basis.len();

    let (sep, chi_l) = sep_candidates()
        .take(64)
        .map(|c| {
            let l = &x + &y.scale(&c);
            (c, chi(&l))
        })
        .find(|(_, p)| p.squarefree_part().degree() == distinct)
        .ok_or_else(|| Error::Inconsistent("no separating linear form found".into()))?;

    // rational univariate representation on the radical
    let l = &x + &y.scale(&sep);
    let mut powers = vec![];
    let mut lp = Poly::one();
    for _ in 0..distinct {
        powers.push(rad.coordinates(&rad_basis, &lp));
        lp = &lp * &l;
    }
    let pm = transpose(&powers);
    let rur = |f: &Poly| {
        let coords = rad.coordinates(&rad_basis, f);
        UPoly::new(solve(&pm, &coords).expect("separating form generates the algebra"))
    };
    let rur_x = rur(&x);
    let rur_y = rur(&y);

    let mut clusters = vec![];
    let mut real_distinct = 0;
    for (factor, mult) in chi_l.squarefree_factors() {
        let mut rest = factor.clone();
        for r in factor.rational_roots() {
            clusters.push(PointCluster::Rational {
                x: rur_x.eval(&r),
                y: rur_y.eval(&r),
                multiplicity: mult,
            });
            real_distinct += 1;
            rest = rest.div_exact(&UPoly::linear_root(&r)).unwrap();
        }
        if rest.degree() > 0 {
            let real_count = rest.count_real_roots();
            real_distinct += real_count;
            clusters.push(PointCluster::Algebraic {
                count: rest.degree(),
                min_poly: rest.monic(),
                multiplicity: mult,
                real_count,
            });
        }
    }
    Ok(PointSet {
        length,
        distinct,
        real_distinct,
        sep,
        rur_x,
        rur_y,
        clusters,
    })
}
