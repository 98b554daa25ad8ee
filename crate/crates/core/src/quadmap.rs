//! Quadratic maps `K^2 -> K^n` and the action of `GA(n) x GA(2)`.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::linalg::{self, Matrix};
use crate::polycore::poly::NVARS;
use crate::polycore::{Monomial, Poly, Rational, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Field {
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "R")]
    Real,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Complex => "C",
            Field::Real => "R",
        })
    }
}

/// Coefficient order for the 6-dimensional space of quadrics.
pub const COEFF_BASIS: [(u16, u16); 6] = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)];

pub fn coeff_vector(p: &Poly) -> Vec<Rational> {
    COEFF_BASIS.iter().map(|&(a, b)| p.coeff(&Monomial::xy(a, b))).collect()
}

pub fn poly_from_coeffs(c: &[Rational]) -> Poly {
    Poly::from_terms(
        COEFF_BASIS
            .iter()
            .zip(c)
            .map(|(&(a, b), v)| (Monomial::xy(a, b), v.clone())),
    )
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadMap {
    field: Field,
    comps: Vec<Poly>,
}

impl QuadMap {
    pub fn new(field: Field, comps: Vec<Poly>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::NotQuadratic("a map needs at least one component".into()));
        }
        for (i, p) in comps.iter().enumerate() {
            if !p.support().is_subset(VarSet::XY) {
                return Err(Error::NotQuadratic(format!("component {} uses variables other than x, y", i + 1)));
            }
            if p.degree() > 2 {
                return Err(Error::NotQuadratic(format!("component {} has degree {}", i + 1, p.degree())));
            }
        }
        Ok(QuadMap { field, comps })
    }

    pub fn from_rows(field: Field, rows: &[Vec<Rational>]) -> Result<Self> {
        QuadMap::new(field, rows.iter().map(|r| poly_from_coeffs(r)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn with_field(&self, field: Field) -> Self {
        QuadMap { field, comps: self.comps.clone() }
    }
    pub fn n(&self) -> usize {
        self.comps.len()
    }
    pub fn components(&self) -> &[Poly] {
        &self.comps
    }
    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    /// `n x 6` coefficient matrix on [`COEFF_BASIS`].
    pub fn coeff_matrix(&self) -> Matrix {
        self.comps.iter().map(coeff_vector).collect()
    }

    pub fn dim_affine(&self) -> usize {
        let m: Matrix = self.coeff_matrix().into_iter().map(|r| r[..5].to_vec()).collect();
        linalg::rank(&m)
    }

    pub fn dim_quadratic(&self) -> usize {
        let m: Matrix = self.coeff_matrix().into_iter().map(|r| r[..3].to_vec()).collect();
        linalg::rank(&m)
    }

    /// Standard inclusion into `K^m`, `m >= n`.
    pub fn embed(&self, m: usize) -> QuadMap {
        let mut comps = self.comps.clone();
        comps.resize(m.max(self.n()), Poly::zero());
        QuadMap { field: self.field, comps }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Vec<Rational> {
        self.comps.iter().map(|p| p.eval_xy(x, y)).collect()
    }

    /// 2x2 minors of the jacobian. For `n = 3` they are the cyclic minors on
    /// rows (2,3), (3,1), (1,2); otherwise all pairs `i < j` in lex order.
    pub fn jacobian_minors(&self) -> Vec<Poly> {
        let grads: Vec<(Poly, Poly)> = self
            .comps
            .iter()
            .map(|p| (p.deriv(crate::polycore::Var::X), p.deriv(crate::polycore::Var::Y)))
            .collect();
        let minor = |i: usize, j: usize| &(&grads[i].0 * &grads[j].1) - &(&grads[i].1 * &grads[j].0);
        if self.n() == 3 {
            vec![minor(1, 2), minor(2, 0), minor(0, 1)]
        } else {
            let mut out = vec![];
            for i in 0..self.n() {
                for j in i + 1..self.n() {
                    out.push(minor(i, j));
                }
            }
            out
        }
    }

    /// Rows `(a_i, c_i, b_i)` for `f_i = a_i x^2 + b_i xy + c_i y^2 + ...`,
    /// i.e. the `x^2`, `y^2`, `xy` coefficients in that order. Requires `n = 3`.
    pub fn phi1(&self) -> Result<Matrix> {
        if self.n() != 3 {
            return Err(Error::DimensionMismatch(format!("phi1 needs n = 3, got {}", self.n())));
        }
        Ok(self
            .coeff_matrix()
            .into_iter()
            .map(|r| vec![r[0].clone(), r[2].clone(), r[1].clone()])
            .collect())
    }

    /// Reduced row echelon basis of the span of the jacobian minors.
    pub fn critical_space(&self) -> Vec<Poly> {
        let m: Matrix = self.jacobian_minors().iter().map(coeff_vector).collect();
        let (r, pivots) = linalg::rref(&m);
        r.into_iter().take(pivots.len()).map(|row| poly_from_coeffs(&row)).collect()
    }

    pub fn display_with(&self, names: &[&str; NVARS]) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.display_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for QuadMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for QuadMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadMap[{}]{}", self.field, self)
    }
}

/// `4AC - B^2` for `J = A x^2 + B xy + C y^2 + ...`.
pub fn phi2(j: &Poly) -> Rational {
    let a = j.coeff(&Monomial::xy(2, 0));
    let b = j.coeff(&Monomial::xy(1, 1));
    let c = j.coeff(&Monomial::xy(0, 2));
    Rational::from_integer(4.into()) * a * c - &b * &b
}

/// `v -> A v + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub linear: Matrix,
    pub shift: Vec<Rational>,
}

impl AffineMap {
    pub fn new(linear: Matrix, shift: Vec<Rational>) -> Result<Self> {
        let n = linear.len();
        if linear.iter().any(|r| r.len() != n) || shift.len() != n {
            return Err(Error::DimensionMismatch("affine map must be square".into()));
        }
        if linalg::det(&linear).is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(AffineMap { linear, shift })
    }
    pub fn identity(n: usize) -> Self {
        AffineMap { linear: linalg::identity(n), shift: vec![Rational::zero(); n] }
    }
    pub fn dim(&self) -> usize {
        self.linear.len()
    }
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.linear, v)
            .into_iter()
            .zip(&self.shift)
            .map(|(a, b)| a + b)
            .collect()
    }
    /// `self ∘ other`
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: linalg::mat_mul(&self.linear, &other.linear),
            shift: self.apply(&other.shift),
        }
    }
    pub fn inverse(&self) -> AffineMap {
        let inv = linalg::inverse(&self.linear).expect("affine maps are invertible");
        let shift = linalg::mat_vec(&inv, &self.shift).into_iter().map(|v| -v).collect();
        AffineMap { linear: inv, shift }
    }
    /// Component polynomials in `x, y`; requires `dim = 2`.
    pub fn as_polys(&self) -> [Poly; 2] {
        let row = |i: usize| {
            &(&Poly::x().scale(&self.linear[i][0]) + &Poly::y().scale(&self.linear[i][1]))
                + &Poly::constant(self.shift[i].clone())
        };
        [row(0), row(1)]
    }
    pub fn random(n: usize, rng: &mut impl Rng, range: i64) -> AffineMap {
        loop {
            let linear: Matrix = (0..n)
                .map(|_| (0..n).map(|_| small_rational(rng, range)).collect())
                .collect();
            let shift = (0..n).map(|_| small_rational(rng, range)).collect();
            if let Ok(a) = AffineMap::new(linear, shift) {
                return a;
            }
        }
    }
}

pub fn small_rational(rng: &mut impl Rng, range: i64) -> Rational {
    let num = rng.gen_range(-range..=range);
    let den = rng.gen_range(1..=range.max(1));
    Rational::new(num.into(), den.into())
}

/// An element `(L, R)` of `GA(n) x GA(2)`, acting by `F -> L ∘ F ∘ R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePair {
    pub target: AffineMap,
    pub source: AffineMap,
}

impl AffinePair {
    pub fn identity(n: usize) -> Self {
        AffinePair { target: AffineMap::identity(n), source: AffineMap::identity(2) }
    }

    pub fn random(n: usize, rng: &mut impl Rng, range: i64) -> Self {
        AffinePair { target: AffineMap::random(n, rng, range), source: AffineMap::random(2, rng, range) }
    }

    pub fn act(&self, f: &QuadMap) -> Result<QuadMap> {
        if self.target.dim() != f.n() || self.source.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "pair acts on K^{} but the map has n = {}",
                self.target.dim(),
                f.n()
            )));
        }
        let [rx, ry] = self.source.as_polys();
        let mut subs: [Option<Poly>; NVARS] = Default::default();
        subs[0] = Some(rx);
        subs[1] = Some(ry);
        let inner: Vec<Poly> = f.components().iter().map(|p| p.compose(&subs)).collect();
        let comps = (0..f.n())
            .map(|i| {
                let mut acc = Poly::constant(self.target.shift[i].clone());
                for (j, p) in inner.iter().enumerate() {
                    acc += p.scale(&self.target.linear[i][j]);
                }
                acc
            })
            .collect();
        QuadMap::new(f.field(), comps)
    }

    /// The pair acting as `self` after `first`.
    pub fn compose(&self, first: &AffinePair) -> AffinePair {
        AffinePair {
            target: self.target.compose(&first.target),
            source: first.source.compose(&self.source),
        }
    }

    pub fn inverse(&self) -> AffinePair {
        AffinePair { target: self.target.inverse(), source: self.source.inverse() }
    }
}

/// `minors(L ∘ F) = cof(P) · minors(F)` for `L = P v + l`, with the cyclic
/// minor order when `n = 3`.
pub fn cofactor_transform_check(p: &Matrix, f: &QuadMap) -> Result<bool> {
    if f.n() != 3 || p.len() != 3 {
        return Err(Error::DimensionMismatch("cofactor check needs n = 3".into()));
    }
    let l = AffineMap::new(p.clone(), vec![Rational::zero(); 3])?;
    let pair = AffinePair { target: l, source: AffineMap::identity(2) };
    let lhs = pair.act(f)?.jacobian_minors();
    let d = linalg::det(p);
    let inv = linalg::inverse(p).ok_or(Error::SingularLinearPart)?;
    let cof: Matrix = linalg::transpose(&inv)
        .into_iter()
        .map(|r| r.into_iter().map(|v| v * &d).collect())
        .collect();
    let minors = f.jacobian_minors();
    let rhs: Vec<Poly> = cof
        .iter()
        .map(|row| {
            row.iter()
                .zip(&minors)
                .fold(Poly::zero(), |acc, (c, m)| &acc + &m.scale(c))
        })
        .collect();
    Ok(lhs == rhs)
}

/// Three quadrics from integer coefficient rows `[x^2, xy, y^2, x, y, 1]`.
pub fn map_from_ints(field: Field, rows: &[[i64; 6]]) -> QuadMap {
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    QuadMap::from_rows(field, &rows).expect("valid quadric rows")
}

pub fn one() -> Rational {
    Rational::one()
}
