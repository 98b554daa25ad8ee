//! Reduction of maps with three independent quadratic parts to
//! `(x^2 + e1 y, y^2 + d2 x, xy + d3 x + e3 y)` (exact), then to
//! `(x^2 + y, y^2 + x, xy + a x + b y)` (cube roots), and equivalence
//! witnesses against the stored normal forms.

pub mod complex;
pub mod witness;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::linalg::{det, inverse, Matrix};
use crate::polycore::{rat, Rational};
use crate::quadmap::{AffineMap, AffinePair, Field, QuadMap};
use complex::{c, cbrt, cmap_of, cube_roots_of_unity, max_diff, CMap, ComplexAffine, ComplexPair, C64};

pub use witness::{find_witness, find_witness_with, supports, Witness, WitnessOptions, WitnessRoute};

/// Residual bound for the cube-root step.
pub const THETA1_TOLERANCE: f64 = 1e-9;

/// Quadratic coefficient matrix, columns `x^2, y^2, xy`.
fn phi1(f: &QuadMap) -> Matrix {
    f.coeff_matrix().into_iter().map(|r| vec![r[0].clone(), r[2].clone(), r[1].clone()]).collect()
}

/// `[e1, d2, d3, e3]` when `f` has the shape `(x^2 + e1 y, y^2 + d2 x, xy + d3 x + e3 y)`.
pub fn omega1_params(f: &QuadMap) -> Option<[Rational; 4]> {
    if f.n() != 3 {
        return None;
    }
    let m = f.coeff_matrix();
    let (o, z) = (Rational::one(), Rational::zero());
    let shape = [
        [Some(&o), Some(&z), Some(&z), Some(&z), None, Some(&z)],
        [Some(&z), Some(&z), Some(&o), None, Some(&z), Some(&z)],
        [Some(&z), Some(&o), Some(&z), None, None, Some(&z)],
    ];
    let fits = shape.iter().zip(&m).all(|(s, row)| s.iter().zip(row).all(|(want, v)| want.is_none_or(|w| w == v)));
    fits.then(|| [m[0][4].clone(), m[1][3].clone(), m[2][3].clone(), m[2][4].clone()])
}

pub fn omega1_map(p: &[Rational; 4], field: Field) -> QuadMap {
    let (o, z) = (Rational::one(), Rational::zero());
    let rows = vec![
        vec![o.clone(), z.clone(), z.clone(), z.clone(), p[0].clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), p[1].clone(), z.clone(), z.clone()],
        vec![z.clone(), o, z.clone(), p[2].clone(), p[3].clone(), z],
    ];
    QuadMap::from_rows(field, &rows).expect("valid rows")
}

/// `(x^2 + y, y^2 + x, xy + a x + b y)` as complex coefficient rows.
pub fn omega2_cmap(a: C64, b: C64) -> CMap {
    let (o, z) = (c(1.0), c(0.0));
    vec![[o, z, z, z, o, z], [z, z, o, o, z, z], [z, o, z, a, b, z]]
}

/// The exact reduction to the first normal shape; `pair.act(f) = map`.
pub fn theta(f: &QuadMap) -> Result<(QuadMap, AffinePair)> {
    if f.n() != 3 || f.dim_quadratic() != 3 {
        return Err(Error::Precondition("theta needs n = 3 and dim_q = 3".into()));
    }
    let q = phi1(f);
    if det(&q).is_zero() {
        return Err(Error::Precondition("det of the quadratic coefficient matrix is 0".into()));
    }
    let m = inverse(&q).expect("nonzero determinant");
    let linear = AffinePair {
        target: AffineMap::new(m, vec![Rational::zero(); 3])?,
        source: AffineMap::identity(2),
    };
    let h = linear.act(f)?.coeff_matrix();
    // x^2 + d1 x + ... and y^2 + e2 y + ...: complete the squares
    let shift = vec![-&h[0][3] / rat(2, 1), -&h[1][4] / rat(2, 1)];
    let translate = AffinePair {
        target: AffineMap::identity(3),
        source: AffineMap::new(crate::polycore::linalg::identity(2), shift)?,
    };
    let mid = translate.compose(&linear);
    let consts: Vec<Rational> = mid.act(f)?.coeff_matrix().iter().map(|r| -&r[5]).collect();
    let clear = AffinePair { target: AffineMap::new(crate::polycore::linalg::identity(3), consts)?, source: AffineMap::identity(2) };
    let pair = clear.compose(&mid);
    let out = pair.act(f)?;
    debug_assert!(omega1_params(&out).is_some());
    Ok((out, pair))
}

fn shear(alpha: &Rational, beta: &Rational) -> Result<AffineMap> {
    if (alpha * beta).is_one() {
        return Err(Error::Precondition("alpha * beta = 1 makes the shear singular".into()));
    }
    AffineMap::new(
        vec![vec![Rational::one(), alpha.clone()], vec![beta.clone(), Rational::one()]],
        vec![Rational::zero(); 2],
    )
}

/// `theta(F(x + alpha y, beta x + y))` with its witness relative to `f`.
pub fn theta_shift_pair(f: &QuadMap, alpha: &Rational, beta: &Rational) -> Result<(QuadMap, AffinePair)> {
    if omega1_params(f).is_none() {
        return Err(Error::Precondition("theta_shift needs a map of the first normal shape".into()));
    }
    let s = AffinePair { target: AffineMap::identity(3), source: shear(alpha, beta)? };
    let (out, p) = theta(&s.act(f)?)?;
    Ok((out, p.compose(&s)))
}

pub fn theta_shift(f: &QuadMap, alpha: &Rational, beta: &Rational) -> Result<QuadMap> {
    Ok(theta_shift_pair(f, alpha, beta)?.0)
}

/// The closed form of the new `e1` after [`theta_shift`].
pub fn shifted_e1(p: &[Rational; 4], alpha: &Rational, beta: &Rational) -> Rational {
    let [e1, d2, d3, e3] = p;
    let num = e1 + alpha.pow(3) * d2 - rat(2, 1) * alpha.pow(2) * d3 - rat(2, 1) * alpha * e3;
    let den = (Rational::one() - alpha * beta).pow(2);
    num / den
}

/// The `(alpha, beta)` search grid, `(0, 0)` first.
pub fn escape_grid() -> Vec<(Rational, Rational)> {
    let vals = [rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1), rat(1, 2), rat(-1, 2)];
    let mut out = vec![];
    for a in &vals {
        for b in &vals {
            if !(a * b).is_one() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Moves a map of the first shape off `e1 d2 = 0`. `None` only for `(x^2, y^2, xy)`.
pub fn escape(f: &QuadMap) -> Result<Option<(QuadMap, AffinePair)>> {
    for (a, b) in escape_grid() {
        let (g, p) = theta_shift_pair(f, &a, &b)?;
        let q = omega1_params(&g).expect("theta output has the shape");
        if !(&q[0] * &q[1]).is_zero() {
            return Ok(Some((g, p)));
        }
    }
    Ok(None)
}

fn rational_cbrt(q: &Rational) -> Option<Rational> {
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.abs().cbrt(), d.cbrt());
    let rn = if n.is_negative() { -rn } else { rn };
    (&rn * &rn * &rn == *n && &rd * &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theta1 {
    #[serde(serialize_with = "ser_c")]
    pub a: C64,
    #[serde(serialize_with = "ser_c")]
    pub b: C64,
    /// Which cube root of `e1^2 d2` was used, `0` being the principal one.
    pub branch: usize,
    /// `witness.act(f) ≈ (x^2 + y, y^2 + x, xy + a x + b y)`.
    pub witness: ComplexPair,
    pub residual: f64,
}

fn ser_c<S: serde::Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// The cube-root scaling on one of the three branches.
pub fn theta1_branch(f: &QuadMap, branch: usize) -> Result<Theta1> {
    let [e1, d2, d3, e3] = omega1_params(f)
        .ok_or_else(|| Error::Precondition("theta1 needs a map of the first normal shape".into()))?;
    if (&e1 * &d2).is_zero() {
        return Err(Error::Precondition("theta1 needs e1 d2 != 0".into()));
    }
    let q = |r: &Rational| c(crate::polycore::rational::to_f64(r));
    let (e1c, d2c) = (q(&e1), q(&d2));
    let r1 = cbrt(e1c * e1c * d2c) * cube_roots_of_unity()[branch % 3];
    let r2 = e1c * d2c / r1;
    let witness = ComplexPair {
        target: ComplexAffine::diagonal(&[r1.powi(-2), r2.powi(-2), (e1c * d2c).inv()]),
        source: ComplexAffine::diagonal(&[r1, r2]),
    };
    let (a, b) = (q(&d3) / r2, q(&e3) / r1);
    let residual = max_diff(&witness.act(&cmap_of(f)), &omega2_cmap(a, b));
    if residual > THETA1_TOLERANCE {
        return Err(Error::ResidualExceeded { residual, tolerance: THETA1_TOLERANCE });
    }
    Ok(Theta1 { a, b, branch: branch % 3, witness, residual })
}

pub fn theta1(f: &QuadMap) -> Result<Theta1> {
    theta1_branch(f, 0)
}

/// The same scaling when `e1^2 d2` is the cube of a rational.
pub fn theta1_exact(f: &QuadMap) -> Result<Option<(QuadMap, AffinePair)>> {
    let [e1, d2, d3, e3] = omega1_params(f)
        .ok_or_else(|| Error::Precondition("theta1 needs a map of the first normal shape".into()))?;
    if (&e1 * &d2).is_zero() {
        return Err(Error::Precondition("theta1 needs e1 d2 != 0".into()));
    }
    let Some(r1) = rational_cbrt(&(&e1 * &e1 * &d2)) else {
        return Ok(None);
    };
    let r2 = &e1 * &d2 / &r1;
    let diag = |v: Vec<Rational>| {
        let n = v.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { v[i].clone() } else { Rational::zero() }).collect())
            .collect();
        AffineMap::new(m, vec![Rational::zero(); n])
    };
    let inv2 = |r: &Rational| (r * r).recip();
    let pair = AffinePair {
        target: diag(vec![inv2(&r1), inv2(&r2), (&e1 * &d2).recip()])?,
        source: diag(vec![r1.clone(), r2.clone()])?,
    };
    let out = pair.act(f)?;
    debug_assert_eq!(omega1_params(&out).map(|p| [p[2].clone(), p[3].clone()]), Some([&d3 / &r2, &e3 / &r1]));
    Ok(Some((out, pair)))
}

/// Which branch of the decomposition an `n = 3` map falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `dim_q <= 2`: fewer than three independent quadratic parts.
    LowQuadraticRank,
    /// Equivalent to `(x^2, y^2, xy)`.
    SquaresAndProduct,
    /// Equivalent to some `(x^2 + y, y^2 + x, xy + a x + b y)`.
    OmegaTwo,
}

pub fn route(f: &QuadMap) -> Result<Route> {
    if f.n() != 3 {
        return Err(Error::DimensionMismatch("routing is defined for n = 3".into()));
    }
    if f.dim_quadratic() <= 2 {
        return Ok(Route::LowQuadraticRank);
    }
    let (g, _) = theta(f)?;
    Ok(match escape(&g)? {
        Some(_) => Route::OmegaTwo,
        None => Route::SquaresAndProduct,
    })
}

/// The whole chain for a map on the [`Route::OmegaTwo`] branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaTwoReduction {
    pub theta1: Theta1,
    /// `pair.act(f) ≈ (x^2 + y, y^2 + x, xy + a x + b y)`, measured on `f` itself.
    pub pair: ComplexPair,
    pub residual: f64,
    /// Exact version when the cube roots are rational.
    #[serde(skip)]
    pub exact: Option<(QuadMap, AffinePair)>,
}

pub fn reduce_to_omega2(f: &QuadMap, branch: usize) -> Result<OmegaTwoReduction> {
    let (g, p1) = theta(f)?;
    let (h, p2) = escape(&g)?.ok_or_else(|| Error::Precondition("map is equivalent to (x^2, y^2, xy)".into()))?;
    let first = p2.compose(&p1);
    let t1 = theta1_branch(&h, branch)?;
    let pair = t1.witness.compose(&ComplexPair::from_exact(&first));
    let residual = max_diff(&pair.act(&cmap_of(f)), &omega2_cmap(t1.a, t1.b));
    let exact = theta1_exact(&h)?.map(|(m, p3)| (m, p3.compose(&first)));
    Ok(OmegaTwoReduction { theta1: t1, pair, residual, exact })
}
