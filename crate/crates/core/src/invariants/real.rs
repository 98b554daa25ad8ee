use serde::Serialize;

use num_traits::{Signed, Zero};

use super::critical::{critical_scheme, CriticalKind};
use crate::error::{Error, Result};
use crate::polycore::linalg::{det, rank};
use crate::polycore::{Monomial, Poly, Rational};
use crate::quadmap::{coeff_vector, Field, QuadMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum ConicType {
    Ellipse,
    ImaginaryEllipse,
    Hyperbola,
    Parabola,
    RealLinePair,
    /// Two conjugate lines meeting in one real point.
    ComplexLinePair,
    ParallelLines,
    ComplexParallelLines,
    DoubleLine,
    Line,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum BinaryFormType {
    Square,
    RealProduct,
    IrreducibleOverReals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum PencilSignature {
    TwoRealDegenerate,
    NoRealDegenerate,
    SharedFactor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealSignatures {
    pub real_critical_count: Option<usize>,
    pub conic_type: Option<ConicType>,
    pub binary_form_type: Option<BinaryFormType>,
    pub pencil_signature: Option<PencilSignature>,
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn quad_coeffs(p: &Poly) -> [Rational; 3] {
    [p.coeff(&Monomial::xy(2, 0)), p.coeff(&Monomial::xy(1, 1)), p.coeff(&Monomial::xy(0, 2))]
}

/// Real affine type of a curve of degree 1 or 2 in `x, y`.
pub fn conic_type(p: &Poly) -> Option<ConicType> {
    match p.degree() {
        1 => return Some(ConicType::Line),
        2 => {}
        _ => return None,
    }
    let c = coeff_vector(p);
    let half = Rational::new(1.into(), 2.into());
    let (a, b, cc, d, e, f) = (&c[0], &c[1] * &half, &c[2], &c[3] * &half, &c[4] * &half, &c[5]);
    let m = vec![
        vec![a.clone(), b.clone(), d.clone()],
        vec![b.clone(), cc.clone(), e.clone()],
        vec![d.clone(), e.clone(), f.clone()],
    ];
    let big = det(&m);
    let small = a * cc - &b * &b;
    Some(if !big.is_zero() {
        match sign(&small) {
            1 => {
                if sign(&(a * &big)) < 0 {
                    ConicType::Ellipse
                } else {
                    ConicType::ImaginaryEllipse
                }
            }
            -1 => ConicType::Hyperbola,
            _ => ConicType::Parabola,
        }
    } else {
        match sign(&small) {
            -1 => ConicType::RealLinePair,
            1 => ConicType::ComplexLinePair,
            _ => {
                if rank(&m) == 1 {
                    ConicType::DoubleLine
                } else {
                    // parallel pair: the restriction to a transversal line decides
                    let disc = if !a.is_zero() {
                        &c[3] * &c[3] - Rational::from_integer(4.into()) * a * f
                    } else {
                        &c[4] * &c[4] - Rational::from_integer(4.into()) * cc * f
                    };
                    if disc.is_positive() {
                        ConicType::ParallelLines
                    } else {
                        ConicType::ComplexParallelLines
                    }
                }
            }
        }
    })
}

pub fn binary_form_type(q: &[Rational; 3]) -> BinaryFormType {
    let disc = &q[1] * &q[1] - Rational::from_integer(4.into()) * &q[0] * &q[2];
    match sign(&disc) {
        0 => BinaryFormType::Square,
        1 => BinaryFormType::RealProduct,
        _ => BinaryFormType::IrreducibleOverReals,
    }
}

/// Sign type of `disc(l q1 + m q2)` as a binary form in `(l, m)`.
pub fn pencil_signature(q1: &[Rational; 3], q2: &[Rational; 3]) -> PencilSignature {
    let four = Rational::from_integer(4.into());
    // (l B1 + m B2)^2 - 4 (l A1 + m A2)(l C1 + m C2)
    let p = &q1[1] * &q1[1] - &four * &q1[0] * &q1[2];
    let q = Rational::from_integer(2.into()) * &q1[1] * &q2[1] - &four * (&q1[0] * &q2[2] + &q2[0] * &q1[2]);
    let r = &q2[1] * &q2[1] - &four * &q2[0] * &q2[2];
    match sign(&(&q * &q - &four * &p * &r)) {
        1 => PencilSignature::TwoRealDegenerate,
        -1 => PencilSignature::NoRealDegenerate,
        _ => PencilSignature::SharedFactor,
    }
}

/// Basis of the span of the quadratic parts, in reduced echelon form.
pub fn quadratic_span(f: &QuadMap) -> Vec<[Rational; 3]> {
    let m: Vec<Vec<Rational>> = f.coeff_matrix().into_iter().map(|r| r[..3].to_vec()).collect();
    let (r, piv) = crate::polycore::linalg::rref(&m);
    r.into_iter()
        .take(piv.len())
        .map(|row| [row[0].clone(), row[1].clone(), row[2].clone()])
        .collect()
}

pub fn real_signatures(f: &QuadMap) -> Result<RealSignatures> {
    if f.field() != Field::Real {
        return Err(Error::FieldMismatch("real signatures need a map over R".into()));
    }
    let crit = critical_scheme(f);
    let real_critical_count = match crit.kind {
        CriticalKind::Empty => Some(0),
        CriticalKind::Finite => crit.points.as_ref().map(|p| p.real_distinct),
        _ => None,
    };
    let conic = crit.curve_poly.as_ref().and_then(conic_type);
    let span = quadratic_span(f);
    Ok(RealSignatures {
        real_critical_count,
        conic_type: conic,
        binary_form_type: (span.len() == 1).then(|| binary_form_type(&span[0])),
        pencil_signature: (span.len() == 2).then(|| pencil_signature(&span[0], &span[1])),
    })
}

pub fn quadratic_part(p: &Poly) -> [Rational; 3] {
    quad_coeffs(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::int;
    use crate::quadmap::map_from_ints;

    fn poly(c: [i64; 6]) -> Poly {
        crate::quadmap::poly_from_coeffs(&c.map(int))
    }

    #[test]
    fn conic_zoo() {
        assert_eq!(conic_type(&poly([0, 4, 0, 0, 0, -1])), Some(ConicType::Hyperbola));
        assert_eq!(conic_type(&poly([4, 0, 4, 0, 0, -1])), Some(ConicType::Ellipse));
        assert_eq!(conic_type(&poly([1, 0, 1, 0, 0, 1])), Some(ConicType::ImaginaryEllipse));
        assert_eq!(conic_type(&poly([2, 0, 0, 0, -1, 0])), Some(ConicType::Parabola));
        assert_eq!(conic_type(&poly([0, 4, 0, 0, 0, 0])), Some(ConicType::RealLinePair));
        assert_eq!(conic_type(&poly([1, 0, 1, 0, 0, 0])), Some(ConicType::ComplexLinePair));
        assert_eq!(conic_type(&poly([2, 0, 0, -1, 0, 0])), Some(ConicType::ParallelLines));
        assert_eq!(conic_type(&poly([1, 0, 0, 0, 0, 1])), Some(ConicType::ComplexParallelLines));
        assert_eq!(conic_type(&poly([1, 0, 0, 0, 0, 0])), Some(ConicType::DoubleLine));
        assert_eq!(conic_type(&poly([0, 0, 0, 1, 1, 0])), Some(ConicType::Line));
    }

    #[test]
    fn pencils() {
        let g3 = map_from_ints(Field::Real, &[[1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]);
        let g3p = map_from_ints(Field::Real, &[[1, 0, -1, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]);
        assert_eq!(real_signatures(&g3).unwrap().pencil_signature, Some(PencilSignature::TwoRealDegenerate));
        assert_eq!(real_signatures(&g3p).unwrap().pencil_signature, Some(PencilSignature::NoRealDegenerate));
        let g4 = map_from_ints(Field::Real, &[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]);
        assert_eq!(real_signatures(&g4).unwrap().pencil_signature, Some(PencilSignature::SharedFactor));
    }

    #[test]
    fn binary_forms_and_counts() {
        let f25 = map_from_ints(Field::Real, &[[0, 1, 0, 0, 0, 0], [0; 6], [0; 6]]);
        let f25p = map_from_ints(Field::Real, &[[1, 0, 1, 0, 0, 0], [0; 6], [0; 6]]);
        assert_eq!(real_signatures(&f25).unwrap().binary_form_type, Some(BinaryFormType::RealProduct));
        assert_eq!(real_signatures(&f25p).unwrap().binary_form_type, Some(BinaryFormType::IrreducibleOverReals));
        let f1p = map_from_ints(Field::Real, &[[1, 0, -1, 1, 0, 0], [0, 2, 0, 0, -1, 0], [-3, 0, 1, 0, 0, 0]]);
        assert_eq!(real_signatures(&f1p).unwrap().real_critical_count, Some(3));
        assert!(real_signatures(&f1p.with_field(Field::Complex)).is_err());
    }
}
