use num_traits::Zero;

use super::poly::{Poly, Var};
use crate::error::{Error, Result};

/// Sylvester matrix of `p`, `q` in `v`, rows of Poly coefficients.
pub fn sylvester_matrix(p: &Poly, q: &Poly, v: Var) -> Vec<Vec<Poly>> {
    let m = p.degree_in(v);
    let n = q.degree_in(v);
    let size = m + n;
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let mut rows = vec![];
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for k in 0..=m {
            row[i + (m - k)] = pc[k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for k in 0..=n {
            row[i + (n - k)] = qc[k].clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free determinant; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub fn resultant(p: &Poly, q: &Poly, v: Var) -> Result<Poly> {
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero());
    }
    if p.degree_in(v) == 0 && q.degree_in(v) == 0 {
        return Err(Error::ConstantInVariable(v.name()));
    }
    Ok(bareiss_det(sylvester_matrix(p, q, v)))
}

/// `res(p, dp/dv)` without the leading-coefficient normalization.
pub fn discriminant(p: &Poly, v: Var) -> Result<Poly> {
    if p.degree_in(v) == 0 {
        return Err(Error::ConstantInVariable(v.name()));
    }
    let d = p.deriv(v);
    if d.is_zero() {
        return Ok(Poly::zero());
    }
    resultant(p, &d, v)
}

pub fn is_zero_poly(p: &Poly) -> bool {
    p.terms().all(|(_, c)| c.is_zero())
}
