//! Dense linear algebra over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{common_denominator, Rational};
use super::univariate::UPoly;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![Rational::zero(); c]; r]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Rank by fraction-free elimination on the row-scaled integer matrix.
pub fn rank(m: &Matrix) -> usize {
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let d = common_denominator(row.iter());
            row.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let small: Option<Vec<Vec<i128>>> =
        a.iter().map(|row| row.iter().map(|x| x.to_i128()).collect()).collect();
    small.and_then(bareiss_rank_i128).unwrap_or_else(|| bareiss_rank(a))
}

/// `None` as soon as an intermediate minor overflows.
fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c];
            for j in c + 1..cols {
                let v = pivot[c].checked_mul(row[j])?.checked_sub(lead.checked_mul(pivot[j])?)?;
                row[j] = v / prev;
            }
            row[c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Some(r)
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form together with pivot columns and a transform `T`
/// (invertible, `T * m = rref`).
pub fn rref_with_transform(m: &Matrix) -> (Matrix, Vec<usize>, Matrix) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut t = identity(rows);
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        t.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
                for j in 0..rows {
                    let v = &f * &t[r][j];
                    t[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots, t)
}

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (a, p, _) = rref_with_transform(m);
    (a, p)
}

pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let v = &f * &a[c][j];
                a[i][j] -= v;
            }
        }
    }
    d
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let (r, pivots, t) = rref_with_transform(m);
    (pivots.len() == m.len() && r.len() == m.len()).then_some(t)
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m v = b`, if one exists.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut v = vec![Rational::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = r[i][cols].clone();
    }
    Some(v)
}

/// Characteristic polynomial `det(z I - m)` by Faddeev-LeVerrier, run on the
/// integer matrix `d m` with `d` the common denominator.
pub fn charpoly(m: &Matrix) -> UPoly {
    let n = m.len();
    let d = common_denominator(m.iter().flatten());
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|v| v.numer() * (&d / v.denom())).collect())
        .collect();
    let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        x.iter()
            .map(|row| (0..n).map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &row[k] * &y[k][j])).collect())
            .collect()
    };
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr = (0..n).fold(BigInt::zero(), |acc, i| acc + &am[i][i]);
        c[n - k] = -tr / BigInt::from(k);
    }
    // det(z I - m) = d^-n det(d z I - a)
    let coeffs = c
        .into_iter()
        .enumerate()
        .map(|(i, ci)| Rational::new(ci, num_traits::pow(d.clone(), n - i)))
        .collect();
    UPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(det(&a), int(0));
        let b = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&b), int(5));
        let inv = inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &inv), identity(2));
        let half: Matrix = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 6)]];
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn small_rank_path_agrees() {
        let big = |a: &Matrix| bareiss_rank(a.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect());
        let mut seed = 7u64;
        for trial in 0..40 {
            let rows = 3 + trial % 6;
            let a: Matrix = (0..rows)
                .map(|_| {
                    (0..7)
                        .map(|_| {
                            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            int(((seed >> 33) % 7) as i64 - 3)
                        })
                        .collect()
                })
                .collect();
            let mut dep = a.clone();
            dep.push(dep[0].iter().zip(&dep[1]).map(|(x, y)| x - y).collect());
            assert_eq!(rank(&a), big(&a));
            assert_eq!(rank(&dep), big(&dep));
        }
        let h = i64::MAX;
        let huge = m(&[&[h, 3, 1], &[5, h, 2], &[7, 1, h]]);
        assert_eq!(bareiss_rank_i128(huge.iter().map(|r| r.iter().map(|x| x.to_integer().to_i128().unwrap()).collect()).collect()), None);
        assert_eq!(rank(&huge), 3);
    }

    #[test]
    fn charpoly_matches_det() {
        let a = m(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 1]]);
        let p = charpoly(&a);
        for z in -3..4 {
            let mut shifted = a.iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect::<Matrix>();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += int(z);
            }
            assert_eq!(p.eval(&int(z)), det(&shifted));
        }
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(|v| v.is_zero()));
        let x = solve(&a, &[int(2), int(3)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![int(2), int(3)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).is_none());
    }
}
