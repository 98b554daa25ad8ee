//! Double-precision complex affine maps and quadric coefficient rows, used
//! where witnesses need cube roots.

use num_complex::Complex64;
use serde::Serialize;

use crate::polycore::rational::to_f64;
use crate::quadmap::{AffineMap, AffinePair, QuadMap};

pub type C64 = Complex64;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Coefficient rows `[x^2, xy, y^2, x, y, 1]`.
pub type CMap = Vec<[C64; 6]>;

pub fn cmap_of(f: &QuadMap) -> CMap {
    f.coeff_matrix()
        .iter()
        .map(|r| std::array::from_fn(|k| c(to_f64(&r[k]))))
        .collect()
}

pub fn max_diff(a: &CMap, b: &CMap) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(u, v)| (u - v).norm()))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexAffine {
    #[serde(serialize_with = "ser_mat")]
    pub linear: Vec<Vec<C64>>,
    #[serde(serialize_with = "ser_vec")]
    pub shift: Vec<C64>,
}

fn ser_c(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

fn ser_mat<S: serde::Serializer>(m: &[Vec<C64>], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<[f64; 2]>> = m.iter().map(|r| r.iter().map(ser_c).collect()).collect();
    v.serialize(s)
}

fn ser_vec<S: serde::Serializer>(m: &[C64], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<[f64; 2]> = m.iter().map(ser_c).collect();
    v.serialize(s)
}

impl ComplexAffine {
    pub fn identity(n: usize) -> Self {
        let linear = (0..n).map(|i| (0..n).map(|j| c(if i == j { 1.0 } else { 0.0 })).collect()).collect();
        ComplexAffine { linear, shift: vec![c(0.0); n] }
    }

    pub fn from_exact(a: &AffineMap) -> Self {
        ComplexAffine {
            linear: a.linear.iter().map(|r| r.iter().map(|v| c(to_f64(v))).collect()).collect(),
            shift: a.shift.iter().map(|v| c(to_f64(v))).collect(),
        }
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let mut a = Self::identity(d.len());
        for (i, v) in d.iter().enumerate() {
            a.linear[i][i] = *v;
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.linear
            .iter()
            .zip(&self.shift)
            .map(|(row, s)| row.iter().zip(v).map(|(a, b)| a * b).sum::<C64>() + s)
            .collect()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ComplexAffine) -> ComplexAffine {
        let n = self.dim();
        let linear = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.linear[i][k] * other.linear[k][j]).sum()).collect())
            .collect();
        ComplexAffine { linear, shift: self.apply(&other.shift) }
    }

    pub fn inverse(&self) -> Option<ComplexAffine> {
        let inv = invert(&self.linear)?;
        let shift = inv
            .iter()
            .map(|row| -row.iter().zip(&self.shift).map(|(a, b)| a * b).sum::<C64>())
            .collect();
        Some(ComplexAffine { linear: inv, shift })
    }

    pub fn det(&self) -> C64 {
        det(&self.linear)
    }
}

/// `(L, R)` acting by `F -> L ∘ F ∘ R`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexPair {
    pub target: ComplexAffine,
    pub source: ComplexAffine,
}

impl ComplexPair {
    pub fn identity(n: usize) -> Self {
        ComplexPair { target: ComplexAffine::identity(n), source: ComplexAffine::identity(2) }
    }

    pub fn from_exact(p: &AffinePair) -> Self {
        ComplexPair { target: ComplexAffine::from_exact(&p.target), source: ComplexAffine::from_exact(&p.source) }
    }

    pub fn act(&self, f: &CMap) -> CMap {
        let inner: CMap = f.iter().map(|row| substitute(row, &self.source)).collect();
        (0..self.target.dim())
            .map(|i| {
                let mut out = [c(0.0); 6];
                for (j, row) in inner.iter().enumerate() {
                    for k in 0..6 {
                        out[k] += self.target.linear[i][j] * row[k];
                    }
                }
                out[5] += self.target.shift[i];
                out
            })
            .collect()
    }

    /// The pair acting as `self` after `first`.
    pub fn compose(&self, first: &ComplexPair) -> ComplexPair {
        ComplexPair { target: self.target.compose(&first.target), source: first.source.compose(&self.source) }
    }

    pub fn inverse(&self) -> Option<ComplexPair> {
        Some(ComplexPair { target: self.target.inverse()?, source: self.source.inverse()? })
    }
}

/// Coefficients of `q(R(x, y))` for a quadric row `q`.
pub fn substitute(q: &[C64; 6], r: &ComplexAffine) -> [C64; 6] {
    let (p, qq, s) = (r.linear[0][0], r.linear[0][1], r.shift[0]);
    let (rr, u, v) = (r.linear[1][0], r.linear[1][1], r.shift[1]);
    let two = c(2.0);
    let xx = [p * p, two * p * qq, qq * qq, two * p * s, two * qq * s, s * s];
    let xy = [p * rr, p * u + qq * rr, qq * u, p * v + s * rr, qq * v + s * u, s * v];
    let yy = [rr * rr, two * rr * u, u * u, two * rr * v, two * u * v, v * v];
    let x = [c(0.0), c(0.0), c(0.0), p, qq, s];
    let y = [c(0.0), c(0.0), c(0.0), rr, u, v];
    let mut out = [c(0.0); 6];
    for k in 0..6 {
        out[k] = q[0] * xx[k] + q[1] * xy[k] + q[2] * yy[k] + q[3] * x[k] + q[4] * y[k];
    }
    out[5] += q[5];
    out
}

pub fn det(m: &[Vec<C64>]) -> C64 {
    let n = m.len();
    let mut a: Vec<Vec<C64>> = m.to_vec();
    let mut d = c(1.0);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        if a[piv][col].norm() == 0.0 {
            return c(0.0);
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= a[col][col];
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            for j in col..n {
                let t = a[col][j];
                a[i][j] -= f * t;
            }
        }
    }
    d
}

/// Solves `A X = B` by partial pivoting; `None` when numerically singular.
pub fn solve(a: &[Vec<C64>], b: &[Vec<C64>]) -> Option<Vec<Vec<C64>>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let mut aug: Vec<Vec<C64>> = a.iter().zip(b).map(|(r, s)| r.iter().chain(s).copied().collect()).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| aug[i][col].norm().total_cmp(&aug[j][col].norm()))?;
        if aug[piv][col].norm() <= 1e-13 * scale {
            return None;
        }
        aug.swap(piv, col);
        for i in 0..n {
            if i != col {
                let f = aug[i][col] / aug[col][col];
                if f != c(0.0) {
                    for j in col..n + m {
                        let t = aug[col][j];
                        aug[i][j] -= f * t;
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| (0..m).map(|j| aug[i][n + j] / aug[i][i]).collect()).collect())
}

pub fn invert(a: &[Vec<C64>]) -> Option<Vec<Vec<C64>>> {
    let n = a.len();
    solve(a, &ComplexAffine::identity(n).linear)
}

/// Principal complex cube root.
pub fn cbrt(z: C64) -> C64 {
    if z == c(0.0) {
        return z;
    }
    C64::from_polar(z.norm().cbrt(), z.arg() / 3.0)
}

pub fn cube_roots_of_unity() -> [C64; 3] {
    let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    [c(1.0), w, w * w]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadmap::{map_from_ints, Field};
    use rand::SeedableRng;

    #[test]
    fn matches_exact_action() {
        let f = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0]]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = AffinePair::random(3, &mut rng, 4);
        let exact = cmap_of(&p.act(&f).unwrap());
        let approx = ComplexPair::from_exact(&p).act(&cmap_of(&f));
        assert!(max_diff(&exact, &approx) < 1e-12);
        let back = ComplexPair::from_exact(&p).inverse().unwrap().act(&approx);
        assert!(max_diff(&back, &cmap_of(&f)) < 1e-10);
    }

    #[test]
    fn cube_roots() {
        let z = C64::new(-8.0, 0.0);
        let r = cbrt(z);
        assert!((r * r * r - z).norm() < 1e-12);
        assert!(cube_roots_of_unity().iter().all(|w| (w * w * w - c(1.0)).norm() < 1e-12));
    }
}
