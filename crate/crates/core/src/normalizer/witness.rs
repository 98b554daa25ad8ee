//! Pairs `(L, R)` with `L ∘ N ∘ R = F` for a normal form `N`.
//!
//! The target is first cut down to the independent components, so only a
//! `k x k` target change has to be found. Given `R`, that change is a linear
//! solve; `R` itself comes from the exact reduction chain where it applies,
//! from matching critical points, or from a damped Gauss-Newton search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::complex::{self, c, cmap_of, max_diff, CMap, ComplexAffine, ComplexPair, C64};
use super::{reduce_to_omega2, theta};
use crate::classifier::{classify, reduce_ambient};
use crate::error::{Error, Result};
use crate::invariants::critical_scheme;
use crate::orbitdb::{lookup, OrbitBase, OrbitLabel};
use crate::polycore::linalg::{identity, solve, Matrix};
use crate::polycore::{parse_tuple, rat, Rational};
use crate::quadmap::{coeff_vector, AffineMap, AffinePair, Field, QuadMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRoute {
    Exact,
    Approximate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub label: OrbitBase,
    pub n: usize,
    pub route: WitnessRoute,
    pub method: &'static str,
    /// `exact.act(normal form) = F` over the rationals.
    #[serde(serialize_with = "ser_exact")]
    pub exact: Option<AffinePair>,
    /// The same pair in floating point, or the only one on the approximate route.
    pub approx: ComplexPair,
    /// Largest coefficient error of `approx.act(normal form)` against `F`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessOptions {
    pub tolerance: f64,
    pub seed: u64,
    pub starts: usize,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { tolerance: 1e-8, seed: 0x5eed_0002, starts: 40 }
    }
}

fn ser_affine(a: &AffineMap) -> serde_json::Value {
    let s = |v: &Rational| serde_json::Value::String(v.to_string());
    serde_json::json!({
        "linear": a.linear.iter().map(|r| r.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "shift": a.shift.iter().map(s).collect::<Vec<_>>(),
    })
}

fn ser_exact<S: Serializer>(p: &Option<AffinePair>, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.as_ref()
        .map(|p| serde_json::json!({ "target": ser_affine(&p.target), "source": ser_affine(&p.source) }))
        .serialize(s)
}

const CORE: [u8; 8] = [1, 2, 3, 4, 5, 6, 8, 9];

/// Whether [`find_witness`] has a route for this orbit.
pub fn supports(base: OrbitBase) -> bool {
    let b = base.unprimed();
    if b.series == crate::orbitdb::Series::F && CORE.contains(&b.index) {
        return true;
    }
    lookup(base).is_ok_and(|r| r.dim_q <= 1 || r.dim_a <= 2)
}

pub fn find_witness(f: &QuadMap, label: &OrbitLabel) -> Result<Witness> {
    find_witness_with(f, label, &WitnessOptions::default())
}

pub fn find_witness_with(f: &QuadMap, label: &OrbitLabel, opts: &WitnessOptions) -> Result<Witness> {
    if !supports(label.base) {
        return Err(Error::UnsupportedLabel(label.base.to_string()));
    }
    let found = classify(f)?.label.base;
    if found != label.base {
        return Err(Error::Precondition(format!("map is in {}, not {}", found, label.base)));
    }
    let n = f.n();
    let rec = lookup(label.base)?;
    let nf = rec.normal_form_at(n)?.with_field(f.field());
    let (g, red) = reduce_ambient(f);
    let k = rec.dim_a;
    let back = red.target.inverse();
    let core = if k == 0 {
        Core { exact: Some(AffinePair::identity(0)), approx: ComplexPair::identity(0), method: "translation" }
    } else {
        let gk = QuadMap::new(f.field(), g.components()[..k].to_vec())?;
        let nk = QuadMap::new(f.field(), nf.components()[..k].to_vec())?;
        solve_core(&gk, &nk, label.base, f.field() == Field::Real, opts)
            .map_err(|residual| Error::ResidualExceeded { residual, tolerance: opts.tolerance })?
    };
    let source = core.approx.source.clone();
    let approx = ComplexPair {
        target: ComplexAffine::from_exact(&back).compose(&block_complex(&core.approx.target, n)),
        source,
    };
    let exact = core.exact.map(|p| AffinePair {
        target: back.compose(&block_exact(&p.target, n)),
        source: if k == 0 { AffineMap::identity(2) } else { p.source },
    });
    let approx = match &exact {
        Some(p) => ComplexPair::from_exact(p),
        None => approx,
    };
    let residual = max_diff(&approx.act(&cmap_of(&nf)), &cmap_of(f));
    if let Some(p) = &exact {
        if p.act(&nf)? != *f {
            return Err(Error::Inconsistent(format!("exact witness for {} does not reproduce the map", label.base)));
        }
    } else if residual > opts.tolerance {
        return Err(Error::ResidualExceeded { residual, tolerance: opts.tolerance });
    }
    Ok(Witness {
        label: label.base,
        n,
        route: if exact.is_some() { WitnessRoute::Exact } else { WitnessRoute::Approximate },
        method: core.method,
        exact,
        approx,
        residual,
    })
}

struct Core {
    /// Acts on `K^k`.
    exact: Option<AffinePair>,
    approx: ComplexPair,
    method: &'static str,
}

impl Core {
    fn exact(p: AffinePair, method: &'static str) -> Core {
        Core { approx: ComplexPair::from_exact(&p), exact: Some(p), method }
    }
}

fn block_exact(l: &AffineMap, n: usize) -> AffineMap {
    let mut m = identity(n);
    let mut shift = vec![Rational::from_integer(0.into()); n];
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            m[i][j] = l.linear[i][j].clone();
        }
        shift[i] = l.shift[i].clone();
    }
    AffineMap { linear: m, shift }
}

fn block_complex(l: &ComplexAffine, n: usize) -> ComplexAffine {
    let mut out = ComplexAffine::identity(n);
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            out.linear[i][j] = l.linear[i][j];
        }
        out.shift[i] = l.shift[i];
    }
    out
}

/// The target change `L` with `L ∘ N ∘ R = G`, if `R` admits one.
fn exact_target(g: &QuadMap, nk: &QuadMap, r: &AffineMap) -> Option<AffineMap> {
    let k = g.n();
    let s = AffinePair { target: AffineMap::identity(k), source: r.clone() }.act(nk).ok()?;
    // columns: the rows of N ∘ R and the constant
    let mut cols: Vec<Vec<Rational>> = s.components().iter().map(coeff_vector).collect();
    let mut one = vec![rat(0, 1); 6];
    one[5] = rat(1, 1);
    cols.push(one);
    let m: Matrix = (0..6).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
    let mut linear = vec![];
    let mut shift = vec![];
    for p in g.components() {
        let sol = solve(&m, &coeff_vector(p))?;
        shift.push(sol[k].clone());
        linear.push(sol[..k].to_vec());
    }
    AffineMap::new(linear, shift).ok()
}

/// Least-squares target change for a complex `R` (Gram-Schmidt on the rows
/// of `N ∘ R` and the constant), with the residual rows.
fn complex_target(g: &CMap, s: &CMap) -> Option<(ComplexAffine, Vec<[C64; 6]>)> {
    let k = s.len();
    let mut one = [c(0.0); 6];
    one[5] = c(1.0);
    let rows: Vec<[C64; 6]> = s.iter().copied().chain([one]).collect();
    // rows[i] = sum_{j <= i} t[i][j] q[j]
    let mut q: Vec<[C64; 6]> = vec![];
    let mut t = vec![vec![c(0.0); k + 1]; k + 1];
    for (i, v) in rows.iter().enumerate() {
        let mut w = *v;
        for _ in 0..2 {
            for (j, qj) in q.iter().enumerate() {
                let d: C64 = (0..6).map(|u| qj[u].conj() * w[u]).sum();
                t[i][j] += d;
                for u in 0..6 {
                    w[u] -= d * qj[u];
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-10 * v.iter().map(|z| z.norm()).fold(1.0, f64::max) {
            return None;
        }
        t[i][i] = c(norm);
        q.push(std::array::from_fn(|u| w[u] / norm));
    }
    let mut linear = vec![vec![c(0.0); k]; g.len()];
    let mut shift = vec![c(0.0); g.len()];
    let mut res = vec![];
    for (r, row) in g.iter().enumerate() {
        let d: Vec<C64> = q.iter().map(|qj| (0..6).map(|u| qj[u].conj() * row[u]).sum()).collect();
        // coef * t = d, t lower triangular
        let mut coef = vec![c(0.0); k + 1];
        for j in (0..=k).rev() {
            let acc: C64 = (j + 1..=k).map(|i| coef[i] * t[i][j]).sum();
            coef[j] = (d[j] - acc) / t[j][j];
        }
        let mut fit = [c(0.0); 6];
        for (i, a) in rows.iter().enumerate() {
            for u in 0..6 {
                fit[u] += coef[i] * a[u];
            }
        }
        linear[r].copy_from_slice(&coef[..k]);
        shift[r] = coef[k];
        res.push(std::array::from_fn(|u| row[u] - fit[u]));
    }
    Some((ComplexAffine { linear, shift }, res))
}

/// `R` as `[l00, l01, s0, l10, l11, s1]`.
fn r_of(v: &[C64; 6]) -> ComplexAffine {
    ComplexAffine { linear: vec![vec![v[0], v[1]], vec![v[3], v[4]]], shift: vec![v[2], v[5]] }
}

/// Affine family `base + sum z_i dirs_i` of source maps.
struct Space {
    base: [C64; 6],
    dirs: Vec<[C64; 6]>,
}

/// All `R` sending each `p` to its `q`.
fn constraint_space(pairs: &[((C64, C64), (C64, C64))]) -> Option<Space> {
    if pairs.is_empty() {
        let base = [c(1.0), c(0.0), c(0.0), c(0.0), c(1.0), c(0.0)];
        let dirs = (0..6).map(|i| std::array::from_fn(|j| c(if i == j { 1.0 } else { 0.0 }))).collect();
        return Some(Space { base, dirs });
    }
    let mut rows: Vec<[C64; 7]> = vec![];
    for &((px, py), (qx, qy)) in pairs {
        let z = c(0.0);
        rows.push([px, py, c(1.0), z, z, z, qx]);
        rows.push([z, z, z, px, py, c(1.0), qy]);
    }
    let scale = rows.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    let mut pivots = vec![];
    let mut r = 0;
    for col in 0..6 {
        let Some(p) = (r..rows.len()).max_by(|&i, &j| rows[i][col].norm().total_cmp(&rows[j][col].norm())) else {
            break;
        };
        if rows[p][col].norm() < 1e-10 * scale {
            continue;
        }
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][col];
                for j in 0..7 {
                    let t = rows[r][j];
                    rows[i][j] -= f * t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[6].norm() > 1e-8 * scale) {
        return None;
    }
    let mut base = [c(0.0); 6];
    for (i, &p) in pivots.iter().enumerate() {
        base[p] = rows[i][6];
    }
    let dirs = (0..6)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut d = [c(0.0); 6];
            d[free] = c(1.0);
            for (i, &p) in pivots.iter().enumerate() {
                d[p] = -rows[i][free];
            }
            d
        })
        .collect();
    Some(Space { base, dirs })
}

/// Orthonormal basis (Hermitian product) of the rows of `s` and the constant.
fn orthonormal_span(s: &CMap) -> Vec<[C64; 6]> {
    let mut one = [c(0.0); 6];
    one[5] = c(1.0);
    let mut basis: Vec<[C64; 6]> = vec![];
    for v in s.iter().chain([&one]) {
        let mut w = *v;
        for _ in 0..2 {
            for q in &basis {
                let d: C64 = (0..6).map(|t| q[t].conj() * w[t]).sum();
                for t in 0..6 {
                    w[t] -= d * q[t];
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 * v.iter().map(|z| z.norm()).fold(1.0, f64::max) {
            basis.push(std::array::from_fn(|t| w[t] / norm));
        }
    }
    basis
}

fn strip(w: &mut [C64; 6], basis: &[[C64; 6]]) {
    for q in basis {
        let d: C64 = (0..6).map(|t| q[t].conj() * w[t]).sum();
        for t in 0..6 {
            w[t] -= d * q[t];
        }
    }
}

/// Distance between the spans of `G` and of `N ∘ R` (each with the constant),
/// measured both ways so that collapsing `R` is not rewarded.
fn residual_vector(g: &CMap, g_span: &[[C64; 6]], nk: &CMap, r: &ComplexAffine) -> Vec<f64> {
    let s: CMap = nk.iter().map(|row| complex::substitute(row, r)).collect();
    let basis = orthonormal_span(&s);
    let mut out = Vec::with_capacity(24 * g.len());
    for row in g {
        let mut w = *row;
        strip(&mut w, &basis);
        out.extend(w.iter().flat_map(|z| [z.re, z.im]));
    }
    for q in &basis {
        let mut w = *q;
        strip(&mut w, g_span);
        out.extend(w.iter().flat_map(|z| [z.re, z.im]));
    }
    // a lost direction counts fully
    out.extend(std::iter::repeat_n(1.0, g_span.len().saturating_sub(basis.len())));
    out.resize(out.len().max(12 * g.len() + 12 * g_span.len()), 0.0);
    out
}

fn point_of(space: &Space, x: &[f64], real: bool) -> [C64; 6] {
    let mut v = space.base;
    for (i, d) in space.dirs.iter().enumerate() {
        let z = if real { c(x[i]) } else { C64::new(x[2 * i], x[2 * i + 1]) };
        for t in 0..6 {
            v[t] += z * d[t];
        }
    }
    v
}

fn solve_real(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &v)| r.iter().copied().chain([v]).collect()).collect();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[p][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, p);
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            for j in col..=n {
                m[i][j] -= f * m[col][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    Some(x)
}

/// Damped Gauss-Newton on the projection residual, central differences.
fn levenberg_marquardt(cost: &dyn Fn(&[f64]) -> Option<Vec<f64>>, x0: Vec<f64>) -> Option<(Vec<f64>, f64)> {
    let norm2 = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    let mut x = x0;
    let mut r = cost(&x)?;
    let mut c0 = norm2(&r);
    let mut lambda = 1e-3;
    let m = x.len();
    for _ in 0..300 {
        if c0 < 1e-28 || m == 0 {
            break;
        }
        let mut jac = vec![vec![0.0; m]; r.len()];
        for j in 0..m {
            let h = 1e-6 * (1.0 + x[j].abs());
            let mut xp = x.clone();
            xp[j] += h;
            let mut xm = x.clone();
            xm[j] -= h;
            let (rp, rm) = (cost(&xp)?, cost(&xm)?);
            for i in 0..r.len() {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let jtj: Vec<Vec<f64>> =
            (0..m).map(|a| (0..m).map(|b| jac.iter().map(|row| row[a] * row[b]).sum()).collect()).collect();
        let jtr: Vec<f64> = (0..m).map(|a| jac.iter().zip(&r).map(|(row, v)| row[a] * v).sum()).collect();
        let mut improved = false;
        while lambda < 1e12 {
            let damped: Vec<Vec<f64>> = (0..m)
                .map(|a| (0..m).map(|b| jtj[a][b] + if a == b { lambda * (jtj[a][a] + 1e-12) } else { 0.0 }).collect())
                .collect();
            let neg: Vec<f64> = jtr.iter().map(|v| -v).collect();
            if let Some(step) = solve_real(&damped, &neg) {
                let xn: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
                if let Some(rn) = cost(&xn) {
                    let cn = norm2(&rn);
                    if cn < c0 {
                        x = xn;
                        r = rn;
                        c0 = cn;
                        lambda = (lambda / 3.0).max(1e-15);
                        improved = true;
                        break;
                    }
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    Some((x, c0.sqrt()))
}

/// Pairings of critical points of `g` with those of `nk` that respect multiplicity.
fn point_pairings(g: &QuadMap, nk: &QuadMap) -> Vec<Vec<((C64, C64), (C64, C64))>> {
    let pts = |m: &QuadMap| critical_scheme(m).points.map(|p| p.complex_points()).unwrap_or_default();
    let (pg, pn) = (pts(g), pts(nk));
    if pg.is_empty() || pg.len() != pn.len() {
        return vec![vec![]];
    }
    let mut out = vec![];
    let idx: Vec<usize> = (0..pn.len()).collect();
    for perm in permutations(&idx) {
        if perm.iter().enumerate().all(|(i, &j)| pg[i].2 == pn[j].2) {
            out.push(perm.iter().enumerate().map(|(i, &j)| ((pg[i].0, pg[i].1), (pn[j].0, pn[j].1))).collect());
        }
    }
    if out.is_empty() {
        out.push(vec![]);
    }
    out
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = vec![];
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Continued-fraction approximation with a small denominator.
fn rationalize(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i128;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > 10_000 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= 1e-12 * x.abs().max(1.0) {
            return Some(Rational::new(h1.into(), k1.into()));
        }
        let frac = y - a as f64;
        if frac.abs() < 1e-14 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

fn rational_source(r: &ComplexAffine) -> Option<AffineMap> {
    let q = |z: &C64| if z.im.abs() < 1e-9 { rationalize(z.re) } else { None };
    let linear: Option<Matrix> = r.linear.iter().map(|row| row.iter().map(q).collect()).collect();
    let shift: Option<Vec<Rational>> = r.shift.iter().map(q).collect();
    AffineMap::new(linear?, shift?).ok()
}

/// `|det|` divided by the largest linear entry to the power `dim`.
fn relative_det(a: &ComplexAffine) -> f64 {
    let m = a.linear.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    a.det().norm() / m.powi(a.dim() as i32)
}

fn is_real(a: &ComplexAffine) -> bool {
    a.linear.iter().flatten().chain(&a.shift).all(|z| z.im.abs() < 1e-9)
}

/// `Err` carries the smallest residual seen, infinite when no candidate was admissible.
fn numeric_core(g: &QuadMap, nk: &QuadMap, real: bool, opts: &WitnessOptions) -> std::result::Result<Core, f64> {
    let (gc, nc) = (cmap_of(g), cmap_of(nk));
    let g_span = orthonormal_span(&gc);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut fallback: Option<Core> = None;
    let mut best = f64::INFINITY;
    let accept = |r: &ComplexAffine| -> Option<(ComplexAffine, f64)> {
        if relative_det(r) < 1e-6 || (real && !is_real(r)) {
            return None;
        }
        let s: CMap = nc.iter().map(|row| complex::substitute(row, r)).collect();
        let (l, _) = complex_target(&gc, &s)?;
        if relative_det(&l) < 1e-8 || (real && !is_real(&l)) {
            return None;
        }
        let pair = ComplexPair { target: l.clone(), source: r.clone() };
        let res = max_diff(&pair.act(&nc), &gc);
        Some((l, res))
    };
    for pairing in point_pairings(g, nk) {
        let Some(mut space) = constraint_space(&pairing) else {
            continue;
        };
        if real {
            if space.base.iter().chain(space.dirs.iter().flatten()).any(|z| z.im.abs() > 1e-9) {
                continue;
            }
            for z in space.base.iter_mut().chain(space.dirs.iter_mut().flatten()) {
                z.im = 0.0;
            }
        }
        let dim = space.dirs.len() * if real { 1 } else { 2 };
        let cost = |x: &[f64]| Some(residual_vector(&gc, &g_span, &nc, &r_of(&point_of(&space, x, real))));
        let starts = if dim == 0 { 1 } else { opts.starts };
        for s in 0..starts {
            let x0: Vec<f64> = if s == 0 { vec![0.0; dim] } else { (0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect() };
            // a small pull toward the start keeps stabilizer directions bounded
            let anchor = x0.clone();
            let regularized = |x: &[f64]| {
                let mut r = cost(x)?;
                r.extend(x.iter().zip(&anchor).map(|(v, a)| 1e-3 * (v - a)));
                Some(r)
            };
            let Some((x, _)) = levenberg_marquardt(&regularized, x0) else {
                continue;
            };
            let Some((x, _)) = levenberg_marquardt(&cost, x) else {
                continue;
            };
            let r = r_of(&point_of(&space, &x, real));
            let Some((l, res)) = accept(&r) else {
                continue;
            };
            best = best.min(res);
            if res > opts.tolerance * 1e-2 {
                continue;
            }
            if let Some(rq) = rational_source(&r) {
                if let Some(lq) = exact_target(g, nk, &rq) {
                    return Ok(Core::exact(AffinePair { target: lq, source: rq }, "critical-points+rationalized"));
                }
            }
            if fallback.is_none() {
                fallback = Some(Core {
                    exact: None,
                    approx: ComplexPair { target: l, source: r },
                    method: "critical-points+least-squares",
                });
            }
            if dim > 0 {
                break;
            }
        }
    }
    fallback.ok_or(best)
}

fn f3_pipeline(g: &QuadMap) -> Option<Core> {
    // L, R with L ∘ (x^2+y, y^2+x, xy - 3/2 x - 3/2 y) ∘ R = F3
    let l = AffineMap::new(
        vec![
            vec![rat(1, 1), rat(1, 1), rat(2, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ],
        vec![rat(1, 1), rat(-3, 4), rat(1, 2)],
    )
    .ok()?;
    let r = AffineMap::new(vec![vec![rat(1, 1), rat(-1, 1)], vec![rat(0, 1), rat(1, 1)]], vec![rat(1, 2), rat(1, 2)]).ok()?;
    let lr_inv = AffinePair { target: l, source: r }.inverse();
    let cusp = QuadMap::new(g.field(), parse_tuple("x^2+y, y^2+x, xy - 3/2 x - 3/2 y").ok()?).ok()?;
    for branch in 0..3 {
        let red = reduce_to_omega2(g, branch).ok()?;
        if let Some((m, p)) = &red.exact {
            if *m == cusp {
                return Some(Core::exact(p.inverse().compose(&lr_inv), "theta-pipeline"));
            }
        }
        let (a, b) = (red.theta1.a, red.theta1.b);
        if (a - c(-1.5)).norm() < 1e-6 && (b - c(-1.5)).norm() < 1e-6 {
            let pair = red.pair.inverse()?.compose(&ComplexPair::from_exact(&lr_inv));
            return Some(Core { exact: None, approx: pair, method: "theta-pipeline" });
        }
    }
    None
}

fn solve_core(g: &QuadMap, nk: &QuadMap, base: OrbitBase, real: bool, opts: &WitnessOptions) -> std::result::Result<Core, f64> {
    if let Some(l) = exact_target(g, nk, &AffineMap::identity(2)) {
        return Ok(Core::exact(AffinePair { target: l, source: AffineMap::identity(2) }, "target-change"));
    }
    if base == OrbitBase::f(4) {
        if let Ok((m, p)) = theta(g) {
            if m == *nk {
                return Ok(Core::exact(p.inverse(), "theta"));
            }
        }
    }
    if base == OrbitBase::f(3) {
        if let Some(core) = f3_pipeline(g) {
            if core.exact.is_some() || !real {
                return Ok(core);
            }
        }
    }
    numeric_core(g, nk, real, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbitdb::records;

    fn label(f: &QuadMap, b: OrbitBase) -> OrbitLabel {
        OrbitLabel::new(b, f.n(), f.field()).unwrap()
    }

    #[test]
    fn cusp_example_is_exact() {
        let f = QuadMap::new(Field::Complex, parse_tuple("x^2+y, y^2+x, xy - 3/2 x - 3/2 y").unwrap()).unwrap();
        let w = find_witness(&f, &label(&f, OrbitBase::f(3))).unwrap();
        assert_eq!(w.route, WitnessRoute::Exact);
        assert_eq!(w.residual, 0.0);
    }

    #[test]
    fn zero_map_uses_the_identity() {
        let f = QuadMap::new(Field::Complex, parse_tuple("0, 0, 0").unwrap()).unwrap();
        let w = find_witness(&f, &label(&f, OrbitBase::f(29))).unwrap();
        assert_eq!(w.exact, Some(AffinePair::identity(3)));
    }

    #[test]
    fn unsupported_labels() {
        for b in [OrbitBase::f(11), OrbitBase::f(14), OrbitBase::g(0), OrbitBase::g(3)] {
            assert!(!supports(b));
            let f = records().iter().find(|r| r.label == b).unwrap().normal_form.clone();
            assert!(matches!(find_witness(&f, &label(&f, b)), Err(Error::UnsupportedLabel(_))));
        }
    }

    #[test]
    fn rationalizes_simple_values() {
        assert_eq!(rationalize(-0.75), Some(rat(-3, 4)));
        assert_eq!(rationalize(1.0 / 3.0), Some(rat(1, 3)));
        assert_eq!(rationalize(std::f64::consts::PI), None);
    }

    #[test]
    fn random_members_of_supported_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for rec in records() {
            if !supports(rec.label) {
                continue;
            }
            let n = rec.reference_n;
            let nf = rec.normal_form.clone();
            for _ in 0..2 {
                let f = AffinePair::random(n, &mut rng, 3).act(&nf).unwrap();
                let w = find_witness(&f, &label(&f, rec.label)).unwrap_or_else(|e| panic!("{}: {}", rec.label, e));
                assert!(w.residual <= 1e-8, "{} {}", rec.label, w.residual);
            }
        }
    }
}
