use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, simplest_between, to_f64, Rational};

/// Dense univariate polynomial, coefficients from the constant term upwards.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Rational),
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }
    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }
    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }
    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }
    pub fn constant(a: Rational) -> Self {
        UPoly::new(vec![a])
    }
    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }
    pub fn eval(&self, x: &Rational) -> Rational {
        self.c
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + to_f64(a))
    }
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + to_f64(a))
    }
    pub fn scale(&self, k: &Rational) -> Self {
        UPoly::new(self.c.iter().map(|a| a * k).collect())
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }
    pub fn deriv(&self) -> Self {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dn = d.degree();
        if r.len() < d.c.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dn];
        let inv = d.lc().recip();
        for k in (0..q.len()).rev() {
            let coef = &r[k + dn] * &inv;
            if !coef.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * dj;
                }
            }
            q[k] = coef;
        }
        r.truncate(dn);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut f, mut g) = (a.clone(), b.clone());
        while !g.is_zero() {
            let r = f.rem(&g);
            f = g;
            g = r;
        }
        f.monic()
    }

    pub fn pow(&self, k: u32) -> UPoly {
        (0..k).fold(UPoly::one(), |acc, _| &acc * self)
    }

    /// `self(q(x))`
    pub fn compose(&self, q: &UPoly) -> UPoly {
        self.c
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, a| &(&acc * q) + &UPoly::constant(a.clone()))
    }

    /// Yun decomposition: monic square-free factors with their multiplicity.
    pub fn squarefree_factors(&self) -> Vec<(UPoly, usize)> {
        if self.degree() == 0 {
            return vec![];
        }
        let fp = self.deriv();
        let a0 = UPoly::gcd(self, &fp);
        let mut b = self.div_exact(&a0).unwrap();
        let c = fp.div_exact(&a0).unwrap();
        let mut d = &c - &b.deriv();
        let mut out = vec![];
        let mut i = 1;
        while b.degree() > 0 {
            let a = UPoly::gcd(&b, &d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            let c = d.div_exact(&a).unwrap();
            d = &c - &b.deriv();
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        if self.degree() == 0 {
            return UPoly::one();
        }
        self.div_exact(&UPoly::gcd(self, &self.deriv()))
            .unwrap()
            .monic()
    }

    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.deriv()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        let s = |r: &Rational| {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        };
        match b {
            Bound::At(x) => s(&self.eval(x)),
            Bound::PosInf => s(&self.lc()),
            Bound::NegInf => {
                let l = s(&self.lc());
                if self.degree().is_multiple_of(2) {
                    l
                } else {
                    -l
                }
            }
        }
    }

    fn variations(seq: &[UPoly], b: &Bound) -> usize {
        let signs: Vec<i32> = seq.iter().map(|p| p.sign_at(b)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let seq = self.squarefree_part().sturm_sequence();
        Self::variations(&seq, lo).saturating_sub(Self::variations(&seq, hi))
    }

    pub fn count_real_roots(&self) -> usize {
        self.count_roots(&Bound::NegInf, &Bound::PosInf)
    }

    /// Every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.c[..self.degree()]
            .iter()
            .map(|a| a.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Disjoint intervals `(a, b]`, each holding exactly one real root,
    /// with width at most `width`.
    pub fn isolate_real_roots(&self, width: &Rational) -> Vec<(Rational, Rational)> {
        if self.degree() == 0 {
            return vec![];
        }
        let p = self.squarefree_part();
        let seq = p.sturm_sequence();
        let count = |a: &Rational, b: &Rational| {
            Self::variations(&seq, &Bound::At(a.clone()))
                - Self::variations(&seq, &Bound::At(b.clone()))
        };
        let b = p.root_bound();
        let mut stack = vec![(-b.clone(), b)];
        let mut out = vec![];
        let half = Rational::new(1.into(), 2.into());
        while let Some((a, b)) = stack.pop() {
            let n = count(&a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 && &(&b - &a) <= width {
                out.push((a, b));
                continue;
            }
            let m = (&a + &b) * &half;
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        out.sort();
        out
    }

    /// Real roots to about `1e-15` relative accuracy, ascending.
    pub fn real_roots_f64(&self) -> Vec<f64> {
        let w = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), 60));
        self.isolate_real_roots(&w)
            .into_iter()
            .map(|(a, b)| to_f64(&((a + b) / Rational::from_integer(2.into()))))
            .collect()
    }

    /// Disjoint intervals, one per real root, seeded from floating point roots.
    /// Each interval shows a sign change and their number matches the Sturm
    /// count, so each holds exactly one root. `None` when any check fails.
    fn numeric_isolation(&self) -> Option<Vec<(Rational, Rational)>> {
        let seq = self.sturm_sequence();
        let total = Self::variations(&seq, &Bound::NegInf) - Self::variations(&seq, &Bound::PosInf);
        let mut approx: Vec<f64> = self
            .complex_roots()
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.norm()))
            .map(|z| z.re)
            .collect();
        if approx.len() != total || approx.iter().any(|r| !r.is_finite()) {
            return None;
        }
        approx.sort_by(f64::total_cmp);
        let mut out: Vec<(Rational, Rational)> = vec![];
        for r in approx {
            let eps = 1e-6 * (1.0 + r.abs());
            let a = Rational::from_float(r - eps)?;
            let b = Rational::from_float(r + eps)?;
            if out.last().is_some_and(|(_, pb)| &a <= pb) {
                return None;
            }
            if self.sign_at(&Bound::At(a.clone())) * self.sign_at(&Bound::At(b.clone())) >= 0 {
                return None;
            }
            out.push((a, b));
        }
        Some(out)
    }

    /// Bisects a sign-change interval down to `width`.
    fn narrow(&self, mut a: Rational, mut b: Rational, width: &Rational) -> (Rational, Rational) {
        let sa = self.sign_at(&Bound::At(a.clone()));
        let half = Rational::new(1.into(), 2.into());
        while &(&b - &a) > width {
            let m = (&a + &b) * &half;
            match self.sign_at(&Bound::At(m.clone())) {
                0 => return (m.clone(), m),
                s if s == sa => a = m,
                _ => b = m,
            }
        }
        (a, b)
    }

    /// All rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return vec![];
        }
        let p = self.squarefree_part();
        let den = common_denominator(p.c.iter());
        let w = (p.lc() * Rational::from_integer(den)).abs();
        // two fractions with denominators <= w differ by at least 1/w^2
        let width = (&w * &w).recip() / Rational::from_integer(2.into());
        let isolated = match p.numeric_isolation() {
            Some(iv) => iv.into_iter().map(|(a, b)| p.narrow(a, b, &width)).collect(),
            None => p.isolate_real_roots(&width),
        };
        let mut out = vec![];
        for (a, b) in isolated {
            let cand = simplest_between(&a, &b);
            if p.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
        out
    }

    /// Complex roots with multiplicity by Durand-Kerner, then Newton polishing.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return vec![];
        }
        let monic: Vec<Complex64> = self
            .monic()
            .c
            .iter()
            .map(|a| Complex64::new(to_f64(a), 0.0))
            .collect();
        let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
        let radius = to_f64(&self.root_bound());
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..n)
            .map(|k| seed.powu(k as u32) * radius.max(1.0) * 0.5)
            .collect();
        for _ in 0..500 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= roots[i] - roots[j];
                    }
                }
                if den.norm() == 0.0 {
                    den = Complex64::new(1e-12, 0.0);
                }
                let step = eval(roots[i]) / den;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-16 * radius.max(1.0) {
                break;
            }
        }
        // polish on the square-free part, which keeps Newton quadratic
        let sf = self.squarefree_part();
        let sfd = sf.deriv();
        for r in roots.iter_mut() {
            for _ in 0..4 {
                let d = sfd.eval_complex(*r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = sf.eval_complex(*r) / d;
                if !step.is_finite() {
                    break;
                }
                *r -= step;
            }
        }
        roots
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match k {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        s.push_str(&format!("{}*", mag));
                    }
                    s.push_str(var);
                    if k > 1 {
                        s.push_str(&format!("^{}", k));
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("z"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self)
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        UPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.c.get(k).cloned().unwrap_or_else(Rational::zero);
                    let b = rhs.c.get(k).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.c.iter().map(|a| -a.clone()).collect())
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}
