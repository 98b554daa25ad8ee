use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::univariate::UPoly;

/// Number of variables in the shared universe.
pub const NVARS: usize = 5;

/// The variable universe. `X2`, `Y2` are the second source copy used for
/// self-intersection; `T` is the auxiliary variable for ideal intersections.
/// Parameters of symbolic families reuse `X2`, `Y2` under other names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    X2 = 2,
    Y2 = 3,
    T = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::X2, Var::Y2, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        DEFAULT_NAMES[self.index()]
    }
}

pub const DEFAULT_NAMES: [&str; NVARS] = ["x", "y", "x2", "y2", "t"];

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const ALL: VarSet = VarSet((1 << NVARS) - 1);
    pub const XY: VarSet = VarSet(0b11);

    pub fn of(vars: &[Var]) -> VarSet {
        VarSet(vars.iter().fold(0, |m, v| m | (1 << v.index())))
    }
    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }
    pub fn union(self, o: VarSet) -> VarSet {
        VarSet(self.0 | o.0)
    }
    pub fn minus(self, o: VarSet) -> VarSet {
        VarSet(self.0 & !o.0)
    }
    pub fn is_subset(self, o: VarSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

/// Exponent vector over the universe. The derived order is lex with `x > y > x2 > y2 > t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }
    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }
    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }
    pub fn xy(a: u16, b: u16) -> Self {
        Monomial([a, b, 0, 0, 0])
    }
    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
    pub fn degree_in(&self, vars: VarSet) -> u32 {
        vars.iter().map(|v| self.exp(v) as u32).sum()
    }
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
    pub fn support(&self) -> VarSet {
        VarSet::of(&Var::ALL.into_iter().filter(|v| self.exp(*v) > 0).collect::<Vec<_>>())
    }
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(m))
    }
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }
    /// Key for the normalization order: total degree, then lex.
    fn graded_key(&self) -> (u32, [u16; NVARS]) {
        (self.degree(), self.0)
    }
}

/// Sparse polynomial over Q in the fixed universe.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }
    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }
    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }
    pub fn int(n: i64) -> Self {
        Poly::constant(int(n))
    }
    pub fn var(v: Var) -> Self {
        Poly::term(Rational::one(), Monomial::var(v))
    }
    pub fn x() -> Self {
        Poly::var(Var::X)
    }
    pub fn y() -> Self {
        Poly::var(Var::Y)
    }
    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }
    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
    pub fn degree_in(&self, v: Var) -> usize {
        self.terms.keys().map(|m| m.exp(v) as usize).max().unwrap_or(0)
    }
    pub fn support(&self) -> VarSet {
        self.terms
            .keys()
            .fold(VarSet::EMPTY, |s, m| s.union(m.support()))
    }

    /// Leading term in the graded order used for normalization.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by_key(|(m, _)| m.graded_key())
    }

    /// Scalar multiple with leading coefficient 1 (graded lex); zero stays zero.
    pub fn normalized(&self) -> Poly {
        match self.leading_term() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn deriv(&self, v: Var) -> Poly {
        let i = v.index();
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * int(k as i64))
        }))
    }

    /// Simultaneous substitution; `None` keeps the variable.
    pub fn compose(&self, subs: &[Option<Poly>; NVARS]) -> Poly {
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one()]; NVARS];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut keep = Monomial::one();
            for v in Var::ALL {
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                match &subs[v.index()] {
                    None => keep.0[v.index()] = e as u16,
                    Some(s) => {
                        let powers = &mut cache[v.index()];
                        while powers.len() <= e {
                            let next = powers.last().unwrap() * s;
                            powers.push(next);
                        }
                        t = &t * &powers[e];
                    }
                }
            }
            out += t.mul_monomial(&keep);
        }
        out
    }

    pub fn substitute(&self, v: Var, by: &Poly) -> Poly {
        let mut subs: [Option<Poly>; NVARS] = Default::default();
        subs[v.index()] = Some(by.clone());
        self.compose(&subs)
    }

    pub fn eval_var(&self, v: Var, value: &Rational) -> Poly {
        self.substitute(v, &Poly::constant(value.clone()))
    }

    /// Evaluates at a full point of the universe.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_xy(&self, x: &Rational, y: &Rational) -> Rational {
        let z = Rational::zero();
        self.eval(&[x.clone(), y.clone(), z.clone(), z.clone(), z])
    }

    /// Coefficients as a univariate polynomial in `v`, index = power.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[v.index()] as usize;
            rest.0[v.index()] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out += c.mul_monomial(&Monomial::var_pow(v, k as u16));
        }
        out
    }

    pub fn leading_coeff_in(&self, v: Var) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    /// `Some` when the polynomial involves no variable other than `v`.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly> {
        if !self.support().is_subset(VarSet::of(&[v])) {
            return None;
        }
        let mut c = vec![Rational::zero(); self.degree_in(v) + 1];
        for (m, a) in &self.terms {
            c[m.exp(v) as usize] = a.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn from_upoly(p: &UPoly, v: Var) -> Poly {
        Poly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var_pow(v, k as u16), c.clone())),
        )
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let v = d.support().iter().next().unwrap();
        let dn = d.degree_in(v);
        let dc = d.coeffs_in(v);
        let lc = &dc[dn];
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let rn = rem.degree_in(v);
            if rn < dn {
                return None;
            }
            let rl = rem.leading_coeff_in(v);
            let q = rl.div_exact(lc)?;
            let shift = Monomial::var_pow(v, (rn - dn) as u16);
            let qt = q.mul_monomial(&shift);
            rem -= &(&qt * d);
            quot += qt;
            if !rem.is_zero() && rem.degree_in(v) >= rn {
                return None;
            }
        }
        Some(quot)
    }

    /// Sparse pseudo-remainder of `self` by `g` in `v`.
    pub fn prem(&self, g: &Poly, v: Var) -> Poly {
        let n = g.degree_in(v);
        let lcg = g.leading_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= n {
            let k = r.degree_in(v);
            let c = r.leading_coeff_in(v);
            r = &(&lcg * &r) - &(&c * &g.mul_monomial(&Monomial::var_pow(v, (k - n) as u16)));
        }
        r
    }

    pub fn content_in(&self, v: Var) -> Poly {
        self.coeffs_in(v)
            .iter()
            .fold(Poly::zero(), |acc, c| Poly::gcd(&acc, c))
    }

    pub fn primitive_part_in(&self, v: Var) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Normalized greatest common divisor over Q.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let Some(v) = a.support().union(b.support()).iter().next() else {
            return Poly::one();
        };
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        if da == 0 {
            return Poly::gcd(a, &b.content_in(v));
        }
        if db == 0 {
            return Poly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = Poly::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let (mut f, mut g) = if da >= db { (pa, pb) } else { (pb, pa) };
        let g = loop {
            let r = f.prem(&g, v);
            if r.is_zero() {
                break g.primitive_part_in(v);
            }
            if r.degree_in(v) == 0 {
                break Poly::one();
            }
            f = g;
            g = r.primitive_part_in(v);
        };
        (&c * &g).normalized()
    }

    pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
        polys.into_iter().fold(Poly::zero(), |acc, p| Poly::gcd(&acc, p))
    }

    /// Square-free decomposition: one normalized factor per multiplicity,
    /// sorted by multiplicity. The scalar unit is dropped.
    pub fn squarefree_factors(&self) -> Vec<(Poly, usize)> {
        let mut by_mult: BTreeMap<usize, Poly> = BTreeMap::new();
        self.collect_squarefree(&mut by_mult);
        by_mult
            .into_iter()
            .map(|(k, p)| (p.normalized(), k))
            .filter(|(p, _)| !p.is_constant())
            .collect()
    }

    fn collect_squarefree(&self, acc: &mut BTreeMap<usize, Poly>) {
        if self.is_constant() {
            return;
        }
        let v = self.support().iter().next().unwrap();
        let c = self.content_in(v);
        let f = self.div_exact(&c).expect("content divides");
        let fp = f.deriv(v);
        let a0 = Poly::gcd(&f, &fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let c1 = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c1 - &b.deriv(v);
        let mut i = 1;
        while b.degree_in(v) > 0 {
            let a = Poly::gcd(&b, &d);
            if !a.is_constant() {
                let e = acc.entry(i).or_insert_with(Poly::one);
                *e = &*e * &a;
            }
            b = b.div_exact(&a).expect("gcd divides");
            let c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.deriv(v);
            i += 1;
        }
        c.collect_squarefree(acc);
    }

    pub fn squarefree_part(&self) -> Poly {
        self.squarefree_factors()
            .into_iter()
            .fold(Poly::one(), |acc, (p, _)| &acc * &p)
            .normalized()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Normalized rational linear factors `a x + b y + c` of a polynomial in `x, y`,
    /// one per distinct factor.
    pub fn rational_linear_factors(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = vec![];
        let mut rest = self.clone();
        loop {
            if rest.degree() < 1 || !rest.support().is_subset(VarSet::XY) {
                return out;
            }
            match rest.find_linear_factor() {
                Some(l) => {
                    while let Some(q) = rest.div_exact(&l) {
                        rest = q;
                    }
                    out.push(l);
                }
                None => return out,
            }
        }
    }

    fn find_linear_factor(&self) -> Option<Poly> {
        let d = self.degree();
        let top = self.homogeneous_part(d);
        let x = Poly::x();
        let y = Poly::y();
        let c = Poly::var(Var::X2);
        // directions: x - r y for rational roots r of top(t, 1); y alone if x^d is absent
        let mut dirs: Vec<(Poly, Poly)> = vec![];
        let dehom = top.substitute(Var::Y, &Poly::one()).to_upoly(Var::X).unwrap_or_default();
        for r in dehom.rational_roots() {
            let lin = &x - &y.scale(&r);
            // x = r y - c on the candidate line
            dirs.push((lin, &y.scale(&r) - &c));
        }
        if top.coeff(&Monomial::xy(d as u16, 0)).is_zero() {
            dirs.push((y.clone(), Poly::zero()));
        }
        for (lin, sub) in dirs {
            let restricted = if sub.is_zero() {
                // factor y + c: substitute y = -c
                self.substitute(Var::Y, &(-&c))
            } else {
                self.substitute(Var::X, &sub)
            };
            let g = restricted
                .coeffs_in(if sub.is_zero() { Var::X } else { Var::Y })
                .iter()
                .fold(Poly::zero(), |acc, k| Poly::gcd(&acc, k));
            let Some(gu) = g.to_upoly(Var::X2) else { continue };
            for root in gu.rational_roots() {
                let cand = &lin + &Poly::constant(root);
                if self.div_exact(&cand).is_some() {
                    return Some(cand.normalized());
                }
            }
        }
        None
    }

    pub fn display_with(&self, names: &[&str; NVARS]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0.graded_key()));
        let mut s = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m.exp(**v) > 0)
                .map(|v| match m.exp(*v) {
                    1 => names[v.index()].to_string(),
                    e => format!("{}^{}", names[v.index()], e),
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&DEFAULT_NAMES))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        *self -= &rhs;
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::rat;

    fn x() -> Poly {
        Poly::x()
    }
    fn y() -> Poly {
        Poly::y()
    }
    fn c(n: i64) -> Poly {
        Poly::int(n)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p.to_string(), "x^2 - y^2");
        let q = &x().scale(&rat(-3, 2)) * &y() + c(1);
        assert_eq!(q.to_string(), "-3/2*x*y + 1");
        assert_eq!((&p - &p), Poly::zero());
    }

    #[test]
    fn exact_division() {
        let a = &(&x() - &y()) * &(&x() + &y() - &c(1));
        assert_eq!(a.div_exact(&(&x() - &y())), Some(&x() + &y() - &c(1)));
        assert_eq!(a.div_exact(&(&x() + &c(7))), None);
    }

    #[test]
    fn gcd_multivariate() {
        let g = &x() + &y() - &c(1);
        let a = &g * &(&x() * &x() + &y());
        let b = &g * &(&x() - &y().scale(&rat(2, 3)));
        assert_eq!(Poly::gcd(&a, &b), g);
        assert_eq!(Poly::gcd(&x(), &y()), Poly::one());
        assert_eq!(Poly::gcd(&c(6), &x().scale(&rat(2, 1))), Poly::one());
    }

    #[test]
    fn squarefree_of_double_line() {
        let d = &x() - &y();
        let s = &x() + &y() - &c(1);
        let p = (&(&d * &d) * &s).scale(&rat(-4, 1));
        let f = p.squarefree_factors();
        assert_eq!(f, vec![(s.clone(), 1), (d.clone(), 2)]);
        assert_eq!(p.squarefree_part(), (&d * &s).normalized());
    }

    #[test]
    fn squarefree_with_content() {
        // x^3 y^2: content in x is y^2
        let p = &x().pow(3) * &y().pow(2);
        assert_eq!(p.squarefree_factors(), vec![(y(), 2), (x(), 3)]);
    }

    #[test]
    fn linear_factors_of_the_generic_cubic() {
        // x^3 + y^3 + 3xy - 1 = (x + y - 1)(x^2 - xy + y^2 + x + y + 1)
        let p = &(&x().pow(3) + &y().pow(3)) + &(&(&x() * &y()).scale(&rat(3, 1)) - &c(1));
        assert_eq!(p.rational_linear_factors(), vec![&(&x() + &y()) - &c(1)]);
        // (2x - 1)(3x^2 - y^2) has only one rational line
        let q = &(&x().scale(&rat(2, 1)) - &c(1)) * &(&(&x() * &x()).scale(&rat(3, 1)) - &(&y() * &y()));
        assert_eq!(q.rational_linear_factors(), vec![&x() - &Poly::constant(rat(1, 2))]);
        // y (y - 2) x
        let r = &(&y() * &(&y() - &c(2))) * &x();
        let f = r.rational_linear_factors();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn compose_and_derivative() {
        let p = &x() * &x() + &y();
        let mut subs: [Option<Poly>; NVARS] = Default::default();
        subs[0] = Some(&x() + &y());
        subs[1] = Some(c(2));
        assert_eq!(p.compose(&subs), &(&x() + &y()).pow(2) + &c(2));
        assert_eq!(p.deriv(Var::X), x().scale(&rat(2, 1)));
    }
}
