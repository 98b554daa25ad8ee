use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use super::QuotientDim;
use crate::polycore::linalg::Matrix;
use crate::polycore::rational::{neg_mul, sub_mul as sub_mul_coef};
use crate::polycore::{Monomial, Poly, Rational, Var, VarSet};

/// Terms sorted strictly descending in the active order.
type Terms = Vec<(Monomial, Rational)>;

fn to_terms(p: &Poly, ord: &MonomialOrder) -> Terms {
    let mut v: Terms = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    v
}

fn to_poly(t: &Terms) -> Poly {
    Poly::from_terms(t.iter().cloned())
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `a - coef * q * b`
fn sub_mul(a: &[(Monomial, Rational)], coef: &Rational, q: &Monomial, b: &[(Monomial, Rational)], ord: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let bm = b[j].0.mul(q);
        if i == a.len() {
            out.push((bm, neg_mul(coef, &b[j].1)));
            j += 1;
            continue;
        }
        match ord.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, neg_mul(coef, &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = sub_mul_coef(&a[i].1, coef, &b[j].1);
                if !c.is_zero() {
                    out.push((bm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` modulo `basis` (leading terms must be monic).
fn reduce(p: Terms, basis: &[Terms], ord: &MonomialOrder) -> Terms {
    let mut p = p;
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (m, c) = (p[start].0, p[start].1.clone());
        match basis.iter().find(|g| g[0].0.divides(&m)) {
            Some(g) => {
                let q = m.checked_div(&g[0].0).unwrap();
                p = sub_mul(&p[start + 1..], &c, &q, &g[1..], ord);
                start = 0;
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    rem
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced, monic Groebner basis sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn new(gens: &[Poly], order: MonomialOrder) -> Self {
        let ord = order;
        let mut g: Vec<Terms> = vec![];
        let mut sugar: Vec<u32> = vec![];
        let mut pairs: Vec<Pair> = vec![];
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        let add = |t: Terms, s: u32, g: &mut Vec<Terms>, sugar: &mut Vec<u32>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>| {
            let k = g.len();
            for (i, gi) in g.iter().enumerate() {
                let lcm = gi[0].0.lcm(&t[0].0);
                let si = sugar[i] + lcm.degree() - gi[0].0.degree();
                let sk = s + lcm.degree() - t[0].0.degree();
                pairs.push(Pair { i, j: k, lcm, sugar: si.max(sk) });
                pending.insert((i, k));
            }
            g.push(t);
            sugar.push(s);
        };

        for p in gens {
            let mut t = to_terms(p, &ord);
            if t.is_empty() {
                continue;
            }
            make_monic(&mut t);
            let s = p.degree();
            add(t, s, &mut g, &mut sugar, &mut pairs, &mut pending);
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.sugar
                        .cmp(&pb.sugar)
                        .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                        .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
                })
                .unwrap();
            let pair = pairs.swap_remove(best);
            pending.remove(&(pair.i, pair.j));
            let (li, lj) = (g[pair.i][0].0, g[pair.j][0].0);
            // product criterion
            if li.gcd(&lj).is_one() {
                continue;
            }
            // chain criterion
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            if (0..g.len()).any(|k| {
                k != pair.i
                    && k != pair.j
                    && g[k][0].0.divides(&pair.lcm)
                    && !pending.contains(&key(pair.i, k))
                    && !pending.contains(&key(pair.j, k))
            }) {
                continue;
            }
            let qi = pair.lcm.checked_div(&li).unwrap();
            let qj = pair.lcm.checked_div(&lj).unwrap();
            let gi_tail: Terms = g[pair.i][1..].iter().map(|(m, c)| (m.mul(&qi), c.clone())).collect();
            let s = sub_mul(&gi_tail, &Rational::one(), &qj, &g[pair.j][1..], &ord);
            let mut h = reduce(s, &g, &ord);
            if h.is_empty() {
                continue;
            }
            make_monic(&mut h);
            add(h, pair.sugar, &mut g, &mut sugar, &mut pairs, &mut pending);
        }

        // minimalize then interreduce
        g.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
        let mut minimal: Vec<Terms> = vec![];
        for (idx, p) in g.iter().enumerate() {
            let lm = p[0].0;
            let redundant = g.iter().enumerate().any(|(k, q)| {
                k != idx && q[0].0.divides(&lm) && (q[0].0 != lm || k < idx)
            });
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let mut reduced = vec![];
        for i in 0..minimal.len() {
            let others: Vec<Terms> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, t)| t.clone())
                .collect();
            let head = minimal[i][0].clone();
            let mut tail = reduce(minimal[i][1..].to_vec(), &others, &ord);
            tail.insert(0, head);
            make_monic(&mut tail);
            reduced.push(tail);
        }
        GroebnerBasis { order, polys: reduced }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.polys.iter().map(to_poly).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|t| t[0].0).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|t| t[0].0.is_one())
    }

    /// The zero ideal has an empty basis.
    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        to_poly(&reduce(to_terms(p, &self.order), &self.polys, &self.order))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Basis elements free of `vars`; the elimination ideal when the order eliminates `vars`.
    pub fn eliminate(&self, vars: VarSet) -> Vec<Poly> {
        self.polys
            .iter()
            .filter(|t| t.iter().all(|(m, _)| m.support().minus(vars) == m.support()))
            .map(to_poly)
            .collect()
    }

    fn staircase_bounds(&self, ring: VarSet) -> Option<Vec<(Var, u16)>> {
        ring.iter()
            .map(|v| {
                self.polys
                    .iter()
                    .filter(|t| t[0].0.support() == VarSet::of(&[v]))
                    .map(|t| t[0].0.exp(v))
                    .min()
                    .map(|e| (v, e))
            })
            .collect()
    }

    pub fn is_zero_dimensional(&self, ring: VarSet) -> bool {
        self.is_unit() || self.staircase_bounds(ring).is_some()
    }

    /// Standard monomials in ascending order, `None` if there are infinitely many.
    pub fn standard_monomials(&self, ring: VarSet) -> Option<Vec<Monomial>> {
        if self.is_unit() {
            return Some(vec![]);
        }
        let bounds = self.staircase_bounds(ring)?;
        let lms = self.leading_monomials();
        let mut out = vec![Monomial::one()];
        for (v, b) in bounds {
            let mut next = vec![];
            for m in &out {
                for e in 0..b {
                    let mut n = *m;
                    n.0[v.index()] = e;
                    next.push(n);
                }
            }
            out = next;
        }
        out.retain(|m| !lms.iter().any(|l| l.divides(m)));
        out.sort_by(|a, b| self.order.cmp(a, b));
        Some(out)
    }

    pub fn quotient_dimension(&self, ring: VarSet) -> QuotientDim {
        match self.standard_monomials(ring) {
            Some(s) => QuotientDim::Finite(s.len()),
            None => QuotientDim::Infinite,
        }
    }

    /// Coordinates of the normal form of `p` on the standard monomials.
    pub fn coordinates(&self, basis: &[Monomial], p: &Poly) -> Vec<Rational> {
        let nf = self.normal_form(p);
        basis.iter().map(|m| nf.coeff(m)).collect()
    }

    /// `M[i][j]` = coefficient of `b_i` in `NF(f * b_j)`.
    pub fn multiplication_matrix(&self, ring: VarSet, f: &Poly) -> Option<Matrix> {
        let basis = self.standard_monomials(ring)?;
        let cols: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| self.coordinates(&basis, &f.mul_monomial(b)))
            .collect();
        Some(crate::polycore::linalg::transpose(&cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::int;

    fn x() -> Poly {
        Poly::x()
    }
    fn y() -> Poly {
        Poly::y()
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 - 1, x - y: two points
        let gb = GroebnerBasis::new(
            &[&(&x() * &x()) + &(&(&y() * &y()) - &Poly::int(1)), &x() - &y()],
            MonomialOrder::DegRevLex,
        );
        assert_eq!(gb.quotient_dimension(VarSet::XY), QuotientDim::Finite(2));
        assert!(gb.contains(&(&(&y() * &y()).scale(&int(2)) - &Poly::int(1))));
        assert!(!gb.contains(&y()));
    }

    #[test]
    fn unit_and_infinite() {
        let gb = GroebnerBasis::new(&[x(), &x() - &Poly::int(1)], MonomialOrder::DegRevLex);
        assert!(gb.is_unit());
        assert_eq!(gb.quotient_dimension(VarSet::XY), QuotientDim::Finite(0));
        let gb = GroebnerBasis::new(&[&x() * &y()], MonomialOrder::DegRevLex);
        assert_eq!(gb.quotient_dimension(VarSet::XY), QuotientDim::Infinite);
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let a = [&(&x() * &x()) - &y(), &(&x() * &y()) - &x()];
        let b = [&a[0] + &a[1], a[1].clone(), &a[0] - &a[1].scale(&int(3))];
        let ga = GroebnerBasis::new(&a, MonomialOrder::DegRevLex).basis();
        let gb = GroebnerBasis::new(&b, MonomialOrder::DegRevLex).basis();
        assert_eq!(ga, gb);
    }

    #[test]
    fn elimination_order() {
        // t x - 1, y - t^2  =>  x^2 y - 1
        let t = Poly::var(Var::T);
        let gb = GroebnerBasis::new(
            &[&(&t * &x()) - &Poly::int(1), &y() - &(&t * &t)],
            MonomialOrder::elimination(VarSet::of(&[Var::T])),
        );
        let e = gb.eliminate(VarSet::of(&[Var::T]));
        assert_eq!(e, vec![&(&(&x() * &x()) * &y()) - &Poly::int(1)]);
    }
}
