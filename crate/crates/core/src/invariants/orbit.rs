use crate::polycore::linalg::{rank, Matrix};
use crate::polycore::{Monomial, Poly, Rational, Var};
use crate::quadmap::{coeff_vector, QuadMap};

/// `dim GA(n) x GA(2) = n(n+1) + 6`.
pub fn group_dimension(n: usize) -> usize {
    n * (n + 1) + 6
}

/// Rank of the infinitesimal action
/// `(A, c, B, d) -> A F + c + DF (B (x, y) + d)` on the `6n` coefficients.
pub fn orbit_dimension(f: &QuadMap) -> usize {
    let n = f.n();
    let comps = f.components();
    let grads: Vec<[Poly; 2]> = comps.iter().map(|p| [p.deriv(Var::X), p.deriv(Var::Y)]).collect();
    let mut rows: Matrix = vec![];
    let embed = |i: usize, p: &Poly| {
        let mut v = vec![Rational::from_integer(0.into()); 6 * n];
        for (k, c) in coeff_vector(p).into_iter().enumerate() {
            v[6 * i + k] = c;
        }
        v
    };
    // target linear part and translation
    for i in 0..n {
        for p in comps {
            rows.push(embed(i, p));
        }
        rows.push(embed(i, &Poly::one()));
    }
    // source side: DF applied to B (x, y) + d
    let source_dirs = [
        Poly::term(Rational::from_integer(1.into()), Monomial::xy(1, 0)),
        Poly::term(Rational::from_integer(1.into()), Monomial::xy(0, 1)),
        Poly::one(),
    ];
    for k in 0..2 {
        for dir in &source_dirs {
            let mut v = vec![];
            for (i, g) in grads.iter().enumerate() {
                let e = embed(i, &(&g[k] * dir));
                v.push(e);
            }
            let mut sum = vec![Rational::from_integer(0.into()); 6 * n];
            for e in v {
                for (s, x) in sum.iter_mut().zip(e) {
                    *s += x;
                }
            }
            rows.push(sum);
        }
    }
    rank(&rows)
}

pub fn stabilizer_dimension(f: &QuadMap) -> usize {
    group_dimension(f.n()) - orbit_dimension(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadmap::{map_from_ints, Field};

    #[test]
    fn generic_and_embedded() {
        let f1 = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0]]);
        assert_eq!(orbit_dimension(&f1), 18);
        assert_eq!(orbit_dimension(&f1.embed(5)), 26);
        let f16 = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0; 6]]);
        assert_eq!(orbit_dimension(&f16), 12);
        let zero = map_from_ints(Field::Complex, &[[0; 6], [0; 6], [0; 6]]);
        assert_eq!(orbit_dimension(&zero), 3);
    }
}
