use std::cmp::Ordering;

use crate::polycore::{Monomial, Var, VarSet};

/// Variables are ordered `x > y > x2 > y2 > t` inside every block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    /// Degrevlex on `first`, ties broken by degrevlex on the remaining variables.
    /// Any monomial involving `first` beats every monomial free of it.
    Block { first: VarSet },
}

fn grevlex(a: &Monomial, b: &Monomial, vars: VarSet) -> Ordering {
    let da = a.degree_in(vars);
    let db = b.degree_in(vars);
    if da != db {
        return da.cmp(&db);
    }
    for v in Var::ALL.into_iter().rev().filter(|v| vars.contains(*v)) {
        let (ea, eb) = (a.exp(v), b.exp(v));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn elimination(vars: VarSet) -> Self {
        MonomialOrder::Block { first: vars }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => grevlex(a, b, VarSet::ALL),
            MonomialOrder::Block { first } => grevlex(a, b, *first)
                .then_with(|| grevlex(a, b, VarSet::ALL.minus(*first))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Var;

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        let m = |a, b| Monomial::xy(a, b);
        assert_eq!(o.cmp(&m(2, 0), &m(1, 1)), Ordering::Greater);
        assert_eq!(o.cmp(&m(1, 1), &m(0, 2)), Ordering::Greater);
        assert_eq!(o.cmp(&m(0, 3), &m(2, 0)), Ordering::Greater);
    }

    #[test]
    fn block_eliminates() {
        let o = MonomialOrder::elimination(VarSet::of(&[Var::T]));
        let t = Monomial::var(Var::T);
        assert_eq!(o.cmp(&t, &Monomial::xy(5, 5)), Ordering::Greater);
    }
}
