use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::polycore::{Poly, Rational, VarSet};
use crate::quadmap::QuadMap;

pub const DEFAULT_DEGREE_SEED: u64 = 0x5eed_0001;
const SAMPLES: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(k) => write!(f, "{}", k),
            Degree::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(k) => s.serialize_u64(*k as u64),
            Degree::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub value: Degree,
    pub samples: Vec<([Rational; 2], Degree)>,
}

fn sample_point(rng: &mut ChaCha8Rng) -> [Rational; 2] {
    let mut coord = || {
        let num: i64 = rng.gen_range(1..=997) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den: i64 = rng.gen_range(2..=997);
        Rational::new(num.into(), den.into())
    };
    [coord(), coord()]
}

/// Number of distinct points in the fiber through `p`, or `Infinite`.
pub fn fiber_size(f: &QuadMap, p: &[Rational; 2]) -> Degree {
    let value = f.eval(&p[0], &p[1]);
    let gens: Vec<Poly> = f
        .components()
        .iter()
        .zip(value)
        .map(|(c, v)| c - &Poly::constant(v))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Degree::Infinite;
    }
    let gb = GroebnerBasis::new(&gens, MonomialOrder::DegRevLex);
    if !gb.is_zero_dimensional(VarSet::XY) {
        return Degree::Infinite;
    }
    Degree::Finite(radical_length(&gb))
}

/// Distinct zeros: the square-free degree of the characteristic polynomial of
/// `x + c y`, maximized over enough `c` that one of them separates every pair.
fn radical_length(gb: &GroebnerBasis) -> usize {
    use crate::polycore::linalg::charpoly;
    use crate::polycore::{int, Var};
    let len = gb.standard_monomials(VarSet::XY).map_or(0, |s| s.len());
    let mut best = 0;
    for c in 0..=(len * len.saturating_sub(1) / 2) as i64 {
        let l = &Poly::x() + &(&Poly::var(Var::Y) * &Poly::constant(int(c)));
        let m = gb.multiplication_matrix(VarSet::XY, &l).expect("zero-dimensional");
        best = best.max(charpoly(&m).squarefree_part().degree());
        if best == len {
            break;
        }
    }
    best
}

pub fn topological_degree(f: &QuadMap) -> Result<DegreeReport> {
    topological_degree_seeded(f, DEFAULT_DEGREE_SEED)
}

/// Generic fiber cardinality over seven seeded rational base points, which must agree.
pub fn topological_degree_seeded(f: &QuadMap, seed: u64) -> Result<DegreeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<([Rational; 2], Degree)> = (0..SAMPLES)
        .map(|_| {
            let p = sample_point(&mut rng);
            let d = fiber_size(f, &p);
            (p, d)
        })
        .collect();
    let value = samples[0].1;
    if samples.iter().any(|(_, d)| *d != value) {
        return Err(Error::DegreeSamplesDisagree(
            samples.iter().map(|(p, d)| format!("({}, {}) -> {}", p[0], p[1], d)).collect(),
        ));
    }
    Ok(DegreeReport { value, samples })
}
