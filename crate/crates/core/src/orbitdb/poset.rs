//! Closure order on the 34 complex orbits.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::labels::OrbitBase;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeSource {
    /// A segment of the published closure diagram.
    Diagram,
    /// Added here; not part of the diagram.
    Editorial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PosetEdge {
    pub upper: OrbitBase,
    pub lower: OrbitBase,
    pub source: EdgeSource,
}

const fn f(i: u8) -> OrbitBase {
    OrbitBase::f(i)
}
const fn g(i: u8) -> OrbitBase {
    OrbitBase::g(i)
}

/// Covering relations of the diagram, upper orbit first.
const DIAGRAM: &[(OrbitBase, OrbitBase)] = &[
    (g(0), g(1)),
    (g(1), g(2)),
    (g(2), f(1)),
    (g(2), g(3)),
    (g(3), f(5)),
    (g(3), g(4)),
    (g(4), f(8)),
    (f(1), f(2)),
    (f(1), f(5)),
    (f(2), f(3)),
    (f(2), f(6)),
    (f(2), f(8)),
    (f(3), f(4)),
    (f(3), f(7)),
    (f(3), f(9)),
    (f(3), f(14)),
    (f(4), f(13)),
    (f(4), f(18)),
    (f(4), f(25)),
    (f(5), f(6)),
    (f(5), f(8)),
    (f(6), f(7)),
    (f(6), f(9)),
    (f(6), f(11)),
    (f(7), f(10)),
    (f(7), f(12)),
    (f(8), f(9)),
    (f(9), f(10)),
    (f(9), f(14)),
    (f(9), f(17)),
    (f(10), f(15)),
    (f(10), f(19)),
    (f(11), f(12)),
    (f(11), f(14)),
    (f(12), f(13)),
    (f(12), f(15)),
    (f(12), f(19)),
    (f(13), f(16)),
    (f(13), f(21)),
    (f(14), f(15)),
    (f(14), f(18)),
    (f(15), f(16)),
    (f(15), f(20)),
    (f(16), f(23)),
    (f(16), f(25)),
    (f(17), f(18)),
    (f(17), f(19)),
    (f(18), f(21)),
    (f(18), f(23)),
    (f(19), f(20)),
    (f(19), f(21)),
    (f(20), f(23)),
    (f(20), f(25)),
    (f(21), f(22)),
    (f(22), f(23)),
    (f(22), f(24)),
    (f(22), f(26)),
    (f(23), f(27)),
    (f(24), f(28)),
    (f(25), f(26)),
    (f(26), f(27)),
    (f(27), f(28)),
    (f(28), f(29)),
];

/// Every stored edge. The diagram alone already connects every family's
/// endpoints, so no editorial edges are currently needed.
pub fn edges() -> Vec<PosetEdge> {
    DIAGRAM
        .iter()
        .map(|&(upper, lower)| PosetEdge { upper, lower, source: EdgeSource::Diagram })
        .collect()
}

fn check(b: OrbitBase) -> Result<()> {
    if b.primed || !b.is_valid() {
        return Err(Error::UnknownLabel(format!("{} is not a complex orbit", b)));
    }
    Ok(())
}

fn successors() -> BTreeMap<OrbitBase, Vec<OrbitBase>> {
    let mut m: BTreeMap<OrbitBase, Vec<OrbitBase>> = BTreeMap::new();
    for e in edges() {
        m.entry(e.upper).or_default().push(e.lower);
    }
    m
}

/// All orbits in the closure of `upper`, itself included.
pub fn closure_of(upper: OrbitBase) -> Result<BTreeSet<OrbitBase>> {
    check(upper)?;
    let succ = successors();
    let mut seen = BTreeSet::from([upper]);
    let mut queue = VecDeque::from([upper]);
    while let Some(v) = queue.pop_front() {
        for &w in succ.get(&v).into_iter().flatten() {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    Ok(seen)
}

/// Whether `O(lower)` lies in the closure of `O(upper)`.
pub fn is_in_closure(lower: OrbitBase, upper: OrbitBase) -> Result<bool> {
    check(lower)?;
    Ok(closure_of(upper)?.contains(&lower))
}

/// Graphviz rendering, one node per complex orbit.
pub fn to_dot() -> String {
    let mut s = String::from("digraph orbits {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for b in OrbitBase::complex() {
        s.push_str(&format!("  \"{}\";\n", b));
    }
    for e in edges() {
        let style = match e.source {
            EdgeSource::Diagram => "",
            EdgeSource::Editorial => " [style=dashed]",
        };
        s.push_str(&format!("  \"{}\" -> \"{}\"{};\n", e.upper, e.lower, style));
    }
    s.push_str("}\n");
    s
}
