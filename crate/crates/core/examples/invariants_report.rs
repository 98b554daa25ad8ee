//! The invariant vector of a map, piece by piece.

use quadmap::classifier::invariant_vector;
use quadmap::invariants::{critical_scheme, orbit_dimension, stabilizer_dimension, topological_degree};
use quadmap::polycore::parse_tuple;
use quadmap::{Field, QuadMap};

fn main() -> quadmap::Result<()> {
    let f = QuadMap::new(Field::Complex, parse_tuple("x^2 + 2y, y^2 - x + 1, xy + x")?)?;
    println!("F = {f}");

    let crit = critical_scheme(&f);
    println!("jacobian minors:");
    for m in &crit.minors {
        println!("  {m}");
    }
    println!("critical scheme {:?}, multiplicities {:?}", crit.kind, crit.partition());

    let deg = topological_degree(&f)?;
    println!("topological degree {} from {} sample fibers", deg.value, deg.samples.len());
    println!("orbit dimension {}, stabilizer dimension {}", orbit_dimension(&f), stabilizer_dimension(&f));
    println!("invariant vector {}", invariant_vector(&f)?);
    Ok(())
}
