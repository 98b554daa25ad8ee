//! The closure poset: Graphviz output and closure queries.

use quadmap::orbitdb::{closure_of, edges, is_in_closure, to_dot, OrbitBase};

fn main() -> quadmap::Result<()> {
    print!("{}", to_dot());
    println!("// {} edges", edges().len());
    let f1: OrbitBase = "F1".parse()?;
    let f29: OrbitBase = "F29".parse()?;
    println!("// closure of F1 has {} orbits", closure_of(f1)?.len());
    println!("// F29 in the closure of F1: {}", is_in_closure(f29, f1)?);
    println!("// F1 in the closure of F29: {}", is_in_closure(f1, f29)?);
    Ok(())
}
