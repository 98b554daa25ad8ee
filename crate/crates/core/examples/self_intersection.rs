//! Self-intersection curves by the colon ideal and by the midpoint method.

use quadmap::invariants::{self_intersection_colon, self_intersection_midpoint};
use quadmap::polycore::parse_tuple;
use quadmap::{Field, QuadMap};

fn main() -> quadmap::Result<()> {
    for src in ["x^2+y, y^2+x, xy", "x^2+y, y^2+x, xy - 3/2 x - 3/2 y", "x^2, y^2, x+y", "x^2+y, xy, y"] {
        let f = QuadMap::new(Field::Complex, parse_tuple(src)?)?;
        let si = self_intersection_colon(&f)?;
        let mid = self_intersection_midpoint(&f)?;
        let factors: Vec<String> = si.factors.iter().map(|(p, m)| format!("({p})^{m}")).collect();
        println!("({src})");
        println!("  colon:    {}", factors.join(" "));
        println!("  midpoint: {}", mid.as_ref().map_or("none".into(), |p| p.to_string()));
        println!("  radicals agree: {}", si.radical() == mid.as_ref().map(|p| p.normalized()));
    }
    Ok(())
}
