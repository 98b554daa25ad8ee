//! Complex orbits that split over the reals.

use quadmap::classifier::classify;
use quadmap::invariants::real_signatures;
use quadmap::polycore::parse_tuple;
use quadmap::{Field, QuadMap};

fn main() -> quadmap::Result<()> {
    let pairs = [
        ("x^2+y^2, x, y", "x^2-y^2, x, y"),
        ("x^2-y^2, xy, 0", "x^2, y^2, 0"),
        ("x^2+y^2, 0, 0", "x^2-y^2, 0, 0"),
        ("x^2-y^2, xy, x, y", "x^2, y^2, x, y"),
    ];
    for (a, b) in pairs {
        for src in [a, b] {
            let f = QuadMap::new(Field::Real, parse_tuple(src)?)?;
            let complex = classify(&f.with_field(Field::Complex))?.label.base;
            let real = classify(&f)?.label.base;
            println!("({src}): over C {complex}, over R {real}  {:?}", real_signatures(&f)?);
        }
    }
    Ok(())
}
