//! Reduce a generic map step by step to `(x^2 + y, y^2 + x, xy + a x + b y)`.

use quadmap::normalizer::{escape, reduce_to_omega2, route, theta};
use quadmap::polycore::parse_tuple;
use quadmap::{Field, QuadMap};

fn main() -> quadmap::Result<()> {
    let f = QuadMap::new(Field::Complex, parse_tuple("3x^2 - xy + y + 2, x^2 + y^2 - x, 2xy + x^2 - 5")?)?;
    println!("F = {f}");
    println!("route: {:?}", route(&f)?);

    let (g, _) = theta(&f)?;
    println!("after theta:  {g}");
    if let Some((h, _)) = escape(&g)? {
        println!("after escape: {h}");
    }
    let red = reduce_to_omega2(&f, 0)?;
    println!("a = {:.6}, b = {:.6}", red.theta1.a, red.theta1.b);
    println!("residual {:.2e}", red.residual);
    Ok(())
}
