//! Exact polynomial arithmetic, resultants and Groebner bases over Q.

use quadmap::groebner::{GroebnerBasis, MonomialOrder};
use quadmap::polycore::{parse_poly, resultant, Var};

fn main() -> quadmap::Result<()> {
    let p = parse_poly("x^2 + y^2 - 1")?;
    let q = parse_poly("x - 2y + 1/3")?;
    println!("p * q = {}", &p * &q);

    let r = resultant(&p, &q, Var::Y)?;
    println!("Res_y(p, q) = {r}");

    let gb = GroebnerBasis::new(&[p.clone(), q.clone()], MonomialOrder::DegRevLex);
    println!("Groebner basis:");
    for g in gb.basis() {
        println!("  {g}");
    }
    println!("x^3 reduces to {}", gb.normal_form(&parse_poly("x^3")?));
    Ok(())
}
