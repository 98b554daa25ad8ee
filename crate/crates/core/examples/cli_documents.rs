//! Map documents and the command-line entry point.

use quadmap::cli::{run, MapDocument};
use quadmap::Field;

fn main() -> quadmap::Result<()> {
    let doc = MapDocument::from_expr("x^2 + y, y^2 + x, xy - 1/2 x", Field::Real)?;
    let text = doc.to_json();
    println!("{text}");
    assert_eq!(MapDocument::parse(&text)?, doc);

    let out = run(["qmap", "classify", "--json"], &mut text.as_bytes());
    println!("exit {}\n{}", out.code, out.stdout);

    let bad = run(["qmap", "classify"], &mut r#"{"field": "C", "components": [[1, 2, "x"]]}"#.as_bytes());
    print!("exit {}: {}", bad.code, bad.stderr);
    Ok(())
}
