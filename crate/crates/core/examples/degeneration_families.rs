//! One-parameter families realizing closure edges.

use quadmap::orbitdb::verify_families;

fn main() -> quadmap::Result<()> {
    for check in verify_families()? {
        let samples: Vec<String> = check.samples.iter().map(|(t, l)| format!("t={t}: {l}")).collect();
        println!("{} -> {}  [{}]  {}", check.upper, check.lower, samples.join(", "), if check.ok { "ok" } else { "FAIL" });
    }
    Ok(())
}
