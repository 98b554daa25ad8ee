//! Exact expansion of the transcribed normal-form identities.

use quadmap::orbitdb::identity_selftests;

fn main() {
    let checks = identity_selftests();
    for c in &checks {
        println!("{} {}  {}", if c.holds { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.holds).count();
    println!("{} checks, {failed} failed", checks.len());
}
