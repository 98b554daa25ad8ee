//! Classify every tabulated normal form, and a disguised copy of each.

use quadmap::classifier::classify;
use quadmap::orbitdb::{records, OrbitBase};
use quadmap::{AffinePair, Field};
use rand::SeedableRng;

fn main() -> quadmap::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for rec in records().iter().filter(|r| OrbitBase::complex().contains(&r.label)) {
        let f = rec.normal_form.with_field(Field::Complex);
        let g = AffinePair::random(f.n(), &mut rng, 3).act(&f)?;
        let report = classify(&g)?;
        println!(
            "{:>4}  n={}  orbit dim {:>2}  type {:>2}  classified as {}",
            rec.label,
            f.n(),
            report.expected_orbit_dim,
            report.topological_type.map_or("-".into(), |t| t.to_string()),
            report.label.base
        );
    }
    Ok(())
}
