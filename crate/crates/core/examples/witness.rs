//! Witnesses: affine pairs carrying the normal form onto a given map.

use quadmap::classifier::classify;
use quadmap::normalizer::{find_witness, WitnessRoute};
use quadmap::orbitdb::lookup;
use quadmap::{AffinePair, Field};
use rand::SeedableRng;

fn main() -> quadmap::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for label in ["F1", "F2", "F3", "F8", "F13", "F20"] {
        let nf = lookup(label.parse()?)?.normal_form.with_field(Field::Complex);
        let f = AffinePair::random(nf.n(), &mut rng, 3).act(&nf)?;
        let report = classify(&f)?;
        let w = find_witness(&f, &report.label)?;
        let checked = match (&w.route, &w.exact) {
            (WitnessRoute::Exact, Some(pair)) => pair.act(&nf)? == f,
            _ => false,
        };
        println!("{label}: {:?} via {}, residual {:.1e}, exact check {checked}", w.route, w.method, w.residual);
    }
    Ok(())
}
