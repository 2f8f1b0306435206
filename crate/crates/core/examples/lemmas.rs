//! The randomized and exhaustive lemma suites at the smallest budget.

use trigeom::lemmas::run_suite;
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    for r in run_suite(1, &Config::default())? {
        println!("{:<45} {:>5} instances {} failures", r.name, r.instances, r.failures);
    }
    Ok(())
}
