//! Iso types of K and K_μ by size, with the δ floors checked.

use trigeom::census::census;
use trigeom::mu::MuPolicy;
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let r = census(6, 4, &MuPolicy::canonical(), &Config::default())?;
    println!("size  K  K_mu  min delta");
    for row in &r.rows {
        let d = row.min_delta.map_or("-".to_string(), |d| d.to_string());
        println!("{:>4} {:>3} {:>5} {:>10}", row.size, row.k_members, row.kmu_members, d);
    }
    println!("{} bound checks, {} violations", r.bound_checks, r.bound_violations.len());
    Ok(())
}
