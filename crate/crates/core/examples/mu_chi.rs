//! χ against μ: two bare planes over the same two points exceed the bound.
//! The same graph already fails C3, which `check_kmu` reports first.

use trigeom::amalgam::PairOverBase;
use trigeom::graph::{set, GraphBuilder};
use trigeom::mu::{check_kmu, chi, find_chi_violation, mu_value, shape_of, MuPolicy};
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let cfg = Config::default();
    let policy = MuPolicy::canonical();
    let mut b = GraphBuilder::new(6).point(0).point(1);
    for e in 2..4 {
        b = b.plane(e).edges(&[(0, e), (1, e)]);
    }
    let g = b.build();
    let pair = PairOverBase::new(&g, &set(&[0, 1]), &set(&[2]))?;
    let p = chi(&g, &pair, &cfg)?;
    println!("shape {:?}", shape_of(&pair));
    println!("chi {} mu {}", p.chi, mu_value(&policy, &pair, &cfg)?);
    let v = check_kmu(&g, &policy, &cfg)?;
    println!("in K_mu: {}", v.holds);
    println!("certificate {}", serde_json::to_string(&v.certificate).unwrap());
    let c = find_chi_violation(&g, &policy, &cfg)?.and_then(|v| v.certificate);
    println!("chi certificate {}", serde_json::to_string(&c).unwrap());
    Ok(())
}
