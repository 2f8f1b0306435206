//! Strong amalgamation of two extensions of a point.

use trigeom::amalgam::amalgamate;
use trigeom::graph::GraphBuilder;
use trigeom::mu::MuPolicy;
use trigeom::predim::delta;
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let cfg = Config::default();
    let c0 = GraphBuilder::new(6).point(0).build();
    let c1 = GraphBuilder::new(6).point(0).line(1).edge(0, 1).build();
    let c2 = GraphBuilder::new(6).point(0).plane(2).edge(0, 2).build();
    let r = amalgamate(&c0, &c1, &c2, &MuPolicy::canonical(), &cfg)?;
    println!("amalgam {} vertices, delta {}", r.d.len(), delta(&r.d, &r.d.ids())?);
    for step in &r.path {
        println!("  step {} i = {} {:?}", step.step, step.i, step.resolution);
    }
    println!("{}", r.d.to_json());
    Ok(())
}
