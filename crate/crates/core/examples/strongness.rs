//! Strong subsets, k-strongness and self-sufficient closure.

use trigeom::graph::{set, GraphBuilder};
use trigeom::predim::{closure_report, is_k_strong, is_l_strong, is_strong};
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let cfg = Config::default();
    // two points with a line and a plane through both
    let g = GraphBuilder::new(6)
        .point(0)
        .point(1)
        .line(2)
        .plane(3)
        .edges(&[(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)])
        .build();
    let a = set(&[0, 1]);
    let v = is_strong(&g, &a, &g.ids(), &cfg)?;
    println!("{{0,1}} strong: {}", v.holds);
    if let Some(c) = &v.certificate {
        println!("  certificate {}", serde_json::to_string(c).unwrap());
    }
    println!("{{0,1}} 1-strong: {}", is_k_strong(&g, &a, &g.ids(), 1, &cfg)?.holds);
    println!("{{0,1}} L-strong: {}", is_l_strong(&g, &a, &g.ids())?.holds);
    let cl = closure_report(&g, &a, &cfg)?;
    println!("closure {:?} d = {}", cl.set, cl.d);
    Ok(())
}
