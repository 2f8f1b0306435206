//! Membership in K with certificates, and the geometry report.

use trigeom::graph::{flag_graph, GraphBuilder};
use trigeom::kclass::{check_geometry, check_k};
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let cfg = Config::default();
    let flag = flag_graph(6, 0, 1, 2);
    println!("flag in K: {}", check_k(&flag, &cfg)?.holds);

    // two lines through two points
    let bad = GraphBuilder::new(6)
        .point(0)
        .point(1)
        .line(2)
        .line(3)
        .edges(&[(0, 2), (0, 3), (1, 2), (1, 3)])
        .build();
    let v = check_k(&bad, &cfg)?;
    println!("double line in K: {}", v.holds);
    println!("certificate {}", serde_json::to_string(&v.certificate).unwrap());

    let geo = check_geometry(&flag, &cfg)?;
    println!("universal conditions hold on the flag: {}", geo.all_universal_hold);
    Ok(())
}
