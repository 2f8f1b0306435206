//! δ on small configurations at n = 6, and the failure of submodularity.

use trigeom::graph::{flag_graph, set, GraphBuilder};
use trigeom::predim::{delta, delta1, delta_rel};

pub fn main() -> trigeom::Result<()> {
    let flag = flag_graph(6, 0, 1, 2);
    println!("point {}", delta(&flag, &set(&[0]))?);
    println!("line {}", delta(&flag, &set(&[1]))?);
    println!("point on line {}", delta(&flag, &set(&[0, 1]))?);
    println!("complete flag {}", delta(&flag, &flag.ids())?);
    println!("plane over point and line {}", delta_rel(&flag, &set(&[2]), &set(&[0, 1]))?);

    // p on two lines inside e: the second line adds an edge and a flag
    let g = GraphBuilder::new(6)
        .point(0)
        .line(1)
        .line(3)
        .plane(2)
        .edges(&[(0, 1), (1, 2), (0, 2), (0, 3), (3, 2)])
        .build();
    println!("two lines through p in e {}", delta(&g, &g.ids())?);
    println!("delta1 of the residue of e {}", delta1(&g, &set(&[0, 1, 3]))?);
    Ok(())
}
