//! The 2-ampleness check on the seed flag of a built model.

use trigeom::ample::{ample_check, extract_flag_residue};
use trigeom::builder::{build, BuildBudgets};
use trigeom::mu::MuPolicy;
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let cfg = Config::default();
    let budgets = BuildBudgets {
        steps: 12,
        ..BuildBudgets::default()
    };
    let st = build(6, 0, budgets, MuPolicy::canonical(), &cfg)?;
    let r = ample_check(&st.graph, 0, 1, 2, &cfg)?;
    for (k, v) in &r.values {
        println!("{k} = {v}");
    }
    for c in &r.conditions {
        println!("{}: {} ({})", c.name, c.holds, c.detail);
    }
    println!("planes through point 0 and line 1: {:?}", extract_flag_residue(&st.graph, 0, 1)?);
    Ok(())
}
