//! A few steps of the generic-model builder, saved and resumed.

use trigeom::builder::{build, run, BuildBudgets, BuilderState};
use trigeom::mu::MuPolicy;
use trigeom::Config;

pub fn main() -> trigeom::Result<()> {
    let cfg = Config::default();
    let budgets = BuildBudgets {
        steps: 4,
        ..BuildBudgets::default()
    };
    let st = build(6, 0, budgets, MuPolicy::canonical(), &cfg)?;
    for ev in &st.log {
        println!(
            "step {} base {:?} added {:?} i = {} delta {} -> {}",
            ev.step, ev.base, ev.added, ev.i, ev.delta_before, ev.delta_after
        );
    }
    let mut again = BuilderState::from_json(&st.to_json())?;
    again.budgets.steps = 8;
    run(&mut again, &cfg)?;
    println!("resumed to {} steps, {} vertices", again.steps_done, again.graph.len());
    Ok(())
}
