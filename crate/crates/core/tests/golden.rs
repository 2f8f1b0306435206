// The 50-step run at n = 6, seed 0, default budgets, pinned byte for byte.

use std::sync::OnceLock;
use trigeom::ample::{ample_check, extract_flag_residue};
use trigeom::builder::{build, verify_tmu, BuildBudgets, BuilderState};
use trigeom::graph::set;
use trigeom::kclass::check_geometry;
use trigeom::mu::{check_kmu, MuPolicy};
use trigeom::Config;

const GOLDEN: &str = include_str!("golden/build_n6_seed0.json");

fn golden() -> &'static BuilderState {
    static ST: OnceLock<BuilderState> = OnceLock::new();
    ST.get_or_init(|| build(6, 0, BuildBudgets::default(), MuPolicy::canonical(), &Config::default()).unwrap())
}

#[test]
fn run_is_byte_reproducible() {
    assert_eq!(golden().to_json(), GOLDEN);
    let again = BuilderState::from_json(GOLDEN).unwrap();
    assert_eq!(&again, golden());
}

#[test]
fn model_is_in_k_mu_with_universal_geometry() {
    let cfg = Config::default();
    let m = &golden().graph;
    assert_eq!(golden().steps_done, 50);
    assert!(check_kmu(m, &MuPolicy::canonical(), &cfg).unwrap().holds);
    let geo = check_geometry(m, &cfg).unwrap();
    assert!(geo.all_universal_hold, "{:?}", geo.universal);
    let (hit, total) = geo.coverage.values().fold((0, 0), |(h, t), c| (h + c.hit, t + c.total));
    assert!(0 < hit && hit < total, "coverage {hit}/{total}");
    // recorded only for i >= 1 minimal steps over a k-strong base
    let checked: Vec<_> = golden().log.iter().filter_map(|ev| ev.strong_extension).collect();
    assert!(!checked.is_empty());
    assert!(checked.iter().all(|&b| b));
}

#[test]
fn seed_flag_values() {
    let m = &golden().graph;
    let r = ample_check(m, 0, 1, 2, &Config::default()).unwrap();
    let v = |k: &str| r.values[k];
    assert_eq!(v("d(p)"), 10);
    assert_eq!(v("d(p/l)"), 1);
    assert_eq!(v("d(p/e)"), 5);
    assert_eq!(v("d(l)"), 14);
    assert_eq!(v("d(l/e)"), 5);
    assert_eq!(v("d(p/le)"), 1);
    assert!(r.holds, "{:?}", r.conditions);
    assert_eq!(extract_flag_residue(m, 0, 1).unwrap(), set(&[2, 11]));
}

#[test]
fn axiom_three_shortfalls_are_finite_deficits() {
    let cfg = Config::default();
    let r = verify_tmu(&golden().graph, &MuPolicy::canonical(), 2, 1, &cfg).unwrap();
    assert!(r.axiom1.holds);
    assert!(r.axiom3.satisfied > 0);
    // a simple pair whose free amalgam stays in K_mu has room left: chi < mu
    assert_eq!(r.axiom3.below_mu, r.axiom3.violated);
}
