// One pass/fail line per acceptance criterion; exits non-zero on any failure.

use std::time::Instant;
use trigeom::ample::ample_check;
use trigeom::builder::{build, BuildBudgets};
use trigeom::census::census;
use trigeom::kclass::check_geometry;
use trigeom::lemmas::{self, LemmaReport};
use trigeom::mu::{check_kmu, MuPolicy};
use trigeom::{Config, Result};

const GOLDEN: &str = include_str!("golden/build_n6_seed0.json");

fn summary(rs: &[LemmaReport]) -> String {
    rs.iter()
        .map(|r| {
            let extra = if r.values.is_empty() { String::new() } else { format!(" {:?}", r.values) };
            format!("{}: {} instances, {} failures{extra}", r.name, r.instances, r.failures)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn c1(cfg: &Config) -> Result<(bool, String)> {
    let r = lemmas::delta_numerology(6)?;
    let c = census(6, 5, &MuPolicy::canonical(), cfg)?;
    let v = &r.values;
    let exact = (v["point"], v["line"], v["plane"], v["point-line edge"], v["complete flag"]) == (10, 14, 10, 15, 16);
    Ok((
        r.holds() && exact && c.holds(),
        format!("values {:?}; {} bound checks over K up to 5 vertices, {} violations", v, c.bound_checks, c.bound_violations.len()),
    ))
}

fn c2() -> Result<(bool, String)> {
    let mut ok = true;
    let mut d = Vec::new();
    for n in [6, 7, 8] {
        let r = lemmas::non_submodularity(n)?;
        ok &= r.holds() && r.values["delta(e/B)"] == 1 && r.values["delta(e/A)"] == 0;
        d.push(format!("n={n}: δ(e/B)={} δ(e/A)={}", r.values["delta(e/B)"], r.values["delta(e/A)"]));
    }
    Ok((ok, d.join(", ")))
}

fn c3() -> Result<(bool, String)> {
    let r = lemmas::residue_identity(11, 500, 8, 6)?;
    Ok((r.holds() && r.instances == 500, summary(&[r])))
}

fn c4(cfg: &Config) -> Result<(bool, String)> {
    let r = lemmas::path_extension(6, &[4, 5, 6], cfg)?;
    let got = (r.values["k=4"], r.values["k=5"], r.values["k=6"]);
    Ok((r.holds() && got == (0, 1, 1), format!("strong for k=4,5,6: {got:?}")))
}

fn c5(cfg: &Config) -> Result<(bool, String)> {
    let rs = lemmas::free_amalgam_laws(12, 300, 12, 6, cfg)?;
    let ok = rs.iter().all(|r| r.holds())
        && rs[1].instances == 300
        && rs[2].values.get("K-failures at i=0").copied().unwrap_or(0) > 0;
    Ok((ok, summary(&rs)))
}

fn c6(cfg: &Config) -> Result<(bool, String)> {
    let rs = lemmas::residue_degree(6, 6, cfg)?;
    Ok((rs.iter().all(|r| r.holds()), summary(&rs)))
}

fn c7(cfg: &Config) -> Result<(bool, String)> {
    let r = lemmas::closure_laws(13, 200, 10, 6, cfg)?;
    Ok((r.holds(), summary(&[r])))
}

fn c8(cfg: &Config) -> Result<(bool, String)> {
    let r = lemmas::amalgamation_e2e(14, 100, 8, 6, cfg)?;
    let copies = r.values.get("internal copies").copied().unwrap_or(0);
    Ok((r.holds() && r.instances > 100 && copies > 0, format!("{}; {copies} internal copies", summary(std::slice::from_ref(&r)))))
}

fn c9(cfg: &Config) -> Result<(bool, String)> {
    let policy = MuPolicy::canonical();
    let st = build(6, 0, BuildBudgets::default(), policy.clone(), cfg)?;
    let m = &st.graph;
    let bytes = st.to_json() == GOLDEN;
    let kmu = check_kmu(m, &policy, cfg)?.holds;
    let geo = check_geometry(m, cfg)?.all_universal_hold;
    let a = ample_check(m, 0, 1, 2, cfg)?;
    let want = [("d(p)", 10), ("d(p/l)", 1), ("d(p/e)", 5), ("d(l)", 14), ("d(l/e)", 5), ("d(p/le)", 1)];
    let values = want.iter().all(|&(k, v)| a.values.get(k) == Some(&v));
    Ok((
        bytes && kmu && geo && values && a.holds,
        format!(
            "{} steps, {} vertices; golden bytes {bytes}, K_mu {kmu}, geometry {geo}, ample values {values}, conditions {}",
            st.steps_done,
            m.len(),
            a.holds
        ),
    ))
}

fn c10(cfg: &Config) -> Result<(bool, String)> {
    let r = lemmas::mu_chi_guards(6, cfg)?;
    Ok((r.holds(), format!("{:?}", r.values)))
}

fn main() {
    let cfg = Config::default();
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<(bool, String)> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("delta numerology and K bounds", Box::new(|| c1(&cfg))),
        ("non-submodularity", Box::new(c2)),
        ("residue identity", Box::new(c3)),
        ("path-extension threshold", Box::new(|| c4(&cfg))),
        ("free-amalgam laws", Box::new(|| c5(&cfg))),
        ("residue-degree lemmas", Box::new(|| c6(&cfg))),
        ("closure oracle", Box::new(|| c7(&cfg))),
        ("amalgamation end to end", Box::new(|| c8(&cfg))),
        ("builder and ampleness", Box::new(|| c9(&cfg))),
        ("mu/chi guards", Box::new(|| c10(&cfg))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        failed += !ok as usize;
        println!(
            "{} {:>2} {name} [{:.2}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
