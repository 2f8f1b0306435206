use trigeom::cli::dispatch;
use trigeom::report::parse_text;

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("trigeom").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn delta_of_flag_is_16() {
    let (code, out, _) = run(&["delta", &data("flag.json")]);
    assert_eq!(code, 0);
    let kv = parse_text(&out);
    assert_eq!(kv["value.delta"], "16");
    assert_eq!(kv["trigeom-report"], "1");
    assert_eq!(kv["mode"], "lclosed");
    assert!(kv["command"].starts_with("trigeom delta "));
}

#[test]
fn relative_delta() {
    let f = data("flag.json");
    let (code, out, _) = run(&["delta", &f, "--set", "2", "--over", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(parse_text(&out)["value.delta"], "1");
}

#[test]
fn double_line_fails_c1_with_exit_1() {
    let (code, out, _) = run(&["check", &data("double_line.json"), "--class", "k"]);
    assert_eq!(code, 1);
    let kv = parse_text(&out);
    assert_eq!(kv["holds"], "false");
    assert!(kv["certificate"].contains("\"C1\""), "{out}");
}

#[test]
fn check_with_geometry() {
    let (code, out, _) = run(&["check", &data("flag.json"), "--geometry"]);
    assert_eq!(code, 0);
    assert_eq!(parse_text(&out)["value.geometry_universal_holds"], "1");
}

#[test]
fn strong_closure_and_pairs() {
    let f = data("flag.json");
    assert_eq!(run(&["strong", &f, "--base", "0,1"]).0, 0);
    assert_eq!(run(&["strong", &f, "--base", "0", "--l"]).0, 0);
    assert_eq!(run(&["strong", &f, "--base", "0", "--k", "2"]).0, 0);
    let (code, out, _) = run(&["closure", &f, "--set", "0"]);
    assert_eq!(code, 0);
    assert_eq!(parse_text(&out)["value.d"], "10");
    let (code, out, _) = run(&["pairs", &f, "--base", "0,1", "--ext", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse_text(&out)["value.i"], "1");
}

#[test]
fn non_strong_base_exits_1_with_certificate() {
    // the two points span a line and a plane, so {0,1} is not closed
    let g = r#"{"n":6,"vertices":[{"id":0,"sort":"point"},{"id":1,"sort":"point"},{"id":2,"sort":"line"},{"id":3,"sort":"plane"}],
        "e":[[0,2],[1,2],[2,3]],"e2":[[0,3],[1,3]]}"#;
    let dir = std::env::temp_dir().join("trigeom-cli-nonstrong");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("g.json");
    std::fs::write(&p, g).unwrap();
    let (code, out, _) = run(&["strong", p.to_str().unwrap(), "--base", "0,1"]);
    assert_eq!(code, 1);
    assert!(parse_text(&out).contains_key("certificate"));
}

#[test]
fn chi_above_mu_exits_1() {
    let (code, out, _) = run(&["chi", &data("two_planes.json"), "--base", "0,1", "--ext", "2"]);
    assert_eq!(code, 1);
    let kv = parse_text(&out);
    assert_eq!((kv["value.chi"].as_str(), kv["value.mu"].as_str()), ("2", "1"));
    assert!(kv["certificate"].contains("\"chi\""));
}

#[test]
fn chi_of_non_simple_pair_is_an_input_error() {
    assert_eq!(run(&["chi", &data("flag.json"), "--base", "0,1", "--ext", "2"]).0, 2);
}

#[test]
fn amalgamate_writes_output() {
    let dir = std::env::temp_dir().join("trigeom-cli-amalgam");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("d.json");
    let (code, out, _) = run(&[
        "amalgamate",
        &data("point.json"),
        &data("point_on_line.json"),
        &data("point_on_line.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let d = trigeom::graph::parse_graph(&std::fs::read_to_string(&out_path).unwrap(), false).unwrap();
    assert_eq!(d.len(), 3);
    assert_eq!(parse_text(&out)["value.delta"], "20");
}

#[test]
fn build_resume_matches_straight_run() {
    let dir = std::env::temp_dir().join("trigeom-cli-build");
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b, c) = (dir.join("a.json"), dir.join("b.json"), dir.join("c.json"));
    let s = |p: &std::path::Path| p.to_str().unwrap().to_string();
    assert_eq!(run(&["build", "--steps", "3", "--out", &s(&a)]).0, 0);
    assert_eq!(run(&["build", "--steps", "6", "--resume", &s(&a), "--out", &s(&b)]).0, 0);
    assert_eq!(run(&["build", "--steps", "6", "--out", &s(&c)]).0, 0);
    assert_eq!(std::fs::read(&b).unwrap(), std::fs::read(&c).unwrap());
    let (code, out, _) = run(&["ample", &s(&c), "--flag", "0,1,2"]);
    assert!(code == 0 || code == 1, "{out}");
    assert!(parse_text(&out).contains_key("value.d(p)"));
}

#[test]
fn json_format_parses() {
    let (code, out, _) = run(&["--format", "json", "census", "--max-vertices", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["values"]["K members size 3"], 28);
    assert_eq!(v["version"], 1);
}

#[test]
fn lemma_suite_via_verify() {
    let (code, out, _) = run(&["verify", "--suite", "lemmas", "--jobs", "3"]);
    assert_eq!(code, 0);
    assert_eq!(parse_text(&out)["holds"], "true");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["delta", "/nonexistent/graph.json"]).0, 2);
    assert_eq!(run(&["delta", &data("flag.json"), "--set", "0,x"]).0, 2);
    assert_eq!(run(&["delta", &data("flag.json"), "--set", "99"]).0, 2);
    assert_eq!(run(&["--n", "7", "delta", &data("flag.json")]).0, 2);
    assert_eq!(run(&["--n", "4", "census"]).0, 2);
    assert_eq!(run(&["--budgets", "nonsense=3", "census"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "tmu"]).0, 2);
    assert_eq!(run(&["ample", &data("double_line.json")]).0, 2);
}

#[test]
fn tiny_budget_is_reported_not_truncated() {
    let (code, _, err) = run(&["--budgets", "max_subsets=1", "check", &data("flag.json"), "--class", "k"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).0, 0);
}
