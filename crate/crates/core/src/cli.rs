//! Command-line front door: parse documents, dispatch a verb, print a report.
//!
//! Exit codes: `0` holds or success, `1` definite failure with a certificate,
//! `2` usage, input or budget error.

use crate::amalgam::{amalgamate, classify_extension, PairOverBase};
use crate::ample::{ample_check, extract_flag_residue};
use crate::builder::{run as run_builder, verify_tmu, BuildBudgets, BuilderState};
use crate::census::census;
use crate::config::{Budgets, Config, StrongnessMode};
use crate::error::{Error, Result};
use crate::graph::{parse_graph, Id, IdSet, TriGraph};
use crate::kclass::{check_geometry, check_k};
use crate::lemmas;
use crate::mu::{check_kmu, chi, mu_value, shape_of, MuPolicy};
use crate::predim::{closure_report, delta, is_k_strong, is_l_strong, is_strong};
use crate::report::Report;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "trigeom", version, about = "Predimension, class membership and amalgamation for 3-sorted incidence graphs")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Polygon parameter (at least 6 unless --allow-small-n).
    #[arg(long, global = true, default_value_t = 6)]
    pub n: u32,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Lclosed)]
    pub mode: ModeArg,
    /// Also impose condition 6b on planes.
    #[arg(long, global = true)]
    pub dual6b: bool,
    #[arg(long, global = true)]
    pub allow_small_n: bool,
    /// Worker threads for independent searches; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// μ policy document (JSON); the canonical policy when absent.
    #[arg(long, global = true)]
    pub policy: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Budget overrides `key=value,...`, applied after the environment ones.
    #[arg(long, global = true)]
    pub budgets: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lclosed,
    Literal,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    K,
    Kmu,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Tmu,
    Ample,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Class membership (K or K_μ), optionally with the geometry report.
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ClassArg::Kmu)]
        class: ClassArg,
        #[arg(long)]
        geometry: bool,
    },
    /// δ of a set, or of a set over a base.
    Delta {
        graph: PathBuf,
        /// Comma-separated ids; the whole graph when absent.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        over: Option<String>,
    },
    /// `A ≤ B`, `A ≤_k B` or `A ≤_L B`.
    Strong {
        graph: PathBuf,
        #[arg(long)]
        base: String,
        /// Universe `B`; the whole graph when absent.
        #[arg(long)]
        within: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, conflicts_with = "k")]
        l: bool,
    },
    /// Self-sufficient closure and `d`.
    Closure {
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Classify the extension `A ⊆ A ∪ B` inside a graph.
    Pairs {
        graph: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long)]
        ext: String,
    },
    /// Copies of a simple pair in an ambient graph against μ.
    Chi {
        /// The ambient graph.
        graph: PathBuf,
        /// Graph holding the pair; the ambient itself when absent.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        base: String,
        #[arg(long)]
        ext: String,
    },
    /// Strong amalgam of `c1` and `c2` over `c0` (shared ids).
    Amalgamate {
        c0: PathBuf,
        c1: PathBuf,
        c2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grow a finite approximation of the generic model.
    Build {
        #[arg(long, default_value_t = 50)]
        steps: u64,
        #[arg(long, default_value_t = 4)]
        max_ext: usize,
        #[arg(long, default_value_t = 2)]
        max_base: usize,
        #[arg(long, default_value_t = 16)]
        max_component: usize,
        /// Continue from a state document; its own budgets apply except `--steps`.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lemma suites, the limit-theory axioms on a graph, or the flag check.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Graph or state document (needed for tmu and ample).
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        budget: u32,
        /// Flag `p,l,e` for the ample suite; the seed flag when absent.
        #[arg(long)]
        flag: Option<String>,
    },
    /// 2-ampleness witness check on a flag.
    Ample {
        input: PathBuf,
        #[arg(long)]
        flag: Option<String>,
        /// Also list the completions of the partial flag `a,b`.
        #[arg(long)]
        residue: Option<String>,
    },
    /// Exhaustive K / K_μ enumeration up to a vertex bound.
    Census {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
    },
}

struct Ctx {
    run: RunArgs,
    cfg: Config,
    policy: MuPolicy,
    policy_name: String,
    command: String,
}

fn parse_ids(s: &str) -> Result<IdSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Id>().map_err(|_| Error::Parse(format!("bad id {t:?}"))))
        .collect()
}

fn parse_flag(s: &str) -> Result<(Id, Id, Id)> {
    let v: Vec<Id> = s
        .split(',')
        .map(|t| t.trim().parse::<Id>().map_err(|_| Error::Parse(format!("bad id {t:?}"))))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [p, l, e] => Ok((*p, *l, *e)),
        _ => Err(Error::Parse(format!("flag needs three ids, got {s:?}"))),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

impl Ctx {
    fn graph(&self, path: &Path) -> Result<TriGraph> {
        let g = parse_graph(&read(path)?, self.run.allow_small_n)?;
        self.check_n(&g)?;
        Ok(g)
    }

    fn check_n(&self, g: &TriGraph) -> Result<()> {
        if g.n() != self.run.n {
            return Err(Error::BadParameter(format!(
                "document has n = {} but the run uses n = {}",
                g.n(),
                self.run.n
            )));
        }
        Ok(())
    }

    /// A graph document or the graph of a builder state document.
    fn graph_or_state(&self, path: &Path) -> Result<TriGraph> {
        let text = read(path)?;
        let v: serde_json::Value = serde_json::from_str(&text)?;
        if v.get("cursor").is_some() {
            let st = BuilderState::from_json(&text)?;
            self.check_n(&st.graph)?;
            return Ok(st.graph);
        }
        self.graph(path)
    }

    fn report(&self, op: &str) -> Report {
        Report::new(op, self.command.clone(), self.run.n, &self.cfg, self.run.seed, &self.policy_name)
    }
}

/// Parse `args` (program name first), run the verb and print its report.
pub fn dispatch<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut words = vec!["trigeom".to_string()];
    words.extend(args.iter().skip(1).cloned());
    match run_cli(cli, words.join(" "), out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotStrong { .. } => 1,
                _ => 2,
            }
        }
    }
}

fn emit(ctx: &Ctx, r: &Report, out: &mut dyn Write) -> Result<()> {
    let text = match ctx.run.format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json() + "\n",
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn code_of(holds: Option<bool>) -> i32 {
    match holds {
        Some(false) => 1,
        _ => 0,
    }
}

fn run_cli(cli: Cli, command: String, out: &mut dyn Write) -> Result<i32> {
    let run = cli.run;
    if run.n < 6 && !run.allow_small_n {
        return Err(Error::BadParameter(format!("n = {} (need n >= 6 unless --allow-small-n)", run.n)));
    }
    if run.n < 2 {
        return Err(Error::BadParameter(format!("n = {}", run.n)));
    }
    if run.jobs == 0 {
        return Err(Error::BadParameter("--jobs must be positive".into()));
    }
    let mut budgets = Budgets::from_env()?;
    if let Some(spec) = &run.budgets {
        budgets.apply_overrides(spec)?;
    }
    let mode = match run.mode {
        ModeArg::Lclosed => StrongnessMode::LClosed,
        ModeArg::Literal => StrongnessMode::Literal,
    };
    let cfg = Config {
        mode,
        budgets,
        dual6b: run.dual6b,
    };
    let (policy, policy_name) = match &run.policy {
        Some(p) => (MuPolicy::from_json(&read(p)?)?, p.display().to_string()),
        None => (MuPolicy::canonical(), "canonical".to_string()),
    };
    let ctx = Ctx {
        run,
        cfg,
        policy,
        policy_name,
        command,
    };
    let cfg = &ctx.cfg;
    let mut r;
    match cli.verb {
        Verb::Check { graph, class, geometry } => {
            let g = ctx.graph(&graph)?;
            let v = match class {
                ClassArg::K => check_k(&g, cfg)?,
                ClassArg::Kmu => check_kmu(&g, &ctx.policy, cfg)?,
            };
            r = ctx.report(match class {
                ClassArg::K => "check K",
                ClassArg::Kmu => "check K_mu",
            });
            r.holds = Some(v.holds);
            r.values = v.values.clone();
            r.value("delta", delta(&g, &g.ids())?);
            r.certificate = v.certificate;
            if geometry {
                let geo = check_geometry(&g, cfg)?;
                r.value("geometry_universal_holds", geo.all_universal_hold as i64);
                r.result(&geo);
            }
        }
        Verb::Delta { graph, set, over } => {
            let g = ctx.graph(&graph)?;
            let s = match set {
                Some(s) => parse_ids(&s)?,
                None => g.ids(),
            };
            let base = match over {
                Some(s) => parse_ids(&s)?,
                None => IdSet::new(),
            };
            g.check_ids(s.iter().chain(base.iter()))?;
            let all: IdSet = s.union(&base).copied().collect();
            r = ctx.report("delta");
            r.holds = Some(true);
            r.value("delta", delta(&g, &all)? - delta(&g, &base)?);
        }
        Verb::Strong { graph, base, within, k, l } => {
            let g = ctx.graph(&graph)?;
            let a = parse_ids(&base)?;
            let b = match within {
                Some(s) => parse_ids(&s)?,
                None => g.ids(),
            };
            let v = if l {
                is_l_strong(&g, &a, &b)?
            } else if let Some(k) = k {
                is_k_strong(&g, &a, &b, k, cfg)?
            } else {
                is_strong(&g, &a, &b, cfg)?
            };
            r = ctx.report(if l {
                "strong L"
            } else if k.is_some() {
                "strong k"
            } else {
                "strong"
            });
            r.holds = Some(v.holds);
            r.values = v.values;
            r.certificate = v.certificate;
        }
        Verb::Closure { graph, set } => {
            let g = ctx.graph(&graph)?;
            let a = parse_ids(&set)?;
            let rep = closure_report(&g, &a, cfg)?;
            r = ctx.report("closure");
            r.holds = Some(true);
            r.value("d", rep.d);
            r.value("size", rep.set.len() as i64);
            r.result(&rep);
        }
        Verb::Pairs { graph, base, ext } => {
            let g = ctx.graph(&graph)?;
            let (a, b) = (parse_ids(&base)?, parse_ids(&ext)?);
            let class = classify_extension(&g, &a, &b, cfg)?;
            let pair = PairOverBase::new(&g, &a, &b)?;
            r = ctx.report("pairs");
            r.holds = Some(true);
            r.value("i", class.i);
            r.value("minimal", class.minimal as i64);
            r.value("simple", class.simple as i64);
            if class.simple {
                r.value("mu", mu_value(&ctx.policy, &pair, cfg)? as i64);
            }
            r.result(serde_json::json!({
                "classification": class,
                "shape": shape_of(&pair),
                "code": pair.code()?,
            }));
        }
        Verb::Chi { graph, pair, base, ext } => {
            let n = ctx.graph(&graph)?;
            let holder = match pair {
                Some(p) => ctx.graph(&p)?,
                None => n.clone(),
            };
            let (a, b) = (parse_ids(&base)?, parse_ids(&ext)?);
            let pr = PairOverBase::new(&holder, &a, &b)?;
            let mu = mu_value(&ctx.policy, &pr, cfg)?;
            let p = chi(&n, &pr, cfg)?;
            r = ctx.report("chi");
            r.holds = Some(p.chi <= mu);
            r.value("chi", p.chi as i64);
            r.value("mu", mu as i64);
            if p.chi > mu {
                r.certificate = Some(crate::verdict::Certificate::Chi {
                    base: a.iter().copied().collect(),
                    extension: b.iter().copied().collect(),
                    chi: p.chi,
                    mu,
                    packing: p.packing.iter().map(|s| s.iter().copied().collect()).collect(),
                });
            }
            r.result(&p);
        }
        Verb::Amalgamate { c0, c1, c2, out: dest } => {
            let (g0, g1, g2) = (ctx.graph(&c0)?, ctx.graph(&c1)?, ctx.graph(&c2)?);
            let res = amalgamate(&g0, &g1, &g2, &ctx.policy, cfg)?;
            if let Some(d) = dest {
                std::fs::write(&d, res.d.to_json())?;
            }
            r = ctx.report("amalgamate");
            r.holds = Some(true);
            r.value("delta", delta(&res.d, &res.d.ids())?);
            r.value("size", res.d.len() as i64);
            r.result(&res);
        }
        Verb::Build {
            steps,
            max_ext,
            max_base,
            max_component,
            resume,
            out: dest,
        } => {
            let mut st = match resume {
                Some(p) => {
                    let mut st = BuilderState::from_json(&read(&p)?)?;
                    ctx.check_n(&st.graph)?;
                    st.budgets.steps = steps;
                    st.stopped = None;
                    st
                }
                None => {
                    if max_ext == 0 || max_component == 0 {
                        return Err(Error::BadParameter("budgets must be positive".into()));
                    }
                    let b = BuildBudgets {
                        steps,
                        max_ext,
                        max_base,
                        max_component,
                        ..BuildBudgets::default()
                    };
                    BuilderState::new(ctx.run.n, ctx.run.seed, b, ctx.policy.clone(), cfg.mode)
                }
            };
            run_builder(&mut st, cfg)?;
            let json = st.to_json();
            if let Some(d) = &dest {
                std::fs::write(d, &json)?;
            }
            let k = check_kmu(&st.graph, &ctx.policy, cfg)?;
            r = ctx.report("build");
            r.holds = Some(k.holds);
            r.certificate = k.certificate;
            r.value("steps", st.steps_done as i64);
            r.value("vertices", st.graph.len() as i64);
            r.value("delta", delta(&st.graph, &st.graph.ids())?);
            r.result(serde_json::json!({
                "stopped": st.stopped,
                "cursor": st.cursor,
                "state": if dest.is_some() { serde_json::Value::Null } else { serde_json::from_str(&json)? },
            }));
            emit(&ctx, &r, out)?;
            return Ok(if st.stopped.as_deref().is_some_and(|s| s.contains("budget")) {
                2
            } else {
                code_of(r.holds)
            });
        }
        Verb::Verify { suite, input, budget, flag } => match suite {
            Suite::Lemmas => {
                let reports = lemmas::run_suite_jobs(budget, ctx.run.jobs, cfg)?;
                r = ctx.report("verify lemmas");
                let ok = reports.iter().all(|l| l.holds());
                r.holds = Some(ok);
                for l in &reports {
                    r.value(&format!("{} failures", l.name), l.failures as i64);
                }
                r.result(&reports);
            }
            Suite::Tmu => {
                let path = input.ok_or_else(|| Error::BadParameter("tmu needs an input graph".into()))?;
                let g = ctx.graph_or_state(&path)?;
                let rep = verify_tmu(&g, &ctx.policy, (budget as usize).min(3), budget as usize, cfg)?;
                r = ctx.report("verify tmu");
                r.holds = Some(rep.axiom1.holds);
                r.certificate = rep.axiom1.certificate.clone();
                r.value("axiom2 satisfied", rep.axiom2.satisfied as i64);
                r.value("axiom2 violated", rep.axiom2.violated as i64);
                r.value("axiom3 satisfied", rep.axiom3.satisfied as i64);
                r.value("axiom3 violated", rep.axiom3.violated as i64);
                r.result(&rep);
            }
            Suite::Ample => {
                let path = input.ok_or_else(|| Error::BadParameter("ample needs an input graph".into()))?;
                let g = ctx.graph_or_state(&path)?;
                r = ample_report(&ctx, &g, flag.as_deref(), None)?;
            }
        },
        Verb::Ample { input, flag, residue } => {
            let g = ctx.graph_or_state(&input)?;
            r = ample_report(&ctx, &g, flag.as_deref(), residue.as_deref())?;
        }
        Verb::Census { max_vertices } => {
            let rep = census(ctx.run.n, max_vertices, &ctx.policy, cfg)?;
            r = ctx.report("census");
            r.holds = Some(rep.holds());
            for row in &rep.rows {
                r.value(&format!("K members size {}", row.size), row.k_members as i64);
                r.value(&format!("K_mu members size {}", row.size), row.kmu_members as i64);
            }
            r.result(&rep);
        }
    }
    emit(&ctx, &r, out)?;
    Ok(code_of(r.holds))
}

fn ample_report(ctx: &Ctx, g: &TriGraph, flag: Option<&str>, residue: Option<&str>) -> Result<Report> {
    let (p, l, e) = match flag {
        Some(s) => parse_flag(s)?,
        None => (0, 1, 2),
    };
    let rep = ample_check(g, p, l, e, &ctx.cfg)?;
    let mut r = ctx.report("ample");
    r.holds = Some(rep.holds);
    r.values = rep.values.clone();
    let completions = match residue {
        Some(s) => {
            let ids: Vec<Id> = parse_ids(s)?.into_iter().collect();
            let [a, b] = ids.as_slice() else {
                return Err(Error::Parse(format!("partial flag needs two ids, got {s:?}")));
            };
            Some(extract_flag_residue(g, *a, *b)?)
        }
        None => None,
    };
    r.result(serde_json::json!({ "report": rep, "completions": completions }));
    Ok(r)
}
