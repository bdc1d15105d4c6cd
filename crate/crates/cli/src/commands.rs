use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use wguide::domination::{dominate_via_guidance, dominate_weak, find_halfgraph, HalfgraphSearch};
use wguide::generators as gen;
use wguide::io;
use wguide::lp::{build_guidance_lp, solve, solve_exact};
use wguide::query::{query_distance, query_probabilistic};
use wguide::synthesize::{
    complete_to_guidance, compose_hierarchy, interval_graph, interval_guidance, power_lift, round_fractional,
    tree_model_guidance, vc_round, HittingStrategy,
};
use wguide::verify::{
    evaluate_dual, girth5_certificate, vc_dimension, verify_fractional, verify_strict, verify_weak, StrictMode,
    DEFAULT_VC_CAP,
};
use wguide::{rng, DistanceIndex, Graph, MaxOutdegree, PartialOrientation, Radius};

use crate::{
    BuildArgs, Command, DominateArgs, Failure, Family, GenArgs, LowerboundArgs, LpArgs, Method, Mode, QueryArgs, Run,
    Strategy, VerifyArgs,
};

type Res<T = ()> = Result<T, Failure>;

pub fn dispatch(cmd: &Command, run: &mut Run) -> Res {
    match cmd {
        Command::Gen(a) => cmd_gen(a, run),
        Command::Lp(a) => cmd_lp(a, run),
        Command::Build(a) => cmd_build(a, run),
        Command::Verify(a) => cmd_verify(a, run),
        Command::Query(a) => cmd_query(a, run),
        Command::Dominate(a) => cmd_dominate(a, run),
        Command::Lowerbound(a) => cmd_lowerbound(a, run),
        Command::Replay { .. } => unreachable!("handled before dispatch"),
    }
}

macro_rules! say {
    ($run:expr, $($fmt:tt)*) => {
        writeln!($run.stdout, $($fmt)*).unwrap()
    };
}

fn read(path: &Path, run: &mut Run) -> Res<String> {
    run.inputs.push(path.to_path_buf());
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str, run: &mut Run) -> Res {
    std::fs::write(path, text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })?;
    run.outputs.push(path.to_path_buf());
    Ok(())
}

/// Prefixes parse and I/O errors with the file involved.
fn in_file<T>(path: &Path, r: wguide::Result<T>) -> Res<T> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_graph(path: &Path, run: &mut Run) -> Res<Graph> {
    let text = read(path, run)?;
    in_file(path, io::parse_graph(&text))
}

fn load_orientation(path: &Path, g: &Graph, run: &mut Run) -> Res<PartialOrientation> {
    let text = read(path, run)?;
    in_file(path, io::parse_orientation(&text, g))
}

fn load_fractional(path: &Path, g: &Graph, run: &mut Run) -> Res<wguide::FractionalOrientation> {
    let text = read(path, run)?;
    in_file(path, io::parse_fractional(&text, g))
}

fn index(g: &Graph, r: usize) -> DistanceIndex {
    DistanceIndex::build(g, Radius::Bounded(r))
}

fn need<'a, T>(opt: &'a Option<T>, flag: &str, what: &str) -> Res<&'a T> {
    opt.as_ref().ok_or_else(|| Failure::usage(format!("{what} needs --{flag}")))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_gen(a: &GenArgs, run: &mut Run) -> Res {
    let mut meta = io::Metadata::new();
    let fam = a.family.to_possible_value_name();
    meta.insert("family".into(), fam.clone());
    let n_param = || need(&a.n, "n", &fam).copied();
    let mut extra: Vec<(&str, String)> = Vec::new();
    let g = match a.family {
        Family::Path => gen::path(n_param()?),
        Family::Cycle => gen::cycle(n_param()?),
        Family::Star => gen::star(n_param()?),
        Family::Petersen => gen::petersen(),
        Family::Random => {
            let q = *need(&a.q, "q", &fam)?;
            meta.insert("q".into(), q.to_string());
            meta.insert("seed".into(), a.seed.to_string());
            gen::random_graph(n_param()?, q, a.seed)?
        }
        Family::Interval => {
            let set = gen::random_interval_set(n_param()?, a.seed);
            meta.insert("seed".into(), a.seed.to_string());
            extra.push(("iv", io::write_intervals(&set)));
            interval_graph(&set)?
        }
        Family::Universal => {
            let base = match &a.base {
                Some(p) => load_graph(p, run)?,
                None => Graph::empty(n_param()?),
            };
            let (g, h) = gen::universal_vertex_graph(&base);
            meta.insert("universal".into(), base.n().to_string());
            extra.push(("or", io::write_orientation(&h)));
            g
        }
        Family::StarPower => {
            let sp = gen::subdivided_star_power(n_param()?)?;
            gen::check_star_power(&sp)?;
            meta.insert("X".into(), io::join_list(&sp.x));
            meta.insert("Y".into(), io::join_list(&sp.y));
            sp.graph
        }
        Family::Gak => {
            let (ap, kp) = (*need(&a.a, "a", &fam)?, *need(&a.k, "k", &fam)?);
            let inst = gen::gak_instance(ap, kp, a.seed)?;
            meta.insert("seed".into(), a.seed.to_string());
            meta.insert("a".into(), ap.to_string());
            meta.insert("k".into(), kp.to_string());
            meta.insert("parts".into(), inst.m.to_string());
            meta.insert("L".into(), io::join_list(&inst.l));
            meta.insert("R".into(), io::join_list(&inst.r));
            meta.insert("hubs".into(), io::join_list(&inst.hubs));
            for (i, part) in inst.parts.iter().enumerate() {
                meta.insert(format!("part_{}", i + 1), io::join_list(part));
            }
            extra.push(("fr", io::write_fractional(&inst.p_explicit)));
            inst.graph
        }
        Family::Split => {
            let s = gen::projective_split_graph(n_param()?)?;
            meta.insert("A".into(), io::join_list(&s.a));
            meta.insert("B".into(), io::join_list(&s.b));
            s.graph
        }
        Family::HalfgraphHard => {
            let (d, ap) = (*need(&a.d, "d", &fam)?, *need(&a.a, "a", &fam)?);
            let h = gen::halfgraph_hard_instance(d, ap)?;
            meta.insert("d".into(), d.to_string());
            meta.insert("a".into(), ap.to_string());
            meta.insert("labels".into(), io::join_list(&h.label));
            h.graph
        }
        Family::TreeModel => {
            let (m, d, l) = (*need(&a.m, "m", &fam)?, *need(&a.d, "d", &fam)?, *need(&a.leaves, "leaves", &fam)?);
            let t = gen::random_tree_model(m, d, l, a.seed)?;
            meta.insert("seed".into(), a.seed.to_string());
            extra.push(("tm", io::write_tree_model(&t)));
            wguide::synthesize::graph_from_tree_model(&t)
        }
    };
    if let Some(n) = a.n {
        meta.entry("param_n".into()).or_insert(n.to_string());
    }
    meta.insert("vertices".into(), g.n().to_string());
    meta.insert("edges".into(), g.m().to_string());
    write(&with_ext(&a.out, "gr"), &io::write_graph(&g), run)?;
    write(&with_ext(&a.out, "meta"), &io::write_metadata(&meta), run)?;
    for (ext, text) in extra {
        write(&with_ext(&a.out, ext), &text, run)?;
    }
    say!(run, "n {} m {}", g.n(), g.m());
    Ok(())
}

trait PossibleName {
    fn to_possible_value_name(&self) -> String;
}

impl<T: clap::ValueEnum> PossibleName for T {
    fn to_possible_value_name(&self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

fn cmd_lp(a: &LpArgs, run: &mut Run) -> Res {
    let g = load_graph(&a.graph, run)?;
    let idx = index(&g, a.r);
    let problem = build_guidance_lp(&g, &idx, a.r)?;
    if let Some(path) = &a.dump_lp {
        write(path, &problem.to_lp_text(), run)?;
    }
    let (p, dual) = if a.exact {
        let sol = solve_exact(&problem)?;
        say!(run, "c = {:.6}", sol.c_f64());
        say!(run, "exact {}", sol.c);
        say!(run, "iterations {}", sol.iterations);
        (sol.fractional(g.n()), sol.dual_f64())
    } else {
        let sol = solve(&problem, a.tol)?;
        say!(run, "c = {:.6}", sol.c);
        say!(run, "status {:?}", sol.status);
        say!(run, "iterations {}", sol.iterations);
        (sol.p, sol.dual_y)
    };
    let cert = evaluate_dual(&g, &idx, a.r, &dual)?;
    say!(run, "dual {:.6}", cert.value);
    if let Some(path) = &a.out {
        write(path, &io::write_fractional(&p), run)?;
    }
    if let Some(path) = &a.dual {
        write(path, &io::write_dual(&dual), run)?;
    }
    Ok(())
}

fn cmd_build(a: &BuildArgs, run: &mut Run) -> Res {
    let method = a.method.to_possible_value_name();
    let graph_in = |run: &mut Run| -> Res<Graph> { load_graph(need(&a.graph, "graph", &method)?, run) };
    let (g, h, bound): (Graph, PartialOrientation, String) = match a.method {
        Method::Round => {
            let g = graph_in(run)?;
            let p = load_fractional(need(&a.fractional, "fractional", &method)?, &g, run)?;
            let c = p.max_outdegree();
            let out = round_fractional(&g, &index(&g, a.r), &p, a.r, c)?;
            say!(run, "rounds {} of {}", out.rounds_used(), out.rounds_allowed);
            let b = out.rounds_allowed.to_string();
            (g, out.h, b)
        }
        Method::VcRound => {
            let g = graph_in(run)?;
            let p = load_fractional(need(&a.fractional, "fractional", &method)?, &g, run)?;
            let idx = index(&g, a.r);
            let strategy = match a.strategy {
                Strategy::Greedy => HittingStrategy::Greedy,
                Strategy::EpsNet => HittingStrategy::EpsilonNet,
            };
            let h = vc_round(&g, &idx, &p, a.r, a.seed, strategy)?;
            let vc = vc_dimension(&g, &idx, a.r, DEFAULT_VC_CAP)?;
            let c = p.max_outdegree();
            say!(run, "vc {vc}");
            // the asymptotic claim carries no constant; log clamped at 1
            (g, h, format!("{:.6}", vc as f64 * c * c.ln().max(1.0)))
        }
        Method::Interval => {
            let text = read(need(&a.intervals, "intervals", &method)?, run)?;
            let set = in_file(a.intervals.as_ref().unwrap(), io::parse_intervals(&text))?;
            let (g, h) = interval_guidance(&set)?;
            (g, h, "2".into())
        }
        Method::PowerLift => {
            let g = graph_in(run)?;
            let h = load_orientation(need(&a.guidance, "guidance", &method)?, &g, run)?;
            let k = *need(&a.k, "k", &method)?;
            let lift = power_lift(&g, &index(&g, k * a.r), &h, k, a.r)?;
            (lift.graph, lift.h, lift.bound.to_string())
        }
        Method::CutCompose => {
            let g = graph_in(run)?;
            let path = need(&a.hierarchy, "hierarchy", &method)?;
            let text = read(path, run)?;
            let hier = in_file(path, io::parse_hierarchy(&text))?;
            let h = compose_hierarchy(&g, &hier, a.r)?;
            (g, h, "-".into())
        }
        Method::TreeModel => {
            let path = need(&a.tree_model, "tree-model", &method)?;
            let text = read(path, run)?;
            let model = in_file(path, io::parse_tree_model(&text))?;
            let out = tree_model_guidance(&model, a.r, a.budget)?;
            (out.graph, out.h, out.bound.to_string())
        }
        Method::Complete => {
            let g = graph_in(run)?;
            let h = load_orientation(need(&a.guidance, "guidance", &method)?, &g, run)?;
            let full = complete_to_guidance(&g, &index(&g, a.r), &h, a.r)?;
            (g, full, "-".into())
        }
    };
    if matches!(a.method, Method::Interval | Method::TreeModel) {
        if let Some(path) = &a.graph {
            if load_graph(path, run)? != g {
                return Err(Failure { code: 1, message: format!("{} differs from the graph of the model", path.display()) });
            }
        }
    }
    if let Some(path) = &a.graph_out {
        write(path, &io::write_graph(&g), run)?;
    }
    write(&a.out, &io::write_orientation(&h), run)?;
    let report = verify_weak(&g, &index(&g, a.r), &h, a.r)?;
    say!(run, "outdegree {}", h.max_out());
    say!(run, "bound {bound}");
    say!(run, "valid {}", report.valid);
    run.status = if report.valid { 0 } else { 1 };
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, run: &mut Run) -> Res {
    let g = load_graph(&a.graph, run)?;
    let idx = index(&g, a.r);
    let report = if let Some(path) = &a.fractional {
        if a.mode != Mode::Weak {
            return Err(Failure::usage("fractional orientations are checked against the weak condition only"));
        }
        let p = load_fractional(path, &g, run)?;
        verify_fractional(&g, &idx, &p, a.r, a.tol)?
    } else {
        let h = load_orientation(a.guidance.as_ref().unwrap(), &g, run)?;
        match a.mode {
            Mode::Weak => verify_weak(&g, &idx, &h, a.r)?,
            Mode::Strict => verify_strict(&g, &idx, &h, a.r, StrictMode::Full)?,
            Mode::Plus => verify_strict(&g, &idx, &h, a.r, StrictMode::Plus)?,
        }
    };
    let text = report.to_text();
    run.stdout += &text;
    if let Some(path) = &a.report {
        write(path, &text, run)?;
    }
    run.status = if report.valid { 0 } else { 1 };
    Ok(())
}

fn cmd_query(a: &QueryArgs, run: &mut Run) -> Res {
    let g = load_graph(&a.graph, run)?;
    let text = read(&a.pairs, run)?;
    let pairs = in_file(&a.pairs, io::parse_pairs(&text))?;
    for &(u, v) in &pairs {
        if u >= g.n() || v >= g.n() {
            return Err(Failure::usage(format!("pair ({u}, {v}) outside 0..{}", g.n())));
        }
    }
    if let Some(path) = &a.fractional {
        let p = load_fractional(path, &g, run)?;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let mut rng = rng::stream(a.seed, i as u64);
            let ans = query_probabilistic(&g, &p, u, v, a.r, a.confidence, &mut rng)?;
            say!(run, "{}", io::format_query_line(u, v, &ans));
        }
    } else {
        let h = load_orientation(a.guidance.as_ref().unwrap(), &g, run)?;
        for &(u, v) in &pairs {
            let ans = query_distance(&g, &h, u, v, a.r)?;
            say!(run, "{}", io::format_query_line(u, v, &ans));
        }
    }
    Ok(())
}

fn cmd_dominate(a: &DominateArgs, run: &mut Run) -> Res {
    let g = load_graph(&a.graph, run)?;
    let h = load_orientation(&a.guidance, &g, run)?;
    let idx = index(&g, 2 * a.r);
    let res = if a.weak {
        let (c, k) = (a.c.unwrap(), a.k.unwrap());
        let res = dominate_weak(&g, &idx, &h, a.r, c, k)?;
        let stable = match find_halfgraph(&g, &idx, a.r, k, a.halfgraph_budget)? {
            HalfgraphSearch::Found(_) => "false",
            HalfgraphSearch::NoneExists => "true",
            HalfgraphSearch::BudgetExhausted => "unknown",
        };
        Some((res, stable))
    } else {
        None
    };
    let (res, stable) = match res {
        Some((r, s)) => (r, Some(s)),
        None => (dominate_via_guidance(&g, &idx, &h, a.r)?, None),
    };
    say!(run, "D {}", io::join_list(&res.d));
    say!(run, "A {}", io::join_list(&res.a));
    say!(run, "ratio {:.6}", res.ratio);
    match &res.bound_b {
        Some(b) => say!(run, "bound_b {b}"),
        None => say!(run, "bound_b none"),
    }
    if let Some(held) = res.bound_held {
        say!(run, "bound_held {held}");
    }
    if let Some(s) = stable {
        say!(run, "stable {s}");
    }
    Ok(())
}

fn cmd_lowerbound(a: &LowerboundArgs, run: &mut Run) -> Res {
    let g = load_graph(&a.graph, run)?;
    let cert = if a.girth5 {
        let idx = index(&g, 2);
        let z: Vec<usize> = g.vertices().collect();
        girth5_certificate(&g, &idx, &z)?
    } else {
        let path = a.certificate.as_ref().unwrap();
        let text = read(path, run)?;
        let y = in_file(path, io::parse_dual(&text))?;
        evaluate_dual(&g, &index(&g, a.r), a.r, &y)?
    };
    say!(run, "lower bound = {:.6}", cert.value);
    if let Some(path) = &a.out {
        write(path, &io::write_certificate(&cert), run)?;
    }
    Ok(())
}
