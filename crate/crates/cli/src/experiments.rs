//! One runner per experiment kind. Runners fill tables and checks; the
//! caller writes everything at the end.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cutset_core::cutset::{
    closeness_bruteforce, closeness_edges, count_min_cutsets, enumerate_min_cutsets_up_to, for_each_connected_subset,
    decode_walk, is_minimal_cutset, set_distance, sup_closeness, walk_certificate, Convention, Cutset,
    EnumerationLimits,
};
use cutset_core::cycles::{
    crossing_cycle_witness, relator_cycles, standard_relators, two_vertex_cut, verify_half_t_bound, CycleSolver,
};
use cutset_core::dl::{build_hk, DlProvider};
use cutset_core::graph::{Edge, GraphProvider, GraphWindow, VertexId, WindowLimits};
use cutset_core::qi::{
    ball_pairs, boundary_growth_check, fiber_experiment, lemma_closure_check, transfer_noncloseness, verify_bilipschitz,
    QuasiIsometryMap,
};
use cutset_core::tree::{build_shortlex_tree, check_subperiodic, finiteness_experiment, fx_and_s_sets, SubperiodicResult};

use crate::config::{ExperimentConfig, ExperimentKind, Limits, ProviderSpec};
use crate::error::CliError;
use crate::output::{Artifacts, Check};
use crate::provider;

pub struct Ctx<'a> {
    pub cfg: &'a ExperimentConfig,
    pub limits: Limits,
    pub rng: ChaCha8Rng,
    pub checks: Vec<Check>,
    pub artifacts: &'a mut Artifacts,
}

type Res = Result<(), CliError>;

impl Ctx<'_> {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            experiment: self.cfg.name.clone(),
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn file(&mut self, name: &str, contents: String) {
        self.artifacts.add(format!("{}/{}", self.cfg.name, name), contents);
    }

    fn enum_limits(&self) -> EnumerationLimits {
        EnumerationLimits { max_states: self.limits.max_states, parallel: self.limits.parallel }
    }

    fn provider(&self, spec: &ProviderSpec) -> Result<Arc<dyn GraphProvider>, CliError> {
        provider::build(spec).map_err(|m| CliError::Config(format!("experiment {}: {m}", self.cfg.name)))
    }

    fn window(&self, spec: &ProviderSpec, radius: u32) -> Result<GraphWindow, CliError> {
        let p = self.provider(spec)?;
        Ok(GraphWindow::build(p, radius, WindowLimits { max_vertices: self.limits.max_vertices })?)
    }

    fn dl_provider(&self, spec: &ProviderSpec) -> Result<DlProvider, CliError> {
        match (spec.family.as_str(), spec.k, spec.n) {
            ("dl", Some(k), Some(n)) => Ok(DlProvider::new(k, n)?),
            _ => Err(CliError::Config(format!("experiment {}: needs a dl provider", self.cfg.name))),
        }
    }

    fn convention(&self) -> Result<Convention, CliError> {
        match &self.cfg.params.convention {
            None => Ok(Convention::default()),
            Some(c) => c.parse().map_err(|_| CliError::Config(format!("unknown convention {c:?}"))),
        }
    }
}

pub fn run(ctx: &mut Ctx<'_>) -> Res {
    match ctx.cfg.kind {
        ExperimentKind::Enumerate => enumerate(ctx),
        ExperimentKind::ClosenessSup => closeness_sup(ctx),
        ExperimentKind::DlFamily => dl_family(ctx),
        ExperimentKind::HalfT => half_t(ctx),
        ExperimentKind::QiTransfer => qi_transfer(ctx),
        ExperimentKind::Growth => growth(ctx),
        ExperimentKind::Finiteness => finiteness(ctx),
        ExperimentKind::SubgraphCount => subgraph_count(ctx),
    }
}

fn edge_list(w: &GraphWindow, edges: &[Edge]) -> String {
    edges.iter().map(|e| format!("{}~{}", w.key(e.u), w.key(e.v))).collect::<Vec<_>>().join(" ")
}

fn compare_counts(ctx: &mut Ctx<'_>, counts: &[u64]) {
    if let Some(expected) = ctx.cfg.expect.counts.clone() {
        let got: Vec<u64> = counts.iter().skip(1).take(expected.len()).copied().collect();
        ctx.check("expected_counts", got == expected, format!("expected {expected:?}, got {got:?}"));
    }
}

fn enumerate(ctx: &mut Ctx<'_>) -> Res {
    let n_max = ctx.cfg.require(&ctx.cfg.params.n_max, "n_max")?;
    let w = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let table = count_min_cutsets(&w, n_max, ctx.enum_limits())?;
    let mut csv = String::from("n,count,alpha_running\n");
    for n in 1..=n_max {
        let alpha = table.running_alpha(n).map_or(String::new(), |f| format!("{:.6}", f.alpha));
        writeln!(csv, "{n},{},{alpha}", table.counts[n]).unwrap();
    }
    ctx.file("counts.csv", csv);
    let exact = n_max < table.exact_below;
    let detail = if table.exact_below == usize::MAX {
        "no search state reached the window edge".to_string()
    } else {
        format!("sizes below {} are window-exact", table.exact_below)
    };
    ctx.check("window_exact", exact, detail);
    compare_counts(ctx, &table.counts);
    if ctx.cfg.params.stream.unwrap_or(true) {
        let cutsets = enumerate_min_cutsets_up_to(&w, n_max, ctx.enum_limits())?;
        let mut stream = String::new();
        let mut bad = 0usize;
        for c in &cutsets {
            stream.push_str(&c.stream_line(&w, None));
            stream.push('\n');
            if c.exact && !is_minimal_cutset(&w, &c.edges)?.is_minimal() {
                bad += 1;
            }
        }
        ctx.file("cutsets.tsv", stream);
        ctx.check("certificates", bad == 0, format!("{} cutsets, {bad} failed the minimality certificate", cutsets.len()));
    }
    Ok(())
}

fn closeness_sup(ctx: &mut Ctx<'_>) -> Res {
    let n_max = ctx.cfg.require(&ctx.cfg.params.n_max, "n_max")?;
    let conv = ctx.convention()?;
    let w = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let rows = sup_closeness(&w, n_max, conv, ctx.enum_limits())?;
    let mut csv = String::from("n,count,max,running_max,witness\n");
    let opt = |v: Option<u32>| v.map_or(String::new(), |x| x.to_string());
    for r in &rows {
        let witness = r.witness.as_ref().map_or(String::new(), |c| edge_list(&w, &c.edges));
        writeln!(csv, "{},{},{},{},\"{witness}\"", r.n, r.count, opt(r.max), opt(r.running_max)).unwrap();
    }
    ctx.file("sup.csv", csv);
    let table = count_min_cutsets(&w, n_max, ctx.enum_limits())?;
    ctx.check(
        "window_exact",
        n_max < table.exact_below,
        format!("every minimal cutset of size <= {n_max} is window-exact"),
    );
    let sup = rows.last().and_then(|r| r.running_max);
    if let Some(expected) = ctx.cfg.expect.running_max {
        ctx.check("sup_closeness", sup == Some(expected), format!("expected {expected}, got {sup:?} ({conv})"));
    }
    let samples = ctx.cfg.params.oracle_samples.unwrap_or(0);
    if samples > 0 {
        closeness_oracle(ctx, &w, n_max, samples)?;
    }
    Ok(())
}

/// Cross-checks MST closeness against brute-force bipartitions on sampled
/// edge sets: alternately enumerated cutsets and random edge sets near `o`.
fn closeness_oracle(ctx: &mut Ctx<'_>, w: &GraphWindow, n_max: usize, samples: usize) -> Res {
    let max_size = ctx.cfg.params.oracle_max_size.unwrap_or(12).clamp(1, 20);
    let cutsets: Vec<Cutset> = enumerate_min_cutsets_up_to(w, n_max.min(max_size), ctx.enum_limits())?
        .into_iter()
        .filter(|c| c.exact)
        .collect();
    let near: Vec<Edge> =
        w.edges().iter().copied().filter(|e| w.depth(e.u).max(w.depth(e.v)) <= w.radius() / 2).collect();
    let mut csv = String::from("sample,source,size,convention,mst,bruteforce\n");
    let mut mismatches = 0usize;
    for i in 0..samples {
        let (source, y) = if i % 2 == 0 && !cutsets.is_empty() {
            ("cutset", cutsets.choose(&mut ctx.rng).unwrap().edges.clone())
        } else {
            let size = ctx.rng.gen_range(1..=max_size.min(near.len()));
            let mut y: Vec<Edge> = near.choose_multiple(&mut ctx.rng, size).copied().collect();
            y.sort_unstable();
            ("random", y)
        };
        for conv in [Convention::Endpoint, Convention::Subdivision] {
            let mst = closeness_edges(w, &y, conv)?.value;
            let brute = closeness_bruteforce(w, &y, conv)?;
            if mst != brute {
                mismatches += 1;
            }
            writeln!(csv, "{i},{source},{},{conv},{mst},{brute}", y.len()).unwrap();
        }
    }
    ctx.file("closeness_oracle.csv", csv);
    ctx.check(
        "closeness_oracle",
        mismatches == 0,
        format!("{samples} samples, both conventions, {mismatches} mismatches"),
    );
    Ok(())
}

fn dl_family(ctx: &mut Ctx<'_>) -> Res {
    let dl = ctx.dl_provider(&ctx.cfg.provider)?;
    let k_min = ctx.cfg.params.k_min.unwrap_or(1);
    let k_max = ctx.cfg.require(&ctx.cfg.params.k_max, "k_max")?;
    let conv = ctx.convention()?;
    let w = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let mut csv = String::from("k,size,minimal,dist,closeness,running_max\n");
    let mut running: Option<u32> = None;
    for k in k_min..=k_max {
        let hk = build_hk(&dl, &w, k)?;
        let minimal = is_minimal_cutset(&w, &hk.cutset)?.is_minimal();
        let dist = set_distance(&w, &hk.a_side, &hk.b_side)?;
        let c = closeness_edges(&w, &hk.cutset, conv)?.value;
        let prev = running;
        running = Some(running.map_or(c, |r| r.max(c)));
        let run = running.unwrap();
        writeln!(csv, "{k},{},{minimal},{dist},{c},{run}", hk.cutset.len()).unwrap();
        ctx.check(&format!("k{k}_minimal"), minimal, format!("|C_{k}| = {}", hk.cutset.len()));
        ctx.check(&format!("k{k}_distance"), dist == k, format!("dist(A_{k}, B_{k}) = {dist}"));
        ctx.check(
            &format!("k{k}_running_max"),
            prev.is_none_or(|p| run >= p) && run + 1 >= k,
            format!("running max {run} at size {}, needs >= {}", hk.cutset.len(), k.saturating_sub(1)),
        );
    }
    ctx.file("dl_family.csv", csv);
    Ok(())
}

fn half_t(ctx: &mut Ctx<'_>) -> Res {
    let n_max = ctx.cfg.require(&ctx.cfg.params.n_max, "n_max")?;
    let w = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let relators = match &ctx.cfg.params.relators {
        Some(r) => r.clone(),
        None => {
            let gens = w
                .provider()
                .generating_set()
                .ok_or_else(|| CliError::Config("half-t needs a cayley provider".into()))?;
            standard_relators(gens.group())?
        }
    };
    let report = verify_half_t_bound(&w, &relators, n_max, ctx.enum_limits())?;
    let max = report.max_observed.map_or(String::new(), |m| m.to_string());
    ctx.file(
        "half_t.csv",
        format!("t,checked,max_observed,bound\n{},{},{max},{}\n", report.t, report.checked, report.t as f64 / 2.0),
    );
    let detail = match &report.counterexample {
        None => format!("{} cutsets, max C = {max}, t = {}", report.checked, report.t),
        Some((c, _, _)) => format!("counterexample: {}", c.stream_line(&w, None)),
    };
    ctx.check("half_t_bound", report.holds(), detail);

    let instances = ctx.cfg.params.instances.unwrap_or(0);
    if instances == 0 {
        return Ok(());
    }
    let basis = relator_cycles(&w, &relators)?;
    let solver = CycleSolver::new(&basis);
    let grow = ctx.cfg.params.grow.unwrap_or(4).max(1);
    let y_dist = ctx.cfg.params.y_distance.unwrap_or(2);
    let x = w.origin();
    let ys: Vec<VertexId> = (0..w.len()).filter(|&v| w.depth(v) == y_dist).collect();
    if ys.is_empty() || y_dist + 3 > w.radius() {
        return Err(CliError::Config(format!("params.y_distance = {y_dist} does not fit radius {}", w.radius())));
    }
    let depth_cap = w.radius().saturating_sub(4).max(1);
    let mut dump = String::new();
    let mut failed = 0usize;
    let mut done = 0usize;
    while done < instances {
        let y = *ys.choose(&mut ctx.rng).unwrap();
        let k = grow_random_set(&w, x, y, grow, depth_cap, &mut ctx.rng);
        let pi = two_vertex_cut(&w, &k, y)?;
        if pi.len() < 2 {
            continue;
        }
        let size = ctx.rng.gen_range(1..pi.len());
        let mut pi1: Vec<Edge> = pi.choose_multiple(&mut ctx.rng, size).copied().collect();
        pi1.sort_unstable();
        let witness = crossing_cycle_witness(&w, &pi, &pi1, x, y, &solver, &basis)?;
        let ok = witness.theta_ok(x, y) && !witness.meets_pi1.is_empty() && !witness.meets_pi2.is_empty();
        if !ok {
            failed += 1;
        }
        writeln!(dump, "{done}\t{}\t{}\t{}", w.key(y), if ok { "ok" } else { "FAIL" }, witness.dump(&w)).unwrap();
        done += 1;
    }
    ctx.file("theta.tsv", dump);
    ctx.check("theta_construction", failed == 0, format!("{instances} instances, {failed} failed"));
    Ok(())
}

/// Random connected set containing `x`, avoiding `y`, inside `B_depth_cap`.
fn grow_random_set(
    w: &GraphWindow,
    x: VertexId,
    y: VertexId,
    size: usize,
    depth_cap: u32,
    rng: &mut ChaCha8Rng,
) -> Vec<VertexId> {
    let mut set = vec![x];
    while set.len() < size {
        let mut frontier: Vec<VertexId> = set
            .iter()
            .flat_map(|&v| w.neighbors(v).iter().copied())
            .filter(|&u| u != y && w.depth(u) <= depth_cap && !set.contains(&u))
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        match frontier.choose(rng) {
            Some(&u) => set.push(u),
            None => break,
        }
    }
    set.sort_unstable();
    set
}

fn qi_transfer(ctx: &mut Ctx<'_>) -> Res {
    let p = &ctx.cfg.params;
    let conv = ctx.convention()?;
    let wg = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let needs_map = p.pair_radius.is_some() || p.n_max.is_some() || p.fiber_n.is_some() || p.transfer_k.is_some();
    if needs_map {
        let map_name = ctx.cfg.require(&p.map, "map")?;
        let map = QuasiIsometryMap::by_name(&map_name)
            .map_err(|e| CliError::Config(format!("experiment {}: {e}", ctx.cfg.name)))?;
        let target = ctx.cfg.target.clone().unwrap_or_else(|| ctx.cfg.provider.clone());
        let wh = ctx.window(&target, ctx.cfg.target_radius.unwrap_or(ctx.cfg.radius))?;
        map_checks(ctx, &map, &wg, &wh, conv)?;
    }
    if let Some(ks) = ctx.cfg.params.closure_k.clone() {
        let dl = ctx.dl_provider(&ctx.cfg.provider)?;
        let n_max = ctx.cfg.params.closure_n_max.unwrap_or(2);
        let mut csv = String::from("k,n,before,after,holds\n");
        let mut failed = 0usize;
        let mut tested = 0usize;
        for k in ks {
            let hk = build_hk(&dl, &wg, k)?;
            for n in 1..=n_max {
                let c = lemma_closure_check(&wg, &hk.vertices, n, conv)?;
                tested += 1;
                failed += usize::from(!c.holds());
                writeln!(csv, "{k},{n},{},{},{}", c.before, c.after, c.holds()).unwrap();
            }
        }
        ctx.file("closure.csv", csv);
        ctx.check("closure_lemma", failed == 0, format!("{tested} (X, n) pairs, {failed} failed"));
    }
    Ok(())
}

fn map_checks(
    ctx: &mut Ctx<'_>,
    map: &QuasiIsometryMap,
    wg: &GraphWindow,
    wh: &GraphWindow,
    conv: Convention,
) -> Res {
    let p = ctx.cfg.params.clone();
    let m = match p.pair_radius {
        Some(r) => {
            let rep = verify_bilipschitz(map, wg, wh, &ball_pairs(wg, r))?;
            ctx.file(
                "bilipschitz.csv",
                format!(
                    "pairs,m,expansion,contraction\n{},{},{:.6},{:.6}\n",
                    rep.pairs, rep.m, rep.expansion, rep.contraction
                ),
            );
            if let Some(expected) = ctx.cfg.expect.m {
                ctx.check("certified_m", rep.m == expected, format!("expected {expected}, certified {} on {} pairs", rep.m, rep.pairs));
            }
            if let Some(given) = p.m {
                ctx.check("given_m", rep.m <= given, format!("given {given}, certified {}", rep.m));
                given
            } else {
                rep.m
            }
        }
        None => ctx.cfg.require(&p.m, "m")?,
    };
    if let Some(n_max) = p.n_max {
        let d = wh.degree_bound();
        let mut csv = String::from(
            "n,kappa_size,boundary_kappa,boundary_phi,boundary_bound,tau_minus_kappa,tau_bound,connected,contains_origin,holds\n",
        );
        let (mut tested, mut failed) = (0usize, 0usize);
        for c in enumerate_min_cutsets_up_to(wg, n_max, ctx.enum_limits())?.into_iter().filter(|c| c.exact) {
            let g = boundary_growth_check(map, wg, wh, &c.component, c.size(), m, d)?;
            tested += 1;
            failed += usize::from(!g.holds());
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{},{}",
                c.size(),
                c.component.len(),
                g.boundary_kappa,
                g.boundary_phi,
                g.boundary_bound,
                g.tau_minus_kappa,
                g.tau_bound,
                g.phi.connected,
                g.phi.contains_origin,
                g.holds()
            )
            .unwrap();
        }
        ctx.file("boundary.csv", csv);
        ctx.check("boundary_growth", failed == 0 && tested > 0, format!("{tested} kappa with n <= {n_max}, {failed} failed"));
    }
    if let Some(ns) = p.fiber_n {
        let mut csv = String::from("n,image_size,fiber\n");
        let mut summary = Vec::new();
        for n in ns {
            let t = fiber_experiment(map, wg, wh, n, m, ctx.enum_limits())?;
            csv.push_str(t.to_csv().trim_start_matches("n,image_size,fiber\n"));
            summary.push(format!("n={n}: {} cutsets, max fiber {}", t.cutsets, t.max_fiber));
        }
        ctx.file("fibers.csv", csv);
        ctx.check("fibers", true, summary.join("; "));
    }
    if let Some(ks) = p.transfer_k {
        let dl = ctx.dl_provider(&ctx.cfg.provider)?;
        let mut csv = String::from("k,source_closeness,closeness,bound,vacuous,holds\n");
        let mut failed = 0usize;
        for k in ks {
            let hk = build_hk(&dl, wg, k)?;
            let source = closeness_edges(wg, &hk.cutset, conv)?.value;
            let level = source.saturating_sub(1);
            let t = transfer_noncloseness(map, wg, wh, &hk.vertices, level, m, conv)?;
            failed += usize::from(!t.holds());
            writeln!(csv, "{k},{},{},{:.6},{},{}", t.source_closeness, t.closeness, t.bound, t.vacuous, t.holds()).unwrap();
        }
        ctx.file("transfer.csv", csv);
        ctx.check("transfer", failed == 0, format!("{failed} failed"));
    }
    Ok(())
}

fn growth(ctx: &mut Ctx<'_>) -> Res {
    let w = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let r = w.radius();
    let tree = build_shortlex_tree(&w)?;
    let off = (0..w.len()).filter(|&v| tree.depth(v) != w.depth(v)).count();
    ctx.check("tree_geodesic", off == 0, format!("{} vertices, {off} with tree depth != distance", w.len()));
    let balls = cutset_core::tree::growth(&w, r)?;
    let tree_balls = tree.growth(r);
    ctx.check("tree_growth", balls == tree_balls, "tree ball sizes equal graph ball sizes".to_string());
    let mut csv = String::from("n,ball,tree_ball,ratio\n");
    for n in 0..=r as usize {
        let ratio = if n == 0 { String::new() } else { format!("{:.6}", balls[n] as f64 / balls[n - 1] as f64) };
        writeln!(csv, "{n},{},{},{ratio}", balls[n], tree_balls[n]).unwrap();
    }
    ctx.file("growth.csv", csv);
    if let Some(expected) = ctx.cfg.expect.growth.clone() {
        let got: Vec<usize> = balls.iter().take(expected.len()).copied().collect();
        ctx.check("expected_growth", got == expected, format!("expected {expected:?}, got {got:?}"));
    }

    let fx = fx_and_s_sets(&tree, &w);
    let mut csv = String::from("n,running_max\n");
    for (n, m) in fx.running_max.iter().enumerate() {
        writeln!(csv, "{n},{m}").unwrap();
    }
    ctx.file("fx.csv", csv);
    let mut s = String::from("vertex\tdepth\tfx\n");
    for &v in &fx.s_set {
        writeln!(s, "{}\t{}\t{}", w.key(v), tree.depth(v), fx.fx[v]).unwrap();
    }
    ctx.file("s_set.tsv", s);
    if let Some(kind) = ctx.cfg.expect.fx.clone() {
        let rm = &fx.running_max;
        let last = rm.last().copied().unwrap_or(0);
        let (passed, rule) = if kind == "zero" {
            (last == 0, "max |F_x| = 0 at every depth")
        } else {
            let rises = rm.windows(2).filter(|p| p[1] > p[0]).count();
            (rises >= 2, "running max of |F_x| strictly increases at least twice")
        };
        ctx.check("fx", passed, format!("{rule}; running max {rm:?}"));
    }
    ctx.file("tree.tsv", tree.dump(&w));

    if let Some(depth) = ctx.cfg.params.subperiodic_depth {
        let samples = ctx.cfg.params.subperiodic_samples.unwrap_or(10);
        let pool: Vec<VertexId> = (0..w.len()).filter(|&v| tree.depth(v) + depth <= r).collect();
        let mut csv = String::from("vertex,depth,result\n");
        for &x in pool.choose_multiple(&mut ctx.rng, samples.min(pool.len())) {
            let res = match check_subperiodic(&tree, x, depth)? {
                SubperiodicResult::Embedding(_) => "embedding",
                SubperiodicResult::NotFoundInWindow => "not-found-in-window",
            };
            writeln!(csv, "\"{}\",{},{res}", w.key(x), tree.depth(x)).unwrap();
        }
        ctx.file("subperiodic.csv", csv);
    }
    Ok(())
}

fn finiteness(ctx: &mut Ctx<'_>) -> Res {
    let n = ctx.cfg.require(&ctx.cfg.params.n, "n")?;
    let radii = ctx.cfg.require(&ctx.cfg.params.radii, "radii")?;
    let p = ctx.provider(&ctx.cfg.provider)?;
    let wl = WindowLimits { max_vertices: ctx.limits.max_vertices };
    let rep = finiteness_experiment(p, n, &radii, wl, ctx.enum_limits())?;
    ctx.file("finiteness.csv", rep.to_csv());
    let e = ctx.cfg.expect.clone();
    let counts: Vec<u64> = rep.rows.iter().map(|r| r.1).collect();
    if let Some(c) = e.stable_count {
        let ok = rep.stabilized_from.is_some() && counts.last() == Some(&c);
        ctx.check("stable_count", ok, format!("expected {c}, counts {counts:?}"));
    }
    if let Some(r) = e.stabilized_from {
        ctx.check("stabilized_from", rep.stabilized_from == Some(r), format!("expected R = {r}, got {:?}", rep.stabilized_from));
    }
    if let Some(r) = e.core_ball_radius {
        ctx.check("core_ball_radius", rep.core_ball_radius == Some(r), format!("expected {r}, got {:?}", rep.core_ball_radius));
    }
    if let Some(never) = e.never_stabilizes {
        let ok = rep.stabilized_from.is_none() == never && (!never || rep.strictly_increasing());
        ctx.check("never_stabilizes", ok, format!("counts {counts:?}"));
    }
    if let Some(lin) = e.linear_in_r {
        ctx.check("linear_in_r", rep.linear_in_r() == lin, format!("expected linear = {lin}, counts {counts:?}"));
    }
    Ok(())
}

fn subgraph_count(ctx: &mut Ctx<'_>) -> Res {
    let n_max = ctx.cfg.require(&ctx.cfg.params.n_max, "n_max")?;
    let w = ctx.window(&ctx.cfg.provider, ctx.cfg.radius)?;
    let d = ctx.cfg.params.degree.unwrap_or_else(|| w.degree_bound());
    let mut bad_walks = 0u64;
    let counts = for_each_connected_subset(&w, n_max, ctx.limits.max_states, |set| {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        let ok = match walk_certificate(&w, &sorted) {
            Ok(walk) => walk.len() == 2 * (set.len() - 1) && decode_walk(&w, &walk).ok() == Some(sorted),
            Err(_) => false,
        };
        bad_walks += u64::from(!ok);
    })?;
    let mut csv = String::from("n,count,bound\n");
    let mut over = Vec::new();
    for n in 1..=n_max {
        let bound = (d as u128).checked_pow(2 * n as u32).unwrap_or(u128::MAX);
        if counts[n] as u128 > bound {
            over.push(n);
        }
        writeln!(csv, "{n},{},{bound}", counts[n]).unwrap();
    }
    ctx.file("subgraphs.csv", csv);
    ctx.check("walk_bound", over.is_empty(), format!("count <= {d}^(2n) for n <= {n_max}; violations at {over:?}"));
    let total: u64 = counts.iter().sum();
    ctx.check("walk_round_trip", bad_walks == 0, format!("{total} walks, {bad_walks} failed to round-trip"));
    compare_counts(ctx, &counts);
    Ok(())
}
