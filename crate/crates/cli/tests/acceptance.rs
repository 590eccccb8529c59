//! End-to-end acceptance checks. Runs without the test harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use covgame::game_cover::check_strategy;
use covgame::generate::{
    random_cnf, random_digraph, random_game, random_game_with_returns, random_graph, random_qbf,
    random_strongly_connected, random_system, RandomSpec,
};
use covgame::model::{render_game, render_graph, render_system};
use covgame::oracle::Oracle;
use covgame::reductions::{hampath_to_bounded, qbf_to_game, sat_to_graph, vc_to_game, UndirectedGraph};
use covgame::{Error, LabeledGameGraph, LabeledGraph, Player, Solver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRAPHS: usize = 1000;
const GAMES: usize = 500;
const MAX_M: usize = 3;
const MAX_K: usize = 6;

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Line {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn line(id: &'static str, title: &'static str, tally: &Tally, detail: String) -> Line {
    let mut detail = detail;
    if !tally.passed() {
        let shown: Vec<&String> = tally.failures.iter().filter(|f| !f.is_empty()).collect();
        detail = format!("{detail}; {} failures, e.g. {:?}", tally.failures.len(), shown);
    }
    Line {
        id,
        title,
        passed: tally.passed(),
        detail,
    }
}

fn small_spec() -> RandomSpec {
    RandomSpec {
        max_vertices: 6,
        max_props: 3,
        ..RandomSpec::default()
    }
}

/// Corpus shared by criteria 1, 7 and 8.
fn graph_corpus() -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..GRAPHS).map(|_| random_graph(&mut rng, &small_spec())).collect()
}

/// Corpus shared by criteria 2, 3, 7 and 8.
fn game_corpus() -> Vec<LabeledGameGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..GAMES).map(|_| random_game(&mut rng, &small_spec())).collect()
}

fn out_of_range<T>(r: &covgame::Result<T>) -> bool {
    matches!(r, Err(Error::MOutOfRange { .. }))
}

struct GraphRun {
    oracle: Tally,
    bounds: Tally,
    monotone: Tally,
}

fn run_graphs(graphs: &[LabeledGraph]) -> GraphRun {
    let solver = Solver::default();
    let oracle = Oracle::default();
    let mut run = GraphRun {
        oracle: Tally::new(),
        bounds: Tally::new(),
        monotone: Tally::new(),
    };
    for (i, g) in graphs.iter().enumerate() {
        let n = g.num_vertices();
        let mut previous_m = true;
        for m in 0..=MAX_M {
            let unbounded = solver.max_coverage_graph(g, m);
            if m > g.num_props() {
                run.oracle.check(out_of_range(&unbounded), || format!("graph {i}: m = {m} accepted"));
                run.oracle.check(!oracle.brute_force_graph(g, m, None).unwrap(), || {
                    format!("graph {i}: oracle covers more than |AP|")
                });
                continue;
            }
            let answer = unbounded.unwrap();
            let expected = oracle.brute_force_graph(g, m, None).unwrap();
            run.oracle.check(answer.decision == expected, || format!("graph {i}, m = {m}"));
            if let Some(w) = &answer.witness {
                run.bounds.check(w.steps() <= m * n, || format!("graph {i}, m = {m}: {} steps", w.steps()));
            }
            run.monotone.check(previous_m || !answer.decision, || format!("graph {i}: yes at m = {m} after no"));
            previous_m = answer.decision;
            let mut previous_k = false;
            for k in 0..=MAX_K.max(m * n) {
                let b = solver.bounded_coverage_graph(g, m, k).unwrap();
                if k <= MAX_K {
                    let expected = oracle.brute_force_graph(g, m, Some(k)).unwrap();
                    run.oracle.check(b.decision == expected, || format!("graph {i}, m = {m}, k = {k}"));
                }
                if let Some(w) = &b.witness {
                    run.bounds.check(w.steps() <= k, || format!("graph {i}, m = {m}, k = {k}"));
                }
                run.monotone.check(!previous_k || b.decision, || format!("graph {i}, m = {m}: no at k = {k}"));
                previous_k = b.decision;
                if k >= m * n {
                    run.monotone.check(b.decision == answer.decision, || {
                        format!("graph {i}, m = {m}: k = {k} differs from unbounded")
                    });
                }
            }
        }
    }
    run
}

struct GameRun {
    oracle: Tally,
    strategies: Tally,
    playouts: usize,
    bounds: Tally,
    monotone: Tally,
}

fn player2_count(g: &LabeledGameGraph) -> usize {
    (0..g.num_vertices()).filter(|&v| g.owner(v) == Player::Two).count()
}

fn run_games(games: &[LabeledGameGraph]) -> GameRun {
    let oracle = Oracle::default();
    let mut run = GameRun {
        oracle: Tally::new(),
        strategies: Tally::new(),
        playouts: 0,
        bounds: Tally::new(),
        monotone: Tally::new(),
    };
    for low_memory in [false, true] {
        let solver = Solver::default().with_low_memory(low_memory);
        for (i, g) in games.iter().enumerate() {
            let n = g.num_vertices();
            let horizon = n * (g.num_props() + 1);
            let small_adversary = player2_count(g) <= 5;
            let mut previous_m = true;
            for m in 0..=MAX_M {
                let unbounded = solver.max_coverage_game(g, m);
                let expected = oracle.brute_force_game(g, m, None).unwrap();
                if m > g.num_props() {
                    run.oracle.check(out_of_range(&unbounded) && !expected, || {
                        format!("game {i}: m = {m} beyond |AP|")
                    });
                    continue;
                }
                let answer = unbounded.unwrap();
                run.oracle.check(answer.decision == expected, || format!("game {i}, m = {m}"));
                run.monotone.check(previous_m || !answer.decision, || format!("game {i}: yes at m = {m} after no"));
                previous_m = answer.decision;
                let mut judge = |strategy: &covgame::TesterStrategy, limit: usize, what: String| {
                    run.bounds.check(strategy.guaranteed_steps <= limit, || format!("{what}: {} steps", strategy.guaranteed_steps));
                    if !small_adversary {
                        return;
                    }
                    let worst = check_strategy(g, strategy, m, Some(limit));
                    let playout = oracle
                        .strategy_playout(g, m, strategy.guaranteed_steps, |v, b| strategy.choose(v, b))
                        .unwrap();
                    run.playouts += 1;
                    run.strategies.check(worst.is_ok() && playout, || format!("{what}: {worst:?}"));
                };
                match &answer.strategy {
                    Some(s) => judge(s, m * n, format!("game {i}, m = {m}")),
                    None => run.oracle.check(!answer.decision, || format!("game {i}: yes without strategy")),
                }
                let mut previous_k = false;
                for k in 0..=horizon {
                    let b = solver.bounded_coverage_game(g, m, k).unwrap();
                    if k <= MAX_K {
                        let expected = oracle.brute_force_game(g, m, Some(k)).unwrap();
                        run.oracle.check(b.decision == expected, || format!("game {i}, m = {m}, k = {k}"));
                        if let Some(s) = &b.strategy {
                            judge(s, k, format!("game {i}, m = {m}, k = {k}"));
                        }
                    }
                    run.monotone.check(!previous_k || b.decision, || format!("game {i}, m = {m}: no at k = {k}"));
                    previous_k = b.decision;
                }
                run.monotone.check(previous_k == answer.decision, || {
                    format!("game {i}, m = {m}: k = {horizon} differs from unbounded")
                });
            }
        }
    }
    run
}

fn criterion_recurrent_graphs() -> Line {
    let solver = Solver::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tally = Tally::new();
    for i in 0..300 {
        let n = rng.random_range(1..=8);
        let props = rng.random_range(0..=4);
        let extra = rng.random_range(0..=n);
        let g = random_strongly_connected(&mut rng, n, props, extra, 0.3);
        let fast = solver.max_coverage_recurrent_graph(&g).unwrap();
        let value = solver.coverage_value_graph(&g).unwrap().value.unwrap();
        tally.check(fast == value, || format!("graph {i}: fast path {fast}, value {value}"));
    }
    // size ladder: 1x to 10x
    let base = 100_000;
    let factors = [1usize, 2, 4, 7, 10];
    let mut sizes = Vec::new();
    let mut times = Vec::new();
    for f in factors {
        let n = base * f;
        let g = random_strongly_connected(&mut rng, n, 8, 2 * n, 0.2);
        sizes.push((g.num_vertices() + g.num_edges()) as f64);
        std::hint::black_box(solver.max_coverage_recurrent_graph(&g).unwrap());
        let mut runs: Vec<Duration> = (0..7)
            .map(|_| {
                let start = Instant::now();
                std::hint::black_box(solver.max_coverage_recurrent_graph(&g).unwrap());
                start.elapsed()
            })
            .collect();
        runs.sort();
        times.push(runs[3].as_secs_f64());
    }
    let monotone = times.windows(2).all(|w| w[0] <= w[1]);
    let slope = sizes.iter().zip(&times).map(|(s, t)| s * t).sum::<f64>()
        / sizes.iter().map(|s| s * s).sum::<f64>();
    let ratios: Vec<f64> = sizes.iter().zip(&times).map(|(s, t)| t / (slope * s)).collect();
    let near_linear = ratios.iter().all(|r| (1.0 / 3.0..=3.0).contains(r));
    tally.check(monotone, || format!("median times not monotone: {times:?}"));
    tally.check(near_linear, || format!("time / linear fit: {ratios:?}"));
    let ms: Vec<String> = times.iter().map(|t| format!("{:.1}", t * 1e3)).collect();
    let fit: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    line(
        "4",
        "recurrent-graph fast path",
        &tally,
        format!(
            "300 strongly connected graphs agree; ladder |V|+|E| = {:?}, median ms [{}], time/fit [{}]",
            sizes, ms.join(", "), fit.join(", ")
        ),
    )
}

fn criterion_end_components() -> Line {
    let solver = Solver::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = RandomSpec {
        max_vertices: 8,
        max_props: 4,
        ..RandomSpec::default()
    };
    let mut tally = Tally::new();
    let mut found = 0;
    let mut tried = 0;
    while found < 200 {
        tried += 1;
        let g = random_game_with_returns(&mut rng, &spec, 0.6);
        if !solver.is_controllably_recurrent_game(&g).unwrap().recurrent {
            continue;
        }
        found += 1;
        let value = solver.coverage_value_game(&g).unwrap().value.unwrap();
        let (ec, count) = solver.min_cover_end_component(&g).unwrap();
        let certifies = solver.verify_end_component_witness(&g, &ec.vertices, count + 1).unwrap();
        tally.check(value == count && certifies, || format!("game {found}: value {value}, end component {count}"));
    }
    line(
        "5",
        "value equals least end-component cover",
        &tally,
        format!("{found} recurrent games (from {tried} samples): value = least end-component cover"),
    )
}

fn criterion_reductions() -> Line {
    let solver = Solver::default();
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tally = Tally::new();

    let mut simplified = 0;
    for i in 0..500 {
        let phi = random_cnf(&mut rng, 5, 8, 3);
        let gadget = sat_to_graph(&phi).unwrap();
        let value = solver.coverage_value_graph(&gadget.model).unwrap().value.unwrap();
        let best = oracle.maxsat_brute(&phi).unwrap();
        if gadget.offset > 0 {
            simplified += 1;
        }
        tally.check(value == best + 1, || format!("cnf {i}: value {value}, maxsat {best}"));
    }

    let mut truths = 0;
    for i in 0..200 {
        let phi = random_qbf(&mut rng, 4, 6, 3);
        let gadget = qbf_to_game(&phi).unwrap();
        let decision = solver
            .max_coverage_game(&gadget.model, gadget.target.unwrap())
            .unwrap()
            .decision;
        let truth = oracle.qbf_eval_brute(&phi).unwrap();
        truths += truth as usize;
        tally.check(decision == truth, || format!("qbf {i}: game {decision}, formula {truth}"));
    }

    let mut undirected = Vec::new();
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut h = UndirectedGraph::new();
            for v in 0..n {
                h.add_vertex(&format!("u{v}"));
            }
            for (j, &(a, b)) in pairs.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    h.add_edge(a, b);
                }
            }
            undirected.push(h);
        }
    }
    let exhaustive = undirected.len();
    undirected.push(UndirectedGraph::complete(3));
    undirected.push(UndirectedGraph::complete(4));
    undirected.extend((1..=6).map(UndirectedGraph::star));
    let mut edgeless = 0;
    for (i, h) in undirected.iter().enumerate() {
        let gadget = match vc_to_game(h) {
            Err(Error::EmptyEdgeSet) if h.edges().is_empty() => {
                edgeless += 1;
                continue;
            }
            other => other.unwrap(),
        };
        let recurrent = solver.is_controllably_recurrent_game(&gadget.model).unwrap().recurrent;
        let value = solver.coverage_value_game(&gadget.model).unwrap().value.unwrap();
        let cover = oracle.min_vertex_cover_brute(h).unwrap();
        tally.check(recurrent && value == cover + 1, || format!("undirected {i}: value {value}, cover {cover}"));
    }

    let mut paths = 0;
    for i in 0..200 {
        let n = rng.random_range(1..=7);
        let p = rng.random_range(0.15..0.6);
        let h = random_digraph(&mut rng, n, p);
        let gadget = hampath_to_bounded(&h, 0).unwrap();
        let decision = solver
            .bounded_coverage_graph(&gadget.model, gadget.target.unwrap(), gadget.steps.unwrap())
            .unwrap()
            .decision;
        let truth = oracle.hampath_brute(&h, 0).unwrap();
        paths += truth as usize;
        tally.check(decision == truth, || format!("digraph {i}: gadget {decision}, search {truth}"));
    }

    line(
        "6",
        "reduction correctness",
        &tally,
        format!(
            "(a) 500 CNFs, value = maxsat + 1 ({simplified} with pure literals fixed); \
             (b) 200 QBFs, {truths} true; (c) {exhaustive} graphs on <= 5 vertices \
             ({edgeless} edgeless rejected) plus K3, K4, stars; (d) 200 digraphs, {paths} with a path"
        ),
    )
}

fn criterion_determinism(graphs: &[LabeledGraph], games: &[LabeledGameGraph]) -> Line {
    let dir = tempfile::TempDir::new().unwrap();
    let mut files = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut add = |name: String, text: String| {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        files.push(path);
    };
    for (i, g) in graphs.iter().enumerate().step_by(10) {
        add(format!("graph{i}.cov"), render_graph(g, None));
    }
    for (i, g) in games.iter().enumerate().step_by(5) {
        add(format!("game{i}.cov"), render_game(g, None));
    }
    for i in 0..20 {
        add(format!("system{i}.cov"), render_system(&random_system(&mut rng, 4, 2, 3), None));
    }
    for n in 3..=5 {
        let g = vc_to_game(&UndirectedGraph::complete(n)).unwrap();
        add(format!("vc{n}.cov"), render_game(&g.model, Some(&g.metadata)));
    }
    let bin = env!("CARGO_BIN_EXE_covgame");
    let mut tally = Tally::new();
    let mut runs = 0;
    for path in &files {
        for args in [vec!["--value"], vec!["--m", "2"]] {
            let outputs: Vec<Vec<u8>> = (0..2)
                .map(|_| {
                    let out = Command::new(bin)
                        .arg("--json")
                        .arg("solve")
                        .arg(path)
                        .args(&args)
                        .output()
                        .unwrap();
                    let mut bytes = out.stdout;
                    bytes.extend(out.status.code().unwrap_or(-1).to_string().bytes());
                    bytes
                })
                .collect();
            runs += 2;
            tally.check(outputs[0] == outputs[1], || format!("{} {args:?}", path.display()));
        }
    }
    line(
        "9",
        "determinism of solve --json",
        &tally,
        format!("{} corpus files, {runs} process runs, byte-identical", files.len()),
    )
}

fn main() {
    let mut lines = Vec::new();
    let graphs = graph_corpus();
    let games = game_corpus();

    let g = run_graphs(&graphs);
    lines.push(line(
        "1",
        "oracle equivalence, graphs",
        &g.oracle,
        format!("{} graphs, {} comparisons", graphs.len(), g.oracle.checks),
    ));
    let s = run_games(&games);
    lines.push(line(
        "2",
        "oracle equivalence, games",
        &s.oracle,
        format!("{} games, table and low-memory modes, {} comparisons", games.len(), s.oracle.checks),
    ));
    lines.push(line(
        "3",
        "strategy soundness",
        &s.strategies,
        format!("{} strategies replayed against every adversary", s.playouts),
    ));
    lines.push(criterion_recurrent_graphs());
    lines.push(criterion_end_components());
    lines.push(criterion_reductions());
    let mut bounds = g.bounds;
    bounds.checks += s.bounds.checks;
    bounds.failures.extend(s.bounds.failures);
    lines.push(line(
        "7",
        "witness length bounds",
        &bounds,
        format!("{} witnesses within m*|V| (unbounded) or k (bounded)", bounds.checks),
    ));
    let mut monotone = g.monotone;
    monotone.checks += s.monotone.checks;
    monotone.failures.extend(s.monotone.failures);
    lines.push(line(
        "8",
        "monotonicity and saturation",
        &monotone,
        format!("{} checks", monotone.checks),
    ));
    lines.push(criterion_determinism(&graphs, &games));

    let mut failed = 0;
    for l in &lines {
        let verdict = if l.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {} ({})", l.id, l.title, l.detail);
        failed += !l.passed as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", lines.len());
}
