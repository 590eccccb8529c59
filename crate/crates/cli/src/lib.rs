//! Command-line front end for the coverage solvers.
//!
//! [`run`] takes the argument list and the three standard streams so the
//! binary and the tests drive the same code.

mod report;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use covgame::game_cover::check_strategy;
use covgame::generate::{self, RandomSpec};
use covgame::model::{
    game_to_dot, graph_to_dot, parse_model, render_game, render_graph, render_system, Model,
    ModelKind,
};
use covgame::oracle::{Oracle, DEFAULT_BUDGET};
use covgame::reductions::{
    hampath_to_bounded, parse_dimacs, parse_qdimacs, qbf_to_game, render_dimacs, render_qdimacs,
    sat_to_graph, vc_to_game, Digraph, UndirectedGraph,
};
use covgame::{
    compile_system, cover_of, path_check, Error, LabeledGameGraph,
    LabeledGraph, Path, Player, Solver,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use report::{Certificate, MoveEntry};
use report::{CertifyReport, RecurrenceReport, SolveReport, VerifyReport};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "covgame", version, about = "Coverage problems on labeled graphs and game graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Give every vertex without successors a self-loop before solving.
    #[arg(long, global = true)]
    patch_self_loops: bool,
    /// Evaluate bounded games by the memoryless tree walk.
    #[arg(long, global = true)]
    low_memory: bool,
    /// Seed for randomized generation.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Model kind, overriding inference from the input fields.
    #[arg(long, global = true, value_parser = parse_kind)]
    kind: Option<ModelKind>,
    /// Largest accepted number of propositions.
    #[arg(long, global = true)]
    ap_cap: Option<usize>,
}

fn parse_kind(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximal coverage: can `m` propositions be visited?
    Solve {
        model: String,
        #[arg(long)]
        m: Option<usize>,
        /// Compute the coverage value instead of deciding a target.
        #[arg(long, conflicts_with = "m")]
        value: bool,
    },
    /// Bounded-time coverage: `m` propositions within `k` steps.
    Bounded {
        model: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Controllable recurrence check.
    Recurrent { model: String },
    /// Compile a system automaton into its system-tester game.
    Compile { system: String },
    /// Generate a coverage instance from a source problem.
    Gadget {
        source: GadgetSource,
        instance: String,
        /// Start vertex for `hampath` (defaults to the first vertex).
        #[arg(long)]
        start: Option<String>,
    },
    /// Re-check a witness produced by `solve` or `bounded`.
    Certify {
        model: String,
        #[arg(long)]
        witness: String,
        /// Target; defaults to the one recorded in the witness file.
        #[arg(long)]
        m: Option<usize>,
        /// Step bound; defaults to the one recorded in the witness file.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Graphviz rendering.
    ExportDot { model: String },
    /// Compare the solver with exhaustive search on one query.
    Verify {
        model: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Node expansions allowed to the exhaustive search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Random instance, reproducible with `--seed`.
    Generate {
        what: GenerateKind,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 3)]
        props: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GadgetSource {
    Sat,
    Qbf,
    Vc,
    Hampath,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenerateKind {
    Graph,
    Game,
    RecurrentGame,
    StronglyConnected,
    System,
    Cnf,
    Qbf,
    Undirected,
    Digraph,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<i32, Failure>;

/// A model ready for the solvers; systems are compiled on load.
enum Target {
    Graph(LabeledGraph),
    Game(LabeledGameGraph),
}

impl Target {
    fn kind(&self) -> &'static str {
        match self {
            Target::Graph(_) => "graph",
            Target::Game(_) => "game",
        }
    }

    fn graph(&self) -> &LabeledGraph {
        match self {
            Target::Graph(g) => g,
            Target::Game(g) => g.graph(),
        }
    }

    fn as_game(&self) -> LabeledGameGraph {
        match self {
            Target::Graph(g) => LabeledGameGraph::owned_by(g.clone(), Player::One),
            Target::Game(g) => g.clone(),
        }
    }
}

struct Context<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn solver(&self) -> Solver {
        let mut s = Solver::default().with_low_memory(self.cli.low_memory);
        if let Some(cap) = self.cli.ap_cap {
            s = s.with_ap_cap(cap);
        }
        s
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
        }
    }

    fn load_model(&mut self, path: &str) -> Result<Model, Failure> {
        let text = self.read(path)?;
        Ok(parse_model(&text, self.cli.kind)?.0)
    }

    /// Loads a graph or game, compiling systems and applying the sink patch.
    fn load_target(&mut self, path: &str) -> Result<(Target, Vec<String>), Failure> {
        let mut target = match self.load_model(path)? {
            Model::Graph(g) => Target::Graph(g),
            Model::Game(g) => Target::Game(g),
            Model::System(sys) => Target::Game(compile_system(&sys)?),
        };
        let mut patched = Vec::new();
        if self.cli.patch_self_loops {
            let sinks = match &mut target {
                Target::Graph(g) => g.patch_self_loops(),
                Target::Game(g) => g.patch_self_loops(),
            };
            patched = sinks
                .into_iter()
                .map(|v| target.graph().vertex_name(v).to_string())
                .collect();
        }
        Ok((target, patched))
    }

    fn emit(&mut self, json: impl serde::Serialize, human: String) -> Result<(), Failure> {
        let text = if self.cli.json {
            let mut s = serde_json::to_string_pretty(&json).expect("reports serialize");
            s.push('\n');
            s
        } else {
            human
        };
        self.write(&text)
    }

    fn write(&mut self, text: &str) -> Result<(), Failure> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
    }
}

fn exit_for(decision: bool) -> i32 {
    if decision {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn solve(ctx: &mut Context, path: &str, m: Option<usize>, value: bool) -> Outcome {
    if m.is_none() && !value {
        return Err(Failure::Usage("solve needs --m <int> or --value".into()));
    }
    let (target, patched_self_loops) = ctx.load_target(path)?;
    let solver = ctx.solver();
    let g = target.graph();
    let mut report = SolveReport {
        command: "solve",
        kind: target.kind(),
        m,
        k: None,
        decision: false,
        value: None,
        witness: None,
        steps_used: None,
        certificate: Certificate::None,
        patched_self_loops,
    };
    match &target {
        Target::Graph(g) => {
            let answer = match m {
                Some(m) => solver.max_coverage_graph(g, m)?,
                None => solver.coverage_value_graph(g)?,
            };
            report.decision = answer.decision;
            report.value = answer.value;
            report.steps_used = answer.steps_used;
            if let Some(path) = &answer.witness {
                report.witness = Some(path.names(g));
                report.certificate = Certificate::path(g, path);
            }
        }
        Target::Game(game) => {
            let answer = match m {
                Some(m) => solver.max_coverage_game(game, m)?,
                None => solver.coverage_value_game(game)?,
            };
            report.decision = answer.decision;
            report.value = answer.value;
            if let Some(strategy) = &answer.strategy {
                report.steps_used = Some(strategy.guaranteed_steps);
                report.certificate = Certificate::strategy(g, strategy);
            } else if solver.is_controllably_recurrent_game(game)?.recurrent {
                let (ec, _) = solver.min_cover_end_component(game)?;
                report.certificate = Certificate::end_component(g, &ec);
            }
        }
    }
    let human = report.human();
    let code = exit_for(report.decision);
    ctx.emit(&report, human)?;
    Ok(code)
}

fn bounded(ctx: &mut Context, path: &str, m: usize, k: usize) -> Outcome {
    let (target, patched_self_loops) = ctx.load_target(path)?;
    let solver = ctx.solver();
    let g = target.graph();
    let mut report = SolveReport {
        command: "bounded",
        kind: target.kind(),
        m: Some(m),
        k: Some(k),
        decision: false,
        value: None,
        witness: None,
        steps_used: None,
        certificate: Certificate::None,
        patched_self_loops,
    };
    match &target {
        Target::Graph(g) => {
            let answer = solver.bounded_coverage_graph(g, m, k)?;
            report.decision = answer.decision;
            report.steps_used = answer.steps_used;
            if let Some(path) = &answer.witness {
                report.witness = Some(path.names(g));
                report.certificate = Certificate::path(g, path);
            }
        }
        Target::Game(game) => {
            let answer = solver.bounded_coverage_game(game, m, k)?;
            report.decision = answer.decision;
            report.value = answer.value;
            if let Some(strategy) = &answer.strategy {
                report.steps_used = Some(strategy.guaranteed_steps);
                report.certificate = Certificate::strategy(g, strategy);
            }
        }
    }
    let human = report.human();
    let code = exit_for(report.decision);
    ctx.emit(&report, human)?;
    Ok(code)
}

fn recurrent(ctx: &mut Context, path: &str) -> Outcome {
    let (target, _) = ctx.load_target(path)?;
    let solver = ctx.solver();
    let (verdict, value) = match &target {
        Target::Graph(g) => {
            let verdict = solver.is_controllably_recurrent_graph(g)?;
            let value = if verdict.recurrent {
                Some(solver.max_coverage_recurrent_graph(g)?)
            } else {
                None
            };
            (verdict, value)
        }
        Target::Game(g) => (solver.is_controllably_recurrent_game(g)?, None),
    };
    let report = RecurrenceReport {
        command: "recurrent",
        kind: target.kind(),
        recurrent: verdict.recurrent,
        counterexample: verdict
            .counterexample
            .map(|v| target.graph().vertex_name(v).to_string()),
        value,
    };
    let human = report.human();
    ctx.emit(&report, human)?;
    Ok(exit_for(verdict.recurrent))
}

fn compile(ctx: &mut Context, path: &str) -> Outcome {
    match ctx.load_model(path)? {
        Model::System(sys) => {
            let game = compile_system(&sys)?;
            ctx.write(&render_game(&game, None))?;
            Ok(EXIT_YES)
        }
        other => Err(Failure::Usage(format!(
            "compile expects a system, got a {}",
            kind_name(other.kind())
        ))),
    }
}

fn kind_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::Graph => "graph",
        ModelKind::Game => "game",
        ModelKind::System => "system",
    }
}

fn gadget(ctx: &mut Context, source: GadgetSource, path: &str, start: Option<&str>) -> Outcome {
    let text = ctx.read(path)?;
    let rendered = match source {
        GadgetSource::Sat => {
            let g = sat_to_graph(&parse_dimacs(&text)?)?;
            render_graph(&g.model, Some(&g.metadata))
        }
        GadgetSource::Qbf => {
            let g = qbf_to_game(&parse_qdimacs(&text)?)?;
            render_game(&g.model, Some(&g.metadata))
        }
        GadgetSource::Vc => {
            let g = vc_to_game(&UndirectedGraph::parse(&text)?)?;
            render_game(&g.model, Some(&g.metadata))
        }
        GadgetSource::Hampath => {
            let h = Digraph::parse(&text)?;
            let start = match start {
                None => 0,
                Some(name) => h
                    .vertex_id(name)
                    .ok_or_else(|| Failure::Usage(format!("unknown start vertex '{name}'")))?,
            };
            let g = hampath_to_bounded(&h, start)?;
            render_graph(&g.model, Some(&g.metadata))
        }
    };
    ctx.write(&rendered)?;
    Ok(EXIT_YES)
}

fn certify(ctx: &mut Context, path: &str, witness: &str, m: Option<usize>, k: Option<usize>) -> Outcome {
    let (target, _) = ctx.load_target(path)?;
    let text = ctx.read(witness)?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
    let recorded = |field: &str| doc.get(field).and_then(serde_json::Value::as_u64).map(|v| v as usize);
    let cert_value = doc.get("certificate").cloned().unwrap_or_else(|| doc.clone());
    let cert: Certificate = serde_json::from_value(cert_value).map_err(Error::from)?;
    let m = match m.or_else(|| recorded("m")) {
        Some(m) => m,
        // a value report certifies its value, or the next one for end components
        None => match (&cert, recorded("value")) {
            (Certificate::EndComponent { .. }, Some(v)) => v + 1,
            (_, Some(v)) => v,
            (_, None) => return Err(Failure::Usage("no target: pass --m".into())),
        },
    };
    let k = k.or_else(|| recorded("k"));
    let solver = ctx.solver();
    let g = target.graph();
    let reason: Option<String> = match &cert {
        Certificate::Path { path, .. } => match (&target, Path::from_names(g, path)) {
            (Target::Game(_), _) => Some("path certificates apply to graphs only".into()),
            (_, Err(e)) => Some(e.to_string()),
            (_, Ok(p)) if !path_check(g, &p) => Some("not a path from the initial vertex".into()),
            (_, Ok(p)) if cover_of(g, &p).len() < m => {
                Some(format!("covers {} propositions, fewer than {m}", cover_of(g, &p).len()))
            }
            (_, Ok(p)) if k.is_some_and(|k| p.steps() > k) => {
                Some(format!("takes {} steps, more than {}", p.steps(), k.unwrap_or(0)))
            }
            _ => None,
        },
        Certificate::Strategy {
            target: t,
            guaranteed_steps,
            moves,
        } => match report::strategy_from_entries(g, *t, *guaranteed_steps, moves) {
            Err(e) => Some(e),
            Ok(strategy) => check_strategy(&target.as_game(), &strategy, m, k)
                .err()
                .map(|f| f.to_string()),
        },
        Certificate::EndComponent { vertices, .. } => match report::vertices_by_name(g, vertices) {
            Err(e) => Some(e),
            Ok(vs) => {
                if solver.verify_end_component_witness(&target.as_game(), &vs, m)? {
                    None
                } else {
                    Some(format!(
                        "not an end component through the initial vertex with fewer than {m} propositions"
                    ))
                }
            }
        },
        Certificate::None => Some("no certificate to check".into()),
    };
    let report = CertifyReport {
        command: "certify",
        certificate: cert.name(),
        m,
        valid: reason.is_none(),
        reason,
    };
    let human = report.human();
    ctx.emit(&report, human)?;
    Ok(exit_for(report.valid))
}

fn export_dot(ctx: &mut Context, path: &str) -> Outcome {
    let dot = match ctx.load_model(path)? {
        Model::Graph(g) => graph_to_dot(&g),
        Model::Game(g) => game_to_dot(&g),
        Model::System(sys) => game_to_dot(&compile_system(&sys)?),
    };
    ctx.write(&dot)?;
    Ok(EXIT_YES)
}

fn verify(ctx: &mut Context, path: &str, m: usize, k: Option<usize>, budget: u64) -> Outcome {
    let (target, _) = ctx.load_target(path)?;
    let solver = ctx.solver();
    let oracle = Oracle::new(budget);
    let (solved, expected) = match (&target, k) {
        (Target::Graph(g), None) => (
            solver.max_coverage_graph(g, m)?.decision,
            oracle.brute_force_graph(g, m, None)?,
        ),
        (Target::Graph(g), Some(k)) => (
            solver.bounded_coverage_graph(g, m, k)?.decision,
            oracle.brute_force_graph(g, m, Some(k))?,
        ),
        (Target::Game(g), None) => (
            solver.max_coverage_game(g, m)?.decision,
            oracle.brute_force_game(g, m, None)?,
        ),
        (Target::Game(g), Some(k)) => (
            solver.bounded_coverage_game(g, m, k)?.decision,
            oracle.brute_force_game(g, m, Some(k))?,
        ),
    };
    let report = VerifyReport {
        command: "verify",
        kind: target.kind(),
        m,
        k,
        solver: solved,
        oracle: expected,
        agree: solved == expected,
    };
    let human = report.human();
    ctx.emit(&report, human)?;
    Ok(exit_for(report.agree))
}

fn generate_instance(ctx: &mut Context, what: GenerateKind, vertices: usize, props: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cli.seed.unwrap_or(0));
    let spec = RandomSpec {
        max_vertices: vertices.max(1),
        max_props: props,
        ..RandomSpec::default()
    };
    let text = match what {
        GenerateKind::Graph => render_graph(&generate::random_graph(&mut rng, &spec), None),
        GenerateKind::Game => render_game(&generate::random_game(&mut rng, &spec), None),
        GenerateKind::RecurrentGame => {
            let solver = ctx.solver();
            let game = loop {
                let g = generate::random_game_with_returns(&mut rng, &spec, 0.6);
                if solver.is_controllably_recurrent_game(&g)?.recurrent {
                    break g;
                }
            };
            render_game(&game, None)
        }
        GenerateKind::StronglyConnected => {
            let n = vertices.max(1);
            render_graph(&generate::random_strongly_connected(&mut rng, n, props, n, 0.3), None)
        }
        GenerateKind::System => render_system(&generate::random_system(&mut rng, vertices, 2, props), None),
        GenerateKind::Cnf => render_dimacs(&generate::random_cnf(&mut rng, vertices, 2 * vertices, 3)),
        GenerateKind::Qbf => render_qdimacs(&generate::random_qbf(&mut rng, vertices, 2 * vertices, 3)),
        GenerateKind::Undirected => generate::random_undirected(&mut rng, vertices, 0.5).render(),
        GenerateKind::Digraph => generate::random_digraph(&mut rng, vertices, 0.4).render(),
    };
    ctx.write(&text)?;
    Ok(EXIT_YES)
}

fn dispatch(ctx: &mut Context) -> Outcome {
    match &ctx.cli.command {
        Command::Solve { model, m, value } => solve(ctx, model, *m, *value),
        Command::Bounded { model, m, k } => bounded(ctx, model, *m, *k),
        Command::Recurrent { model } => recurrent(ctx, model),
        Command::Compile { system } => compile(ctx, system),
        Command::Gadget {
            source,
            instance,
            start,
        } => gadget(ctx, *source, instance, start.as_deref()),
        Command::Certify { model, witness, m, k } => certify(ctx, model, witness, *m, *k),
        Command::ExportDot { model } => export_dot(ctx, model),
        Command::Verify { model, m, k, budget } => verify(ctx, model, *m, *k, *budget),
        Command::Generate {
            what,
            vertices,
            props,
        } => generate_instance(ctx, *what, *vertices, *props),
    }
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_YES;
        }
        Err(e) => {
            // clap's message, folded onto one line and without the usage hint
            let text = e.to_string();
            let line: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            let _ = writeln!(stderr, "{}", line.join(" "));
            return EXIT_USAGE;
        }
    };
    let mut ctx = Context {
        cli: &cli,
        stdin,
        out: stdout,
    };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    }
}
