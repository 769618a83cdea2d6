//! The `cfpq` command line: `eval`, `gen`, `check` and `bench`.
//!
//! Grammars are given as a file path or `builtin:NAME` (see
//! [`crate::grammars::ALL`]). Graphs come from a triple file (`.nt` is read
//! as N-Triples, anything else as TSV) or from a generator. Exit status is 0
//! on success, 1 when `check` finds a disagreement or a `bench` row fails,
//! and 2 on invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{evaluate, Discipline, EvalResult, Query};
use crate::grammar::Grammar;
use crate::grammars;
use crate::graph::{self, DataGraph};
use crate::oracle::{self, DEFAULT_TRIPLE_BUDGET};

#[derive(Debug, Parser)]
#[command(
    name = "cfpq",
    version,
    about = "Context-free path queries over labeled graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a query and write the answer triples as TSV.
    Eval(EvalArgs),
    /// Generate a synthetic graph as triple TSV.
    Gen(GenArgs),
    /// Cross-check the engine (all disciplines) against the oracle.
    Check(CheckArgs),
    /// Run a sweep of grammar × graph evaluations and print a table.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Complete,
    Cycle,
    String,
    Ablist,
    Barabasi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DisciplineArg {
    Fifo,
    Lifo,
    Random,
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    /// Graph family to generate.
    #[arg(long = "gen", value_enum)]
    pub kind: Option<GenKind>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edges per joining vertex (barabasi).
    #[arg(long)]
    pub k: Option<usize>,
    /// Edge labels, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub labels: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Grammar file, or `builtin:NAME`.
    #[arg(long)]
    pub grammar: String,
    /// Triple file (TSV, or N-Triples when the extension is `.nt`).
    #[arg(long, conflicts_with = "kind")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Also materialize `p^-1` edges for every loaded triple.
    #[arg(long)]
    pub add_inverses: bool,
    /// Query pairs file: `vertex \t nonterminal` per line.
    #[arg(long, conflicts_with = "all_from")]
    pub query: Option<PathBuf>,
    /// Query every vertex with this nonterminal (default: start symbol).
    #[arg(long)]
    pub all_from: Option<String>,
    /// Seed for generators and the random discipline.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "fifo")]
    pub discipline: DisciplineArg,
    /// Results file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Largest graph, in triples, the oracle accepts.
    #[arg(long, default_value_t = DEFAULT_TRIPLE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Grammar files or `builtin:NAME`; repeat for several.
    #[arg(long, required = true)]
    pub grammar: Vec<String>,
    /// Triple files; repeat for several.
    #[arg(long)]
    pub graph: Vec<PathBuf>,
    #[arg(long = "gen", value_enum)]
    pub kind: Option<GenKind>,
    /// Sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Barabási k values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub labels: Vec<String>,
    #[arg(long)]
    pub add_inverses: bool,
    #[arg(long)]
    pub all_from: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Gen(a) => cmd_gen(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
}

pub fn load_grammar(spec: &str) -> Result<Grammar> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return grammars::builtin(name)
            .ok_or_else(|| anyhow!("no built-in grammar `{name}`"))?
            .map_err(Into::into);
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading grammar {spec}"))?;
    Grammar::parse(&text).with_context(|| format!("parsing grammar {spec}"))
}

fn grammar_label(spec: &str) -> String {
    match spec.strip_prefix("builtin:") {
        Some(name) => name.to_string(),
        None => Path::new(spec)
            .file_stem()
            .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned()),
    }
}

pub fn load_graph(path: &Path, add_inverses: bool) -> Result<DataGraph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading graph {}", path.display()))?;
    let g = if path.extension().is_some_and(|e| e == "nt") {
        graph::load_ntriples(&text, add_inverses)
    } else {
        graph::load_triples(&text, add_inverses)
    };
    g.with_context(|| format!("parsing graph {}", path.display()))
}

pub fn generate(
    kind: GenKind,
    n: usize,
    k: Option<usize>,
    labels: &[String],
    seed: u64,
) -> Result<DataGraph> {
    let first = |default: &str| {
        labels
            .first()
            .cloned()
            .unwrap_or_else(|| default.to_string())
    };
    Ok(match kind {
        GenKind::Complete => {
            let labels = if labels.is_empty() {
                vec!["s".to_string()]
            } else {
                labels.to_vec()
            };
            graph::gen_complete(n, &labels)
        }
        GenKind::Cycle => {
            if n == 0 {
                bail!("cycle needs n >= 1");
            }
            graph::gen_cycle(n, &first("s"))
        }
        GenKind::String => graph::gen_string(n, &first("s")),
        GenKind::Ablist => graph::gen_ablist(n),
        GenKind::Barabasi => {
            let k = k.ok_or_else(|| anyhow!("barabasi needs --k"))?;
            let labels = if labels.is_empty() {
                ["a", "b", "c", "d"].map(String::from).to_vec()
            } else {
                labels.to_vec()
            };
            graph::gen_barabasi(n, k, seed, &labels)?
        }
    })
}

fn generator_graph(g: &GeneratorArgs, seed: u64) -> Result<DataGraph> {
    let kind = g
        .kind
        .ok_or_else(|| anyhow!("one of --graph or --gen is required"))?;
    let n = g.n.ok_or_else(|| anyhow!("--gen needs --n"))?;
    generate(kind, n, g.k, &g.labels, seed)
}

/// Reads `vertex \t nonterminal` lines.
pub fn read_query_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            bail!("query line {}: expected `vertex\\tnonterminal`", i + 1);
        }
        pairs.push((fields[0].to_string(), fields[1].to_string()));
    }
    Ok(pairs)
}

fn all_from(grammar: &Grammar, graph: &DataGraph, nt: Option<&str>) -> Result<Query> {
    let a = match nt {
        Some(name) => grammar.nonterminal(name)?,
        None => grammar.start(),
    };
    Ok(Query::all_vertices(graph, a))
}

struct Instance {
    grammar: Grammar,
    graph: DataGraph,
    query: Query,
}

fn load_instance(s: &SourceArgs) -> Result<Instance> {
    let grammar = load_grammar(&s.grammar)?;
    let graph = match &s.graph {
        Some(path) => load_graph(path, s.add_inverses)?,
        None => generator_graph(&s.generator, s.seed)?,
    };
    let query = match &s.query {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading query {}", path.display()))?;
            Query::resolve(&grammar, &graph, &read_query_pairs(&text)?)?
        }
        None => all_from(&grammar, &graph, s.all_from.as_deref())?,
    };
    Ok(Instance {
        grammar,
        graph,
        query,
    })
}

fn discipline(arg: DisciplineArg, seed: u64) -> Discipline {
    match arg {
        DisciplineArg::Fifo => Discipline::Fifo,
        DisciplineArg::Lifo => Discipline::Lifo,
        DisciplineArg::Random => Discipline::Random { seed },
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
    }
}

pub fn cmd_eval(a: &EvalArgs) -> Result<ExitCode> {
    let inst = load_instance(&a.source)?;
    let started = Instant::now();
    let res = evaluate(
        &inst.grammar,
        &inst.graph,
        &inst.query,
        discipline(a.discipline, a.source.seed),
    )?;
    let elapsed = started.elapsed();
    write_output(a.out.as_deref(), &res.results_tsv(&inst.grammar))?;
    let mut err = io::stderr().lock();
    for (k, v) in res.stats.key_values() {
        writeln!(err, "{k}={v}")?;
    }
    writeln!(err, "elapsed_ms={:.3}", elapsed.as_secs_f64() * 1e3)?;
    writeln!(err, "results={}", res.result_count())?;
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_gen(a: &GenArgs) -> Result<ExitCode> {
    let g = generator_graph(&a.generator, a.seed)?;
    write_output(a.out.as_deref(), &g.to_tsv())?;
    Ok(ExitCode::SUCCESS)
}

/// First query pair whose engine and oracle answers differ, rendered.
pub fn first_mismatch(
    grammar: &Grammar,
    graph: &DataGraph,
    res: &EvalResult,
    table: &oracle::RelationTable,
) -> Option<String> {
    let names = |s: &std::collections::BTreeSet<graph::VertexId>| {
        let v: Vec<&str> = s.iter().map(|&y| graph.vertex_name(y)).collect();
        format!("{{{}}}", v.join(","))
    };
    for (&(x, a), got) in &res.answers {
        let want = table.relation(a).image(x);
        if got != want {
            return Some(format!(
                "({}, {}): engine {} oracle {}",
                graph.vertex_name(x),
                grammar.name(a),
                names(got),
                names(want)
            ));
        }
    }
    None
}

pub fn cmd_check(a: &CheckArgs) -> Result<ExitCode> {
    let inst = load_instance(&a.source)?;
    let table = oracle::fixpoint_relations_with_budget(&inst.grammar, &inst.graph, a.budget)?;
    let mut reference: Option<String> = None;
    for d in Discipline::all(a.source.seed) {
        let res = evaluate(&inst.grammar, &inst.graph, &inst.query, d)?;
        if let Some(m) = first_mismatch(&inst.grammar, &inst.graph, &res, &table) {
            println!("MISMATCH [{d}] {m}");
            return Ok(ExitCode::from(1));
        }
        let tsv = res.results_tsv(&inst.grammar);
        match &reference {
            Some(r) if *r != tsv => {
                println!("MISMATCH [{d}] results differ from fifo");
                return Ok(ExitCode::from(1));
            }
            Some(_) => {}
            None => reference = Some(tsv),
        }
        if let Err(e) = res.stats.check_bounds() {
            println!("BOUND [{d}] {e}");
            return Ok(ExitCode::from(1));
        }
    }
    println!(
        "ok: {} query pairs agree with the oracle under fifo, lifo and random",
        inst.query.len()
    );
    Ok(ExitCode::SUCCESS)
}

pub const BENCH_HEADER: &str =
    "grammar\tgraph\tvertices\tresults\ttime_ms\titems\tpops\tinsertions\tedges_added\tposition_entries";

struct BenchGraph {
    name: String,
    graph: Result<DataGraph>,
}

fn bench_graphs(a: &BenchArgs) -> Vec<BenchGraph> {
    let mut out: Vec<BenchGraph> = a
        .graph
        .iter()
        .map(|p| BenchGraph {
            name: p.file_stem().map_or_else(
                || p.display().to_string(),
                |s| s.to_string_lossy().into_owned(),
            ),
            graph: load_graph(p, a.add_inverses),
        })
        .collect();
    if let Some(kind) = a.kind {
        let kind_name = kind
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        for &n in &a.n {
            if kind == GenKind::Barabasi {
                for &k in &a.k {
                    out.push(BenchGraph {
                        name: format!("{kind_name}(n={n},k={k},seed={})", a.seed),
                        graph: generate(kind, n, Some(k), &a.labels, a.seed),
                    });
                }
            } else {
                out.push(BenchGraph {
                    name: format!("{kind_name}(n={n})"),
                    graph: generate(kind, n, None, &a.labels, a.seed),
                });
            }
        }
    }
    out
}

fn bench_row(
    grammar: &Grammar,
    graph: &DataGraph,
    all_from_nt: Option<&str>,
    reps: usize,
) -> Result<String> {
    let query = all_from(grammar, graph, all_from_nt)?;
    let mut total = 0.0;
    let mut first: Option<EvalResult> = None;
    for _ in 0..reps {
        let started = Instant::now();
        let res = evaluate(grammar, graph, &query, Discipline::Fifo)?;
        total += started.elapsed().as_secs_f64();
        res.stats.check_bounds().map_err(|e| anyhow!(e))?;
        match &first {
            Some(f) if f.result_count() != res.result_count() => {
                bail!("result count changed between repetitions")
            }
            Some(_) => {}
            None => first = Some(res),
        }
    }
    let res = first.expect("reps >= 1");
    let s = res.stats;
    Ok(format!(
        "{}\t{}\t{:.3}\t{}\t{}\t{}\t{}\t{}",
        graph.vertex_count(),
        res.result_count(),
        total * 1e3 / reps as f64,
        s.items_created,
        s.pops,
        s.insertions,
        s.edges_added,
        res.items.position_entries()
    ))
}

pub fn cmd_bench(a: &BenchArgs) -> Result<ExitCode> {
    if a.reps == 0 {
        bail!("--reps must be at least 1");
    }
    if a.kind.is_some() && a.n.is_empty() {
        bail!("--gen needs --n");
    }
    if a.kind == Some(GenKind::Barabasi) && a.k.is_empty() {
        bail!("barabasi needs --k");
    }
    let graphs = bench_graphs(a);
    if graphs.is_empty() {
        bail!("no graphs: give --graph and/or --gen with --n");
    }
    let mut table = format!("{BENCH_HEADER}\n");
    let mut failed = false;
    for spec in &a.grammar {
        let gname = grammar_label(spec);
        let grammar = match load_grammar(spec) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error\t{gname}\t*\t{e:#}");
                failed = true;
                continue;
            }
        };
        for bg in &graphs {
            let row = bg
                .graph
                .as_ref()
                .map_err(|e| anyhow!("{e:#}"))
                .and_then(|g| bench_row(&grammar, g, a.all_from.as_deref(), a.reps));
            match row {
                Ok(cols) => table.push_str(&format!("{gname}\t{}\t{cols}\n", bg.name)),
                Err(e) => {
                    eprintln!("error\t{gname}\t{}\t{e:#}", bg.name);
                    failed = true;
                }
            }
        }
    }
    write_output(a.out.as_deref(), &table)?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
