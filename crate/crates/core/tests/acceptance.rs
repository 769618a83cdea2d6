//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report reads top to
//! bottom. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cfpq::graph::{gen_ablist, gen_barabasi, gen_complete, gen_string};
use cfpq::{
    evaluate, fixpoint_relations, grammars, DataGraph, Discipline, EvalResult, Grammar, Query,
    VertexId,
};

const BARABASI_INSTANCES: u64 = 100;
const BARABASI_LIMIT: Duration = Duration::from_secs(300);
const ONTOLOGY_ENV: &str = "CFPQ_ONTOLOGY_DIR";

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

/// Collects every run so the cross-cutting criteria can look back at them.
#[derive(Default)]
struct Ledger {
    runs: usize,
    bound_violations: Vec<String>,
    discipline_mismatches: Vec<String>,
}

impl Ledger {
    /// Evaluates under every discipline, recording bound and determinism
    /// failures; returns the FIFO result.
    fn evaluate_all(&mut self, tag: &str, g: &Grammar, d: &DataGraph, q: &Query) -> EvalResult {
        let mut fifo: Option<(EvalResult, String)> = None;
        for disc in Discipline::all(0xC0FFEE) {
            let res = evaluate(g, d, q, disc).expect("valid instance");
            self.runs += 1;
            if let Err(e) = res.stats.check_bounds() {
                self.bound_violations.push(format!("{tag} [{disc}]: {e}"));
            }
            let tsv = res.results_tsv(g);
            match &fifo {
                None => fifo = Some((res, tsv)),
                Some((_, reference)) if *reference != tsv => {
                    self.discipline_mismatches.push(format!("{tag} [{disc}]"));
                }
                Some(_) => {}
            }
        }
        fifo.expect("at least one discipline").0
    }
}

fn grammar(name: &str) -> Grammar {
    grammars::builtin(name)
        .expect("known built-in")
        .expect("built-in parses")
}

fn names(d: &DataGraph, set: &BTreeSet<VertexId>) -> Vec<String> {
    set.iter().map(|&v| d.vertex_name(v).to_string()).collect()
}

/// Query for the two start pairs of the small worked example.
fn example() -> (Grammar, DataGraph, Query) {
    let g = grammar("balanced");
    let d = cfpq::load_triples("1\ta\t2\n1\ta\t3\n2\tb\t3\n3\ta\t1\n3\tb\t4\n", false).unwrap();
    let q = Query::resolve(&g, &d, &[("1", "S"), ("3", "S")]).unwrap();
    (g, d, q)
}

fn final_items(ledger: &mut Ledger) -> Outcome {
    let (g, d, q) = example();
    let res = ledger.evaluate_all("example", &g, &d, &q);
    let expected_items = [
        "[S -> {1•} a {2•,3•} S {2•,3•,4•} b {3•,4•}]",
        "[S -> {1•}]",
        "[S -> {2•} a {} S {} b {}]",
        "[S -> {2•}]",
        "[S -> {3•} a {1•} S {1•,3•,4•} b {4•}]",
        "[S -> {3•}]",
    ];
    let expected_edges: BTreeSet<(String, String, String)> = [
        ("1", "1"),
        ("2", "2"),
        ("3", "3"),
        ("1", "3"),
        ("1", "4"),
        ("3", "4"),
    ]
    .iter()
    .map(|(x, y)| (x.to_string(), "S".to_string(), y.to_string()))
    .collect();
    let items = res.final_items(&g);
    if items != expected_items {
        return Outcome::Fail(format!("final items {items:?}"));
    }
    let edges = res.derived_edges(&g);
    if edges != expected_edges {
        return Outcome::Fail(format!("derived edges {edges:?}"));
    }
    Outcome::Pass("6 final items and 6 derived S-edges match".into())
}

fn example_answers(ledger: &mut Ledger) -> Outcome {
    let (g, d, q) = example();
    let res = ledger.evaluate_all("example-answers", &g, &d, &q);
    let s = g.start();
    let get = |v: &str| names(&d, res.answer(d.vertex(v).unwrap(), s).unwrap());
    let (one, three) = (get("1"), get("3"));
    if one == ["1", "3", "4"] && three == ["3", "4"] {
        Outcome::Pass("1 -> {1,3,4}, 3 -> {3,4}".into())
    } else {
        Outcome::Fail(format!("1 -> {one:?}, 3 -> {three:?}"))
    }
}

fn barabasi_vs_oracle(ledger: &mut Ledger) -> Outcome {
    let grammar_names = [
        "ab_ambiguous",
        "ab_unambiguous",
        "dense",
        "sparse",
        "an_bm_cm_dn",
    ];
    let gs: Vec<Grammar> = grammar_names.iter().map(|n| grammar(n)).collect();
    let shapes: Vec<(usize, usize)> = [20, 40, 60]
        .iter()
        .flat_map(|&n| [1, 3, 5].map(|k| (n, k)))
        .collect();
    let mut checked = 0usize;
    for i in 0..BARABASI_INSTANCES {
        let (n, k) = shapes[i as usize % shapes.len()];
        let d = gen_barabasi(n, k, i, &["a", "b", "c", "d"]).expect("valid parameters");
        for (gname, g) in grammar_names.iter().zip(&gs) {
            let tag = format!("barabasi(n={n},k={k},seed={i})/{gname}");
            let q = Query::all_vertices(&d, g.start());
            let res = ledger.evaluate_all(&tag, g, &d, &q);
            let table = fixpoint_relations(g, &d).expect("within oracle budget");
            for x in d.vertex_ids() {
                let want = table.relation(g.start()).image(x);
                let got = res.answer(x, g.start()).cloned().unwrap_or_default();
                if got != *want {
                    return Outcome::Fail(format!(
                        "{tag} at {}: engine {:?} oracle {:?}",
                        d.vertex_name(x),
                        names(&d, &got),
                        names(&d, want)
                    ));
                }
                checked += 1;
            }
        }
    }
    Outcome::Pass(format!(
        "{BARABASI_INSTANCES} graphs x {} grammars, {checked} start vertices agree",
        grammar_names.len()
    ))
}

fn ambiguity_invariance(ledger: &mut Ledger) -> Outcome {
    let (amb, unamb) = (grammar("ab_ambiguous"), grammar("ab_unambiguous"));
    for n in [10, 50, 100] {
        let d = gen_ablist(n);
        let a = ledger.evaluate_all(
            &format!("ablist({n})/ambiguous"),
            &amb,
            &d,
            &Query::all_vertices(&d, amb.start()),
        );
        let u = ledger.evaluate_all(
            &format!("ablist({n})/unambiguous"),
            &unamb,
            &d,
            &Query::all_vertices(&d, unamb.start()),
        );
        if a.results_tsv(&amb) != u.results_tsv(&unamb) {
            return Outcome::Fail(format!("ablist({n}): answers differ"));
        }
    }
    Outcome::Pass("ablist n = 10, 50, 100 identical".into())
}

fn string_graphs(ledger: &mut Ledger) -> Outcome {
    let (dense, sparse) = (grammar("dense"), grammar("sparse"));
    for n in [1, 5, 50] {
        let d = gen_string(n, "s");
        let zero = d.vertex("0").unwrap();
        for (g, lo) in [(&dense, 1), (&sparse, 0)] {
            let mut q = Query::new();
            q.insert(zero, g.start());
            let res = ledger.evaluate_all(&format!("string({n})/{}", g.name(g.start())), g, &d, &q);
            let want: BTreeSet<VertexId> = (lo..=n as u32).map(VertexId).collect();
            let got = res.answer(zero, g.start()).cloned().unwrap_or_default();
            let oracle = fixpoint_relations(g, &d)
                .unwrap()
                .relation(g.start())
                .image(zero)
                .clone();
            if got != want || oracle != want {
                return Outcome::Fail(format!(
                    "string({n}), {} from 0: engine {:?} oracle {:?}",
                    g.name(g.start()),
                    names(&d, &got),
                    names(&d, &oracle)
                ));
            }
        }
    }
    Outcome::Pass("n = 1, 5, 50: dense {1..n}, sparse {0..n}, oracle agrees".into())
}

fn pop_growth(ledger: &mut Ledger) -> Outcome {
    let g = grammar("dense");
    let mut pops = Vec::new();
    for n in [10, 20, 40] {
        let d = gen_complete(n, &["s"]);
        let res = ledger.evaluate_all(
            &format!("complete({n})/dense"),
            &g,
            &d,
            &Query::all_vertices(&d, g.start()),
        );
        pops.push(res.stats.pops);
    }
    let ratios: Vec<f64> = pops.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let detail = format!("pops {pops:?}, ratios {:.3?}", ratios);
    if ratios.iter().all(|&r| r <= 4.0) {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn bounds(ledger: &Ledger) -> Outcome {
    match ledger.bound_violations.first() {
        None => Outcome::Pass(format!("{} runs within item and pop bounds", ledger.runs)),
        Some(first) => Outcome::Fail(format!(
            "{} violations, first: {first}",
            ledger.bound_violations.len()
        )),
    }
}

fn determinism(ledger: &Ledger) -> Outcome {
    match ledger.discipline_mismatches.first() {
        None => Outcome::Pass(format!(
            "{} runs, fifo/lifo/random results byte-identical",
            ledger.runs
        )),
        Some(first) => Outcome::Fail(format!(
            "{} mismatches, first: {first}",
            ledger.discipline_mismatches.len()
        )),
    }
}

fn find_ontology(dir: &Path, name: &str) -> Option<PathBuf> {
    ["nt", "tsv"]
        .iter()
        .map(|ext| dir.join(format!("{name}.{ext}")))
        .find(|p| p.is_file())
}

fn ontologies(ledger: &mut Ledger) -> Outcome {
    let Some(dir) = std::env::var_os(ONTOLOGY_ENV).map(PathBuf::from) else {
        return Outcome::Skip(format!("{ONTOLOGY_ENV} not set"));
    };
    let expected = [
        ("skos", 810),
        ("generations", 2164),
        ("travel", 2499),
        ("pizza", 56195),
    ];
    let g = grammar("sc_t");
    let mut seen = Vec::new();
    for (name, want) in expected {
        let Some(path) = find_ontology(&dir, name) else {
            continue;
        };
        let d = cfpq::cli::load_graph(&path, true).expect("ontology loads");
        let res = ledger.evaluate_all(name, &g, &d, &Query::all_vertices(&d, g.start()));
        let got = res.result_count();
        if got != want {
            return Outcome::Fail(format!("{name}: {got} results, expected {want}"));
        }
        seen.push(format!("{name}={got}"));
    }
    if seen.is_empty() {
        Outcome::Skip(format!("no ontology files in {}", dir.display()))
    } else {
        Outcome::Pass(seen.join(", "))
    }
}

/// Runs `f` and fails its outcome if it took longer than `limit`.
fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let started = Instant::now();
    let outcome = f();
    let elapsed = started.elapsed();
    match outcome {
        Outcome::Pass(d) if elapsed > limit => {
            Outcome::Fail(format!("{d}, but took {elapsed:.2?} (limit {limit:?})"))
        }
        Outcome::Pass(d) => Outcome::Pass(format!("{d} [{elapsed:.2?}]")),
        other => other,
    }
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    let secs = Duration::from_secs;
    let c1 = timed(secs(1), || final_items(&mut ledger));
    let c2 = timed(secs(1), || example_answers(&mut ledger));
    let c3 = timed(BARABASI_LIMIT, || barabasi_vs_oracle(&mut ledger));
    let c4 = timed(secs(30), || ambiguity_invariance(&mut ledger));
    let c7 = timed(secs(10), || string_graphs(&mut ledger));
    let growth = timed(secs(120), || pop_growth(&mut ledger));
    let c8 = ontologies(&mut ledger);
    let c5 = determinism(&ledger);
    let c6 = match (bounds(&ledger), growth) {
        (Outcome::Pass(a), Outcome::Pass(b)) => Outcome::Pass(format!("{a}; {b}")),
        (Outcome::Fail(a), _) | (_, Outcome::Fail(a)) => Outcome::Fail(a),
        (o, _) => o,
    };

    let mut failed = 0;
    let criteria = [
        (1, "worked example final items and derived edges", c1),
        (2, "worked example answers", c2),
        (3, "Barabási graphs agree with the oracle", c3),
        (4, "ambiguous and unambiguous grammars agree", c4),
        (5, "worklist discipline does not change results", c5),
        (
            6,
            "complexity bounds hold and pops grow at most 4x per doubling",
            c6,
        ),
        (7, "string graphs", c7),
        (8, "ontology same-generation counts", c8),
    ];
    for (id, title, outcome) in criteria {
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("{tag} [{id}] {title}: {detail}");
    }
    println!("{failed} failed, {} runs", ledger.runs);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
