//! The worklist order changes how much work happens when, never the answer.
//!
//!     cargo run --example disciplines

use cfpq::graph::gen_barabasi;
use cfpq::{evaluate, grammars, Discipline, Query};

fn main() -> anyhow::Result<()> {
    let grammar = grammars::builtin("ab_ambiguous").expect("built-in")?;
    let graph = gen_barabasi(50, 3, 11, &["a", "b", "c", "d"])?;
    let query = Query::all_vertices(&graph, grammar.start());
    let mut reference = None;
    for disc in Discipline::all(2024) {
        let r = evaluate(&grammar, &graph, &query, disc)?;
        println!(
            "{:<14} {} answers, {} pops, {} insertions, {} notifications",
            disc.to_string(),
            r.result_count(),
            r.stats.pops,
            r.stats.insertions,
            r.stats.notifications
        );
        let tsv = r.results_tsv(&grammar);
        match &reference {
            None => reference = Some(tsv),
            Some(t) => anyhow::ensure!(*t == tsv, "{disc} changed the answer"),
        }
    }
    println!("all disciplines produced byte-identical results");
    Ok(())
}
