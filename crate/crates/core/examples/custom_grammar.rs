//! Building a grammar in code and querying a hand-made graph for
//! `a^n b^m c^m d^n` paths from chosen start vertices.
//!
//!     cargo run --example custom_grammar

use cfpq::{evaluate, DataGraph, Discipline, Grammar, Query};

fn main() -> anyhow::Result<()> {
    let mut b = Grammar::builder();
    b.rule("S", &["a", "S", "d"])?
        .rule("S", &["a", "X", "d"])?
        .rule("X", &["b", "X", "c"])?
        .rule::<&str>("X", &[])?;
    let grammar = b.build()?;
    print!("grammar:\n{grammar}");
    println!(
        "nullable: {:?}",
        grammar
            .nullable()
            .iter()
            .map(|&s| grammar.name(s))
            .collect::<Vec<_>>()
    );

    // p -a-> q -a-> m -b-> r -c-> m2 -d-> u -d-> v, plus a shortcut q -d-> w
    let mut graph = DataGraph::new();
    for (s, l, t) in [
        ("p", "a", "q"),
        ("q", "a", "m"),
        ("m", "b", "r"),
        ("r", "c", "m2"),
        ("m2", "d", "u"),
        ("u", "d", "v"),
        ("q", "d", "w"),
    ] {
        graph.add_named(s, l, t);
    }
    let query = Query::resolve(&grammar, &graph, &[("p", "S"), ("q", "S"), ("m", "X")])?;
    let result = evaluate(&grammar, &graph, &query, Discipline::Lifo)?;
    print!("\n{}", result.results_tsv(&grammar));
    Ok(())
}
