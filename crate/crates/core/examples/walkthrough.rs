//! Steps the engine one worklist pop at a time on a five-edge graph and
//! prints the item that changed after each step.
//!
//!     cargo run --example walkthrough

use cfpq::engine::Evaluator;
use cfpq::{load_triples, Discipline, Grammar, Query};

fn main() -> anyhow::Result<()> {
    let grammar = Grammar::parse("S -> a S b |")?;
    let graph = load_triples("1\ta\t2\n1\ta\t3\n2\tb\t3\n3\ta\t1\n3\tb\t4\n", false)?;
    let query = Query::resolve(&grammar, &graph, &[("1", "S"), ("3", "S")])?;

    let mut ev = Evaluator::new(&grammar, &graph, &query, Discipline::Fifo)?;
    println!("initial items:");
    for (id, _) in ev.items().iter() {
        println!("  {}", ev.render_item(id));
    }
    let mut step = 0;
    while let Some(task) = ev.step() {
        step += 1;
        println!(
            "step {step:>2}: vertex {} at position {} -> {}",
            graph.vertex_name(task.vertex),
            task.position,
            ev.render_item(task.item)
        );
    }

    let result = ev.run();
    println!("\nfinal items:");
    for item in result.final_items(&grammar) {
        println!("  {item}");
    }
    println!("\nanswers:");
    print!("{}", result.results_tsv(&grammar));
    println!("\n{:?}", result.stats);
    Ok(())
}
