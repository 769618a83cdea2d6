//! Same-generation queries over a small class hierarchy given as N-Triples.
//! Predicates are reduced to their local names, and `--add-inverses` style
//! loading materializes `subClassOf^-1` and `type^-1`.
//!
//!     cargo run --example same_generation

use cfpq::{evaluate, grammars, load_ntriples, Discipline, Query};

const ONTOLOGY: &str = r#"
<http://ex.org/Dog> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/Mammal> .
<http://ex.org/Cat> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/Mammal> .
<http://ex.org/Mammal> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/Animal> .
<http://ex.org/Bird> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/Animal> .
<http://ex.org/rex> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/Dog> .
<http://ex.org/tom> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/Cat> .
<http://ex.org/rex> <http://www.w3.org/2000/01/rdf-schema#label> "Rex"@en .
"#;

fn main() -> anyhow::Result<()> {
    let graph = load_ntriples(ONTOLOGY, true)?;
    println!(
        "{} vertices, {} edges (inverses included)\n",
        graph.vertex_count(),
        graph.edge_count()
    );

    for name in ["sc_t", "sc"] {
        let grammar = grammars::builtin(name).expect("built-in")?;
        let query = Query::all_vertices(&graph, grammar.start());
        let result = evaluate(&grammar, &graph, &query, Discipline::Fifo)?;
        println!("{name}: {} answers", result.result_count());
        for line in result.results_tsv(&grammar).lines() {
            let short: Vec<&str> = line
                .split('\t')
                .map(|f| f.rsplit('/').next().unwrap_or(f))
                .collect();
            println!("  {}", short.join("  "));
        }
        println!();
    }
    Ok(())
}
