//! Compares the worklist engine with the naive fixpoint oracle on random
//! scale-free graphs, under every worklist discipline.
//!
//!     cargo run --release --example oracle_crosscheck [instances]

use cfpq::graph::gen_barabasi;
use cfpq::{evaluate, fixpoint_relations, grammars, Discipline, Query};

fn main() -> anyhow::Result<()> {
    let instances: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(20);
    let names = [
        "ab_ambiguous",
        "ab_unambiguous",
        "dense",
        "sparse",
        "an_bm_cm_dn",
    ];
    let mut pairs = 0;
    for seed in 0..instances {
        let (n, k) = (20 + 10 * (seed as usize % 5), 1 + seed as usize % 4);
        let graph = gen_barabasi(n, k, seed, &["a", "b", "c", "d"])?;
        for name in names {
            let grammar = grammars::builtin(name).expect("built-in")?;
            let oracle = fixpoint_relations(&grammar, &graph)?;
            let query = Query::all_vertices(&graph, grammar.start());
            for disc in Discipline::all(seed) {
                let result = evaluate(&grammar, &graph, &query, disc)?;
                for x in graph.vertex_ids() {
                    let got = result
                        .answer(x, grammar.start())
                        .cloned()
                        .unwrap_or_default();
                    anyhow::ensure!(
                        &got == oracle.relation(grammar.start()).image(x),
                        "{name} on barabasi(n={n}, k={k}, seed={seed}) under {disc} differs at {}",
                        graph.vertex_name(x)
                    );
                    pairs += 1;
                }
            }
        }
    }
    println!(
        "{instances} graphs x {} grammars x 3 disciplines: {pairs} answers agree",
        names.len()
    );
    Ok(())
}
