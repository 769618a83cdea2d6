//! Work counters as graphs grow: pops on complete graphs with the dense
//! grammar, and ambiguous vs unambiguous grammars on `a^n b^n` chains.
//!
//!     cargo run --release --example scaling

use std::time::Instant;

use cfpq::graph::{gen_ablist, gen_complete};
use cfpq::{evaluate, grammars, Discipline, Query};

fn main() -> anyhow::Result<()> {
    let dense = grammars::builtin("dense").expect("built-in")?;
    println!(
        "{:>5} {:>10} {:>12} {:>10}",
        "n", "pops", "3n^2+2n", "ratio"
    );
    let mut last = None;
    for n in [10, 20, 40, 80, 160] {
        let g = gen_complete(n, &["s"]);
        let r = evaluate(
            &dense,
            &g,
            &Query::all_vertices(&g, dense.start()),
            Discipline::Fifo,
        )?;
        let ratio = last.map_or(String::from("-"), |p: usize| {
            format!("{:.3}", r.stats.pops as f64 / p as f64)
        });
        println!(
            "{n:>5} {:>10} {:>12} {ratio:>10}",
            r.stats.pops,
            3 * n * n + 2 * n
        );
        last = Some(r.stats.pops);
    }

    println!(
        "\n{:>5} {:>14} {:>14} {:>8}",
        "n", "ambiguous ms", "unambig. ms", "answers"
    );
    let amb = grammars::builtin("ab_ambiguous").expect("built-in")?;
    let unamb = grammars::builtin("ab_unambiguous").expect("built-in")?;
    for n in [10, 50, 100, 200] {
        let g = gen_ablist(n);
        let time = |grammar| -> anyhow::Result<(f64, String)> {
            let t = Instant::now();
            let r = evaluate(
                grammar,
                &g,
                &Query::all_vertices(&g, grammar.start()),
                Discipline::Fifo,
            )?;
            Ok((t.elapsed().as_secs_f64() * 1e3, r.results_tsv(grammar)))
        };
        let (ta, ra) = time(&amb)?;
        let (tu, ru) = time(&unamb)?;
        anyhow::ensure!(ra == ru, "answers differ on ablist({n})");
        println!("{n:>5} {ta:>14.2} {tu:>14.2} {:>8}", ra.lines().count());
    }
    Ok(())
}
