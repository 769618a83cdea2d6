//! Every synthetic graph family, printed as triple TSV. The Barabási graph
//! is reproducible from its seed.
//!
//!     cargo run --example generators

use cfpq::graph::{gen_ablist, gen_barabasi, gen_complete, gen_cycle, gen_string};

fn main() -> anyhow::Result<()> {
    let families = [
        ("complete(3, {s})", gen_complete(3, &["s"])),
        ("cycle(4, s)", gen_cycle(4, "s")),
        ("string(4, s)", gen_string(4, "s")),
        ("ablist(2)", gen_ablist(2)),
        (
            "barabasi(8, 2, seed 42)",
            gen_barabasi(8, 2, 42, &["a", "b", "c", "d"])?,
        ),
    ];
    for (name, g) in &families {
        println!(
            "# {name}: {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        );
        print!("{}", g.to_tsv());
        println!();
    }
    let again = gen_barabasi(8, 2, 42, &["a", "b", "c", "d"])?;
    assert_eq!(again.to_tsv(), families[4].1.to_tsv());
    println!("barabasi output is identical when regenerated from the same seed");
    Ok(())
}
