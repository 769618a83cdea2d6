//! Context-free path queries over edge-labeled directed graphs.
//!
//! A query pairs start vertices with grammar nonterminals; its answer is
//! every vertex reachable along a path whose label sequence the
//! nonterminal derives. [`engine`] evaluates queries with a trace-item
//! worklist, [`oracle`] is an independent naive fixpoint used to check it,
//! and [`graph`] holds the triple store, loaders and synthetic generators.
//!
//! ```
//! use cfpq::{evaluate, load_triples, Discipline, Grammar, Query};
//!
//! let grammar = Grammar::parse("S -> a S b |").unwrap();
//! let graph = load_triples("1\ta\t2\n1\ta\t3\n2\tb\t3\n3\ta\t1\n3\tb\t4\n", false).unwrap();
//! let query = Query::resolve(&grammar, &graph, &[("1", "S"), ("3", "S")]).unwrap();
//! let result = evaluate(&grammar, &graph, &query, Discipline::Fifo).unwrap();
//! assert_eq!(result.results_tsv(&grammar), "1\tS\t1\n1\tS\t3\n1\tS\t4\n3\tS\t3\n3\tS\t4\n");
//! ```

pub mod cli;
pub mod engine;
pub mod grammar;
pub mod grammars;
pub mod graph;
pub mod oracle;

pub use engine::{evaluate, Discipline, EvalResult, Evaluator, Query, Stats};
pub use grammar::{Grammar, GrammarError, SymbolId};
pub use graph::{load_ntriples, load_triples, DataGraph, VertexId};
pub use oracle::{fixpoint_relations, oracle_eval, RelationTable};
