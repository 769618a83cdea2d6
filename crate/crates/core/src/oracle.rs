//! Brute-force reference evaluator.
//!
//! Computes, for every nonterminal, its whole reachability relation over
//! `V × V` by naive bottom-up iteration: each pass rebuilds every
//! nonterminal's relation from scratch as the union, over its productions,
//! of the sequential composition of the right-hand side relations (the
//! identity for an empty right-hand side), reading the previous pass. It
//! stops at the first pass that changes nothing. Terminal relations are the
//! labeled edges of the input graph. Nothing here shares code with the
//! worklist engine.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::grammar::{Grammar, SymbolId};
use crate::graph::{DataGraph, VertexId};

pub const DEFAULT_TRIPLE_BUDGET: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {triples} triples, over the oracle budget of {budget}")]
    SizeGuardExceeded { triples: usize, budget: usize },
    #[error("unknown nonterminal `{0}`")]
    UnknownNonterminal(String),
}

/// A binary relation over `0..n`, stored as one image set per source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<BTreeSet<VertexId>>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![BTreeSet::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            rows: (0..n as u32)
                .map(|i| BTreeSet::from([VertexId(i)]))
                .collect(),
        }
    }

    pub fn insert(&mut self, x: VertexId, y: VertexId) -> bool {
        self.rows[x.index()].insert(y)
    }

    pub fn contains(&self, x: VertexId, y: VertexId) -> bool {
        self.rows[x.index()].contains(&y)
    }

    pub fn image(&self, x: VertexId) -> &BTreeSet<VertexId> {
        &self.rows[x.index()]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(BTreeSet::is_empty)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (VertexId(x as u32), y)))
    }

    /// `self` followed by `next`: `{(x, z) | (x, y) ∈ self, (y, z) ∈ next}`.
    pub fn then(&self, next: &Relation) -> Relation {
        let rows = self
            .rows
            .iter()
            .map(|ys| {
                ys.iter()
                    .flat_map(|y| next.rows[y.index()].iter().copied())
                    .collect()
            })
            .collect();
        Relation { rows }
    }

    pub fn union_with(&mut self, other: &Relation) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.extend(b.iter().copied());
        }
    }

    pub fn is_superset(&self, other: &Relation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_superset(b))
    }
}

/// One relation per grammar symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    vertex_count: usize,
    relations: Vec<Relation>,
    passes: usize,
}

impl RelationTable {
    /// Terminal relations read off `graph`; nonterminal relations empty.
    pub fn seed(grammar: &Grammar, graph: &DataGraph) -> Self {
        let n = graph.vertex_count();
        let mut relations = vec![Relation::empty(n); grammar.symbol_count()];
        for t in graph.triples() {
            if let Some(s) = grammar.symbol(graph.label_name(t.label)) {
                if grammar.is_terminal(s) {
                    relations[s.index()].insert(t.source, t.target);
                }
            }
        }
        RelationTable {
            vertex_count: n,
            relations,
            passes: 0,
        }
    }

    /// One naive pass: every nonterminal relation recomputed from `self`.
    pub fn next_pass(&self, grammar: &Grammar) -> RelationTable {
        let mut next = self.clone();
        for a in grammar.nonterminals() {
            next.relations[a.index()] = Relation::empty(self.vertex_count);
        }
        for p in grammar.productions() {
            let derived = self.string_relation(&p.rhs);
            next.relations[p.lhs.index()].union_with(&derived);
        }
        next.passes = self.passes + 1;
        next
    }

    /// Relation of a symbol string, composed left to right from the identity.
    pub fn string_relation(&self, symbols: &[SymbolId]) -> Relation {
        symbols
            .iter()
            .fold(Relation::identity(self.vertex_count), |acc, s| {
                acc.then(&self.relations[s.index()])
            })
    }

    /// Vertices reachable from `x` along an `symbols`-derivable path.
    pub fn reach(&self, x: VertexId, symbols: &[SymbolId]) -> BTreeSet<VertexId> {
        let mut frontier = BTreeSet::from([x]);
        for s in symbols {
            let rel = &self.relations[s.index()];
            frontier = frontier
                .iter()
                .flat_map(|y| rel.image(*y).iter().copied())
                .collect();
        }
        frontier
    }

    pub fn relation(&self, s: SymbolId) -> &Relation {
        &self.relations[s.index()]
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
}

pub fn fixpoint_relations(
    grammar: &Grammar,
    graph: &DataGraph,
) -> Result<RelationTable, OracleError> {
    fixpoint_relations_with_budget(grammar, graph, DEFAULT_TRIPLE_BUDGET)
}

pub fn fixpoint_relations_with_budget(
    grammar: &Grammar,
    graph: &DataGraph,
    budget: usize,
) -> Result<RelationTable, OracleError> {
    if graph.edge_count() > budget {
        return Err(OracleError::SizeGuardExceeded {
            triples: graph.edge_count(),
            budget,
        });
    }
    let mut table = RelationTable::seed(grammar, graph);
    loop {
        let next = table.next_pass(grammar);
        if next.relations == table.relations {
            return Ok(next);
        }
        table = next;
    }
}

/// `{y | (x, y) ∈ relation[a]}`.
pub fn oracle_eval(
    table: &RelationTable,
    grammar: &Grammar,
    x: VertexId,
    a: SymbolId,
) -> Result<BTreeSet<VertexId>, OracleError> {
    if a.index() >= grammar.symbol_count() || !grammar.is_nonterminal(a) {
        return Err(OracleError::UnknownNonterminal(format!("#{}", a.index())));
    }
    Ok(table.relation(a).image(x).clone())
}
