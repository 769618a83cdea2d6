//! Edge-labeled directed graphs stored as a set of triples, indexed by
//! `(source, label)` for successor lookup.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

mod generators;
mod ntriples;

pub use generators::{
    gen_ablist, gen_barabasi, gen_complete, gen_cycle, gen_string, GeneratorError,
};
pub use ntriples::load_ntriples;

/// Suffix appended to a predicate to spell its materialized inverse.
pub const INVERSE_SUFFIX: &str = "^-1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected 3 tab-separated fields, found {found}")]
    MalformedTriple { line: usize, found: usize },
    #[error("line {line}: cannot parse N-Triples statement: {reason}")]
    MalformedStatement { line: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(u32);

impl LabelId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub source: VertexId,
    pub label: LabelId,
    pub target: VertexId,
}

#[derive(Clone, Debug, Default)]
struct Interner {
    names: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl Interner {
    fn get(&self, name: &str) -> Option<u32> {
        self.lookup.get(name).copied()
    }

    fn intern(&mut self, name: &str) -> u32 {
        if let Some(id) = self.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        id
    }
}

/// A set of labeled triples over densely numbered vertices.
///
/// Vertex and label spellings live in side tables; ids are assigned in
/// first-appearance order. A spelling may be used both as a vertex name and
/// as a label without the two being related.
#[derive(Clone, Debug, Default)]
pub struct DataGraph {
    vertices: Interner,
    labels: Interner,
    succ: HashMap<(VertexId, LabelId), BTreeSet<VertexId>>,
    edge_count: usize,
}

impl DataGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with vertices named `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label_count(&self) -> usize {
        self.labels.names.len()
    }

    pub fn add_vertex(&mut self, name: &str) -> VertexId {
        VertexId(self.vertices.intern(name))
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.get(name).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices.names[v.index()]
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn intern_label(&mut self, name: &str) -> LabelId {
        LabelId(self.labels.intern(name))
    }

    pub fn label(&self, name: &str) -> Option<LabelId> {
        self.labels.get(name).map(LabelId)
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.labels.names[l.index()]
    }

    pub fn label_ids(&self) -> impl Iterator<Item = LabelId> {
        (0..self.label_count() as u32).map(LabelId)
    }

    /// Inserts a triple; returns whether it was absent.
    pub fn add_edge(&mut self, source: VertexId, label: LabelId, target: VertexId) -> bool {
        debug_assert!(source.index() < self.vertex_count() && target.index() < self.vertex_count());
        debug_assert!(label.index() < self.label_count());
        let inserted = self.succ.entry((source, label)).or_default().insert(target);
        if inserted {
            self.edge_count += 1;
        }
        inserted
    }

    pub fn add_triple(&mut self, t: Triple) -> bool {
        self.add_edge(t.source, t.label, t.target)
    }

    /// Interns both endpoints and the label, then inserts.
    pub fn add_named(&mut self, source: &str, label: &str, target: &str) -> bool {
        let s = self.add_vertex(source);
        let t = self.add_vertex(target);
        let l = self.intern_label(label);
        self.add_edge(s, l, t)
    }

    pub fn contains(&self, source: VertexId, label: LabelId, target: VertexId) -> bool {
        self.succ
            .get(&(source, label))
            .is_some_and(|s| s.contains(&target))
    }

    /// Targets of `label`-edges leaving `x`, ascending by id.
    pub fn successors(&self, x: VertexId, label: LabelId) -> impl Iterator<Item = VertexId> + '_ {
        self.succ.get(&(x, label)).into_iter().flatten().copied()
    }

    pub fn successor_set(&self, x: VertexId, label: LabelId) -> Option<&BTreeSet<VertexId>> {
        self.succ.get(&(x, label))
    }

    pub fn successors_named(&self, x: &str, label: &str) -> Vec<&str> {
        match (self.vertex(x), self.label(label)) {
            (Some(x), Some(l)) => self.successors(x, l).map(|v| self.vertex_name(v)).collect(),
            _ => Vec::new(),
        }
    }

    /// All triples sorted by `(source, label, target)` id.
    pub fn triples(&self) -> Vec<Triple> {
        let mut out: Vec<Triple> = self
            .succ
            .iter()
            .flat_map(|(&(source, label), targets)| {
                targets.iter().map(move |&target| Triple {
                    source,
                    label,
                    target,
                })
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn out_degree(&self, x: VertexId) -> usize {
        self.label_ids()
            .map(|l| self.succ.get(&(x, l)).map_or(0, BTreeSet::len))
            .sum()
    }

    /// Triple TSV, one `subject\tpredicate\tobject` line per triple, in id order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for t in self.triples() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}",
                self.vertex_name(t.source),
                self.label_name(t.label),
                self.vertex_name(t.target)
            );
        }
        out
    }
}

/// Reads 3-column TSV triples. Blank lines are skipped. With
/// `add_inverses`, every `(s, p, o)` also yields `(o, p^-1, s)`.
pub fn load_triples(text: &str, add_inverses: bool) -> Result<DataGraph, GraphError> {
    let mut g = DataGraph::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(GraphError::MalformedTriple {
                line: i + 1,
                found: fields.len(),
            });
        }
        insert_with_inverse(&mut g, fields[0], fields[1], fields[2], add_inverses);
    }
    Ok(g)
}

pub(crate) fn insert_with_inverse(
    g: &mut DataGraph,
    s: &str,
    p: &str,
    o: &str,
    add_inverses: bool,
) {
    g.add_named(s, p, o);
    if add_inverses {
        g.add_named(o, &format!("{p}{INVERSE_SUFFIX}"), s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE_TSV: &str = "1\ta\t2\n1\ta\t3\n2\tb\t3\n3\ta\t1\n3\tb\t4\n";

    #[test]
    fn loads_example_graph() {
        let g = load_triples(EXAMPLE_TSV, false).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.successors_named("1", "a"), ["2", "3"]);
        assert!(g.successors_named("2", "a").is_empty());
        assert_eq!(g.successors_named("3", "b"), ["4"]);
        assert_eq!(g.vertex("1"), Some(VertexId(0)));
    }

    #[test]
    fn inverse_materialization() {
        let g = load_triples("x\tsubClassOf\ty\n", true).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.successors_named("x", "subClassOf"), ["y"]);
        assert_eq!(g.successors_named("y", "subClassOf^-1"), ["x"]);
    }

    #[test]
    fn duplicate_lines_collapse() {
        let g = load_triples("x\tp\ty\nx\tp\ty\n\n", false).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn wrong_field_count() {
        assert_eq!(
            load_triples("x\ta\n", false).unwrap_err(),
            GraphError::MalformedTriple { line: 1, found: 2 }
        );
        assert!(load_triples("a\tb\tc\td\n", false).is_err());
    }

    #[test]
    fn add_edge_is_idempotent() {
        let mut g = load_triples(EXAMPLE_TSV, false).unwrap();
        let s = g.intern_label("S");
        let v = |g: &DataGraph, n: &str| g.vertex(n).unwrap();
        let (one, two, three) = (v(&g, "1"), v(&g, "2"), v(&g, "3"));
        assert!(g.add_edge(two, s, two));
        assert!(!g.add_edge(two, s, two));
        assert!(g.add_edge(one, s, three));
        assert_eq!(g.successors(one, s).collect::<Vec<_>>(), [three]);
        assert_eq!(g.edge_count(), 7);
    }

    #[test]
    fn unknown_label_has_no_successors() {
        let g = load_triples(EXAMPLE_TSV, false).unwrap();
        assert!(g.successors_named("1", "zzz").is_empty());
    }

    #[test]
    fn tsv_round_trip() {
        let g = load_triples(EXAMPLE_TSV, false).unwrap();
        assert_eq!(g.to_tsv(), EXAMPLE_TSV);
    }

    #[test]
    fn vertex_and_label_may_share_spelling() {
        let g = load_triples("a\ta\ta\n", false).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.successors_named("a", "a"), ["a"]);
    }
}
