//! Trace-item worklist evaluation of context-free path queries.
//!
//! Every query pair `(w, A)` seeds one trace item per production of `A`
//! with `C0 = {w°}`. The loop repeatedly picks an unprocessed vertex `x` in
//! some `C(j)` of an item `A -> α1 … αn`:
//!
//! * `j < n`: if `α(j+1)` is a terminal, or a nonterminal already spawned at
//!   `x`, every `y` with `(x, α(j+1), y)` in the result graph is merged into
//!   `C(j+1)`. Otherwise items for `α(j+1)` are spawned with origin `x`.
//! * `j = n`: the edge `(w, A, x)` is added to the result graph, and `x` is
//!   merged into every slot waiting on `(w, A)`.
//!
//! Then `x` is marked processed. Slots waiting on `(w, A)` are recorded at
//! the moment `w` is marked processed right before an `A`, so a completion
//! reaches exactly the sets that follow a processed `w`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::grammar::{Grammar, ProductionId, SymbolId};
use crate::graph::{DataGraph, LabelId, VertexId};

mod items;
mod worklist;

pub use items::{ItemId, ItemStore, Mark, PositionSet, TraceItem};
pub use worklist::{Discipline, Task, Worklist};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("unknown nonterminal `{0}`")]
    UnknownNonterminal(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid query pairs: {}", .0.join(", "))]
    InvalidQuery(Vec<String>),
    #[error("graph label `{0}` collides with a grammar nonterminal")]
    LabelCollision(String),
}

/// A set of `(start vertex, nonterminal)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pairs: BTreeSet<(VertexId, SymbolId)>,
}

impl Query {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: VertexId, a: SymbolId) -> bool {
        self.pairs.insert((v, a))
    }

    /// Every vertex of `graph` paired with `a`.
    pub fn all_vertices(graph: &DataGraph, a: SymbolId) -> Self {
        Query {
            pairs: graph.vertex_ids().map(|v| (v, a)).collect(),
        }
    }

    /// Resolves `(vertex name, nonterminal name)` pairs, reporting every
    /// offending pair at once.
    pub fn resolve<V: AsRef<str>, N: AsRef<str>>(
        grammar: &Grammar,
        graph: &DataGraph,
        pairs: &[(V, N)],
    ) -> Result<Self, EngineError> {
        let mut q = Query::new();
        let mut bad = Vec::new();
        for (v, a) in pairs {
            let (v, a) = (v.as_ref(), a.as_ref());
            match (graph.vertex(v), grammar.nonterminal(a)) {
                (Some(x), Ok(n)) => {
                    q.insert(x, n);
                }
                (None, Ok(_)) => bad.push(format!("({v}, {a}): unknown vertex")),
                (Some(_), Err(_)) => bad.push(format!("({v}, {a}): unknown nonterminal")),
                (None, Err(_)) => bad.push(format!("({v}, {a}): unknown vertex and nonterminal")),
            }
        }
        if bad.is_empty() {
            Ok(q)
        } else {
            Err(EngineError::InvalidQuery(bad))
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, SymbolId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Counters collected during one evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub vertices: usize,
    pub productions: usize,
    pub max_rhs_len: usize,
    pub items_created: usize,
    pub spawns: usize,
    pub pops: usize,
    /// Vertices merged into `C1 … Cn` (seeded `C0`s not included).
    pub insertions: usize,
    pub notifications: usize,
    pub edges_added: usize,
}

impl Stats {
    /// `|V|·|P|`
    pub fn item_bound(&self) -> usize {
        self.vertices * self.productions
    }

    /// `|V|²·|P|·(k+1)`
    pub fn pop_bound(&self) -> usize {
        self.vertices * self.vertices * self.productions * (self.max_rhs_len + 1)
    }

    pub fn check_bounds(&self) -> Result<(), String> {
        if self.items_created > self.item_bound() {
            return Err(format!(
                "items_created {} > |V|·|P| = {}",
                self.items_created,
                self.item_bound()
            ));
        }
        if self.pops > self.pop_bound() {
            return Err(format!(
                "pops {} > |V|²·|P|·(k+1) = {}",
                self.pops,
                self.pop_bound()
            ));
        }
        Ok(())
    }

    pub fn key_values(&self) -> [(&'static str, usize); 9] {
        [
            ("vertices", self.vertices),
            ("productions", self.productions),
            ("max_rhs_len", self.max_rhs_len),
            ("items_created", self.items_created),
            ("spawns", self.spawns),
            ("pops", self.pops),
            ("insertions", self.insertions),
            ("notifications", self.notifications),
            ("edges_added", self.edges_added),
        ]
    }
}

/// Instrumentation emitted while the loop runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    Spawned {
        item: ItemId,
        origin: VertexId,
    },
    Inserted {
        item: ItemId,
        position: usize,
        vertex: VertexId,
    },
    Processed {
        item: ItemId,
        position: usize,
        vertex: VertexId,
    },
    EdgeAdded {
        source: VertexId,
        nonterminal: SymbolId,
        target: VertexId,
    },
}

pub struct Evaluator<'g> {
    grammar: &'g Grammar,
    dprime: DataGraph,
    /// Result-graph label of each grammar symbol, `None` for terminals the
    /// graph never uses.
    labels: Vec<Option<LabelId>>,
    store: ItemStore,
    worklist: Worklist,
    stats: Stats,
    query: Query,
}

impl<'g> Evaluator<'g> {
    /// Builds the initial item set from `query` and copies `graph` into the
    /// result graph.
    pub fn new(
        grammar: &'g Grammar,
        graph: &DataGraph,
        query: &Query,
        discipline: Discipline,
    ) -> Result<Self, EngineError> {
        for (v, a) in query.pairs() {
            if a.index() >= grammar.symbol_count() || !grammar.is_nonterminal(a) {
                return Err(EngineError::UnknownNonterminal(format!("#{}", a.index())));
            }
            if v.index() >= graph.vertex_count() {
                return Err(EngineError::UnknownVertex(format!("#{}", v.index())));
            }
        }
        let mut dprime = graph.clone();
        let mut labels = Vec::with_capacity(grammar.symbol_count());
        for s in grammar.symbols() {
            let name = grammar.name(s);
            if grammar.is_nonterminal(s) {
                if graph.label(name).is_some() {
                    return Err(EngineError::LabelCollision(name.to_string()));
                }
                labels.push(Some(dprime.intern_label(name)));
            } else {
                labels.push(dprime.label(name));
            }
        }
        let stats = Stats {
            vertices: graph.vertex_count(),
            productions: grammar.productions().len(),
            max_rhs_len: grammar.max_rhs_len(),
            ..Stats::default()
        };
        let mut ev = Evaluator {
            grammar,
            dprime,
            labels,
            store: ItemStore::default(),
            worklist: Worklist::new(discipline),
            stats,
            query: query.clone(),
        };
        for (w, a) in query.pairs() {
            if !ev.store.is_spawned(a, w) {
                ev.spawn(a, w, &mut |_| {});
            }
        }
        Ok(ev)
    }

    fn spawn(&mut self, a: SymbolId, x: VertexId, obs: &mut dyn FnMut(&Event)) {
        let fresh = self.store.spawned.insert((a, x));
        debug_assert!(
            fresh,
            "items for a (nonterminal, vertex) pair are spawned once"
        );
        self.stats.spawns += 1;
        for &p in self.grammar.production_ids(a) {
            let id = ItemId(self.store.items.len() as u32);
            let rhs_len = self.grammar.production(p).rhs.len();
            self.store.items.push(TraceItem::new(p, x, rhs_len));
            self.stats.items_created += 1;
            self.worklist.push(Task {
                item: id,
                position: 0,
                vertex: x,
            });
            obs(&Event::Spawned {
                item: id,
                origin: x,
            });
        }
    }

    /// Processes unprocessed vertex `x` of position set `position` in `item`.
    /// Returns false, doing nothing, when `x` is not unprocessed there.
    pub fn process(&mut self, item: ItemId, position: usize, x: VertexId) -> bool {
        self.process_observed(
            Task {
                item,
                position,
                vertex: x,
            },
            &mut |_| {},
        )
    }

    fn process_observed(&mut self, task: Task, obs: &mut dyn FnMut(&Event)) -> bool {
        let Task {
            item: id,
            position: j,
            vertex: x,
        } = task;
        let Some(it) = self.store.items.get(id.index()) else {
            return false;
        };
        if it.sets.get(j).and_then(|c| c.mark(x)) != Some(Mark::Unprocessed) {
            return false;
        }
        self.stats.pops += 1;
        let grammar = self.grammar;
        let origin = it.origin;
        let production = grammar.production(it.production);

        if let Some(&next) = production.rhs.get(j) {
            if grammar.is_terminal(next) || self.store.is_spawned(next, x) {
                let targets =
                    self.labels[next.index()].and_then(|l| self.dprime.successor_set(x, l));
                let set = &mut self.store.items[id.index()].sets[j + 1];
                for &y in targets.into_iter().flatten() {
                    if set.marked_union(y) {
                        self.stats.insertions += 1;
                        self.worklist.push(Task {
                            item: id,
                            position: j + 1,
                            vertex: y,
                        });
                        obs(&Event::Inserted {
                            item: id,
                            position: j + 1,
                            vertex: y,
                        });
                    }
                }
            } else {
                debug_assert!(
                    self.labels[next.index()]
                        .and_then(|l| self.dprime.successor_set(x, l))
                        .is_none_or(|s| s.is_empty()),
                    "nonterminal edges only come from completed items"
                );
                self.spawn(next, x, obs);
            }
            if grammar.is_nonterminal(next) {
                self.store
                    .waiters
                    .entry((x, next))
                    .or_default()
                    .push((id, j + 1));
            }
        } else {
            let a = production.lhs;
            let label = self.labels[a.index()].expect("nonterminal labels are interned");
            if self.dprime.add_edge(origin, label, x) {
                self.stats.edges_added += 1;
                obs(&Event::EdgeAdded {
                    source: origin,
                    nonterminal: a,
                    target: x,
                });
                for &(slot, k) in self.store.waiters.get(&(origin, a)).into_iter().flatten() {
                    self.stats.notifications += 1;
                    if self.store.items[slot.index()].sets[k].marked_union(x) {
                        self.stats.insertions += 1;
                        self.worklist.push(Task {
                            item: slot,
                            position: k,
                            vertex: x,
                        });
                        obs(&Event::Inserted {
                            item: slot,
                            position: k,
                            vertex: x,
                        });
                    }
                }
            }
        }

        self.store.items[id.index()].sets[j].mark_processed(x);
        obs(&Event::Processed {
            item: id,
            position: j,
            vertex: x,
        });
        true
    }

    /// Pops and processes the next pending vertex. `None` once the worklist
    /// is exhausted.
    pub fn step(&mut self) -> Option<Task> {
        self.step_observed(&mut |_| {})
    }

    fn step_observed(&mut self, obs: &mut dyn FnMut(&Event)) -> Option<Task> {
        while let Some(task) = self.worklist.pop() {
            // entries processed out of band through `process` are stale
            if self.process_observed(task, obs) {
                return Some(task);
            }
        }
        None
    }

    pub fn run(self) -> EvalResult {
        self.run_observed(|_| {})
    }

    pub fn run_observed(mut self, mut obs: impl FnMut(&Event)) -> EvalResult {
        while self.step_observed(&mut obs).is_some() {}
        self.finish()
    }

    fn finish(self) -> EvalResult {
        let mut answers = BTreeMap::new();
        for (x, a) in self.query.pairs() {
            let label = self.labels[a.index()].expect("nonterminal labels are interned");
            let targets = self
                .dprime
                .successor_set(x, label)
                .cloned()
                .unwrap_or_default();
            answers.insert((x, a), targets);
        }
        EvalResult {
            result_graph: self.dprime,
            answers,
            stats: self.stats,
            items: self.store,
            labels: self.labels,
        }
    }

    pub fn items(&self) -> &ItemStore {
        &self.store
    }

    pub fn result_graph(&self) -> &DataGraph {
        &self.dprime
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn pending(&self) -> usize {
        self.worklist.len()
    }

    /// The item built from `production` with origin `origin`, if spawned.
    pub fn find_item(&self, production: ProductionId, origin: VertexId) -> Option<ItemId> {
        self.store
            .iter()
            .find(|(_, it)| it.production == production && it.origin == origin)
            .map(|(id, _)| id)
    }

    pub fn render_item(&self, id: ItemId) -> String {
        render_item(self.grammar, &self.dprime, self.store.get(id))
    }
}

/// Canonical text of an item, e.g. `[S -> {1•} a {2•,3°} S {} b {}]`:
/// vertices ascending by id, `•` processed, `°` unprocessed.
pub fn render_item(grammar: &Grammar, graph: &DataGraph, item: &TraceItem) -> String {
    let production = grammar.production(item.production);
    let render_set = |c: &PositionSet| {
        let inner: Vec<String> = c
            .sorted()
            .into_iter()
            .map(|(v, m)| format!("{}{}", graph.vertex_name(v), m.symbol()))
            .collect();
        format!("{{{}}}", inner.join(","))
    };
    let mut out = format!(
        "[{} -> {}",
        grammar.name(production.lhs),
        render_set(&item.sets[0])
    );
    for (sym, set) in production.rhs.iter().zip(&item.sets[1..]) {
        out.push(' ');
        out.push_str(grammar.name(*sym));
        out.push(' ');
        out.push_str(&render_set(set));
    }
    out.push(']');
    out
}

/// Runs the worklist loop to its fixpoint.
pub fn evaluate(
    grammar: &Grammar,
    graph: &DataGraph,
    query: &Query,
    discipline: Discipline,
) -> Result<EvalResult, EngineError> {
    Ok(Evaluator::new(grammar, graph, query, discipline)?.run())
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    /// Input graph plus every derived nonterminal edge.
    pub result_graph: DataGraph,
    pub answers: BTreeMap<(VertexId, SymbolId), BTreeSet<VertexId>>,
    pub stats: Stats,
    pub items: ItemStore,
    labels: Vec<Option<LabelId>>,
}

impl EvalResult {
    pub fn answer(&self, x: VertexId, a: SymbolId) -> Option<&BTreeSet<VertexId>> {
        self.answers.get(&(x, a))
    }

    pub fn result_count(&self) -> usize {
        self.answers.values().map(BTreeSet::len).sum()
    }

    /// Canonical renderings of every final item, ordered by origin then
    /// production.
    pub fn final_items(&self, grammar: &Grammar) -> Vec<String> {
        let mut items: Vec<&TraceItem> = self.items.items.iter().collect();
        items.sort_by_key(|it| (it.origin, it.production));
        items
            .into_iter()
            .map(|it| render_item(grammar, &self.result_graph, it))
            .collect()
    }

    /// Nonterminal-labeled edges of the result graph as name triples.
    pub fn derived_edges(&self, grammar: &Grammar) -> BTreeSet<(String, String, String)> {
        let g = &self.result_graph;
        let mut out = BTreeSet::new();
        for a in grammar.nonterminals() {
            let Some(label) = self.labels[a.index()] else {
                continue;
            };
            for x in g.vertex_ids() {
                for y in g.successors(x, label) {
                    out.insert((
                        g.vertex_name(x).to_string(),
                        grammar.name(a).to_string(),
                        g.vertex_name(y).to_string(),
                    ));
                }
            }
        }
        out
    }

    /// Answer rows `source \t nonterminal \t target`, LF-terminated and
    /// sorted bytewise.
    pub fn results_tsv(&self, grammar: &Grammar) -> String {
        let g = &self.result_graph;
        let mut rows: Vec<String> = self
            .answers
            .iter()
            .flat_map(|(&(x, a), ys)| {
                ys.iter().map(move |&y| {
                    format!(
                        "{}\t{}\t{}\n",
                        g.vertex_name(x),
                        grammar.name(a),
                        g.vertex_name(y)
                    )
                })
            })
            .collect();
        rows.sort_unstable();
        rows.concat()
    }
}
