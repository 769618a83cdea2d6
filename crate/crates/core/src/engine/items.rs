use std::collections::{HashMap, HashSet};

use crate::grammar::{ProductionId, SymbolId};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    /// `°`
    Unprocessed,
    /// `•`
    Processed,
}

impl Mark {
    pub fn symbol(self) -> char {
        match self {
            Mark::Unprocessed => '°',
            Mark::Processed => '•',
        }
    }
}

/// Vertices occupying one slot of a trace item, each with its mark.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositionSet {
    entries: HashMap<VertexId, Mark>,
}

impl PositionSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Marked union with `{x°}`: a vertex already present keeps its mark,
    /// an absent one is added unprocessed. Returns whether `x` was added.
    pub fn marked_union(&mut self, x: VertexId) -> bool {
        match self.entries.entry(x) {
            std::collections::hash_map::Entry::Occupied(_) => false,
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(Mark::Unprocessed);
                true
            }
        }
    }

    /// `°` to `•`. Returns false if `x` was absent or already processed.
    pub fn mark_processed(&mut self, x: VertexId) -> bool {
        match self.entries.get_mut(&x) {
            Some(m @ Mark::Unprocessed) => {
                *m = Mark::Processed;
                true
            }
            _ => false,
        }
    }

    pub fn mark(&self, x: VertexId) -> Option<Mark> {
        self.entries.get(&x).copied()
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.entries.contains_key(&x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ascending by vertex id.
    pub fn sorted(&self) -> Vec<(VertexId, Mark)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&x, &m)| (x, m)).collect();
        v.sort_unstable_by_key(|&(x, _)| x);
        v
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.entries.keys().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemId(pub(crate) u32);

impl ItemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A production `A -> α1 … αn` with position sets `C0 … Cn`. `C0` is the
/// singleton `{origin}`.
#[derive(Clone, Debug)]
pub struct TraceItem {
    pub production: ProductionId,
    pub origin: VertexId,
    pub sets: Vec<PositionSet>,
}

impl TraceItem {
    pub(crate) fn new(production: ProductionId, origin: VertexId, rhs_len: usize) -> Self {
        let mut sets = vec![PositionSet::new(); rhs_len + 1];
        sets[0].marked_union(origin);
        TraceItem {
            production,
            origin,
            sets,
        }
    }

    pub fn is_settled(&self) -> bool {
        self.sets
            .iter()
            .all(|c| c.entries.values().all(|&m| m == Mark::Processed))
    }
}

/// The set of trace items plus the two indexes the worklist loop needs.
#[derive(Clone, Debug, Default)]
pub struct ItemStore {
    pub(crate) items: Vec<TraceItem>,
    pub(crate) spawned: HashSet<(SymbolId, VertexId)>,
    /// `(w, A)` -> slots `(item, j)` where `w` is processed in `C(j-1)` and
    /// the symbol before `Cj` is `A`.
    pub(crate) waiters: HashMap<(VertexId, SymbolId), Vec<(ItemId, usize)>>,
}

impl ItemStore {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: ItemId) -> &TraceItem {
        &self.items[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ItemId, &TraceItem)> {
        self.items
            .iter()
            .enumerate()
            .map(|(i, it)| (ItemId(i as u32), it))
    }

    pub fn is_spawned(&self, a: SymbolId, x: VertexId) -> bool {
        self.spawned.contains(&(a, x))
    }

    pub fn spawned_pairs(&self) -> impl Iterator<Item = (SymbolId, VertexId)> + '_ {
        self.spawned.iter().copied()
    }

    pub fn waiters(&self, w: VertexId, a: SymbolId) -> &[(ItemId, usize)] {
        self.waiters.get(&(w, a)).map_or(&[], Vec::as_slice)
    }

    /// Total entries over all position sets.
    pub fn position_entries(&self) -> usize {
        self.items
            .iter()
            .flat_map(|it| &it.sets)
            .map(PositionSet::len)
            .sum()
    }
}
