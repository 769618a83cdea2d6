use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::items::ItemId;
use crate::graph::VertexId;

/// Order in which pending unprocessed vertices are picked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Discipline {
    #[default]
    Fifo,
    Lifo,
    Random {
        seed: u64,
    },
}

impl Discipline {
    pub fn all(seed: u64) -> [Discipline; 3] {
        [
            Discipline::Fifo,
            Discipline::Lifo,
            Discipline::Random { seed },
        ]
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discipline::Fifo => f.write_str("fifo"),
            Discipline::Lifo => f.write_str("lifo"),
            Discipline::Random { seed } => write!(f, "random({seed})"),
        }
    }
}

impl FromStr for Discipline {
    type Err = String;

    /// `fifo`, `lifo`, `random` (seed 0) or `random:SEED`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fifo" => Ok(Discipline::Fifo),
            "lifo" => Ok(Discipline::Lifo),
            "random" => Ok(Discipline::Random { seed: 0 }),
            _ => match s.strip_prefix("random:").map(str::parse) {
                Some(Ok(seed)) => Ok(Discipline::Random { seed }),
                _ => Err(format!(
                    "unknown discipline `{s}` (fifo|lifo|random[:SEED])"
                )),
            },
        }
    }
}

/// An unprocessed vertex `vertex` in position set `position` of `item`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Task {
    pub item: ItemId,
    pub position: usize,
    pub vertex: VertexId,
}

#[derive(Debug)]
pub struct Worklist {
    pending: VecDeque<Task>,
    discipline: Discipline,
    rng: ChaCha8Rng,
}

impl Worklist {
    pub fn new(discipline: Discipline) -> Self {
        let seed = match discipline {
            Discipline::Random { seed } => seed,
            _ => 0,
        };
        Worklist {
            pending: VecDeque::new(),
            discipline,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn push(&mut self, task: Task) {
        self.pending.push_back(task);
    }

    pub fn pop(&mut self) -> Option<Task> {
        match self.discipline {
            Discipline::Fifo => self.pending.pop_front(),
            Discipline::Lifo => self.pending.pop_back(),
            Discipline::Random { .. } => {
                if self.pending.is_empty() {
                    return None;
                }
                let n = self.pending.len() as u128;
                let i = ((self.rng.next_u64() as u128 * n) >> 64) as usize;
                self.pending.swap_remove_back(i)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }
}
