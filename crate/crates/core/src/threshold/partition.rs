//! Partition and join properties of a pair `(G, H)`.

use std::collections::HashMap;

use serde::Serialize;

use super::Status;
use crate::bits::{bit, to_vec};
use crate::budget::{Budget, Exhausted, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{find_subgraph_with_budget, Graph};

/// Largest `v(g)` for which partitions are enumerated by default.
pub const DEFAULT_PARTITION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionVerdict {
    pub status: Status,
    /// A partition none of whose parts contains `h` (for `Failed`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Vec<usize>>>,
    /// Number of set partitions examined.
    pub partitions: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Does every partition of `V(g)` into `k` possibly empty parts have a part
/// whose induced subgraph contains `h`?
pub fn check_partition_property(g: &Graph, h: &Graph, k: usize) -> Result<PartitionVerdict> {
    check_partition_property_with(g, h, k, DEFAULT_PARTITION_CAP, &mut Budget::default())
}

pub fn check_partition_property_with(
    g: &Graph,
    h: &Graph,
    k: usize,
    cap: usize,
    budget: &mut Budget,
) -> Result<PartitionVerdict> {
    if k < 2 {
        return Err(Error::Parameter(format!("partition property needs k >= 2, got {k}")));
    }
    if g.n() > cap {
        return Ok(PartitionVerdict {
            status: Status::Unknown,
            counterexample: None,
            partitions: 0,
            note: Some(format!("{} vertices exceed the partition cap {cap}", g.n())),
        });
    }
    let mut search = PartitionSearch {
        g,
        h,
        k,
        blocks: vec![0; k],
        cache: HashMap::new(),
        budget,
        count: 0,
    };
    match search.run(0, 0) {
        Ok(None) => Ok(PartitionVerdict {
            status: Status::Verified,
            counterexample: None,
            partitions: search.count,
            note: None,
        }),
        Ok(Some(blocks)) => Ok(PartitionVerdict {
            status: Status::Failed,
            counterexample: Some(blocks.into_iter().map(to_vec).collect()),
            partitions: search.count,
            note: None,
        }),
        Err(e) => Ok(PartitionVerdict {
            status: Status::Unknown,
            counterexample: None,
            partitions: search.count,
            note: Some(format!("embedding budget of {} nodes exhausted", e.budget)),
        }),
    }
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    k: usize,
    blocks: Vec<u64>,
    cache: HashMap<u64, bool>,
    budget: &'a mut Budget,
    count: u64,
}

impl PartitionSearch<'_> {
    /// Restricted growth strings: vertex `v` joins a used block or opens the next one.
    fn run(&mut self, v: usize, used: usize) -> std::result::Result<Option<Vec<u64>>, Exhausted> {
        if v == self.g.n() {
            self.count += 1;
            for i in 0..self.k {
                if self.contains_h(self.blocks[i])? {
                    return Ok(None);
                }
            }
            return Ok(Some(self.blocks.clone()));
        }
        let open = (used + 1).min(self.k);
        for b in 0..open {
            self.blocks[b] |= bit(v);
            let r = self.run(v + 1, used.max(b + 1));
            self.blocks[b] &= !bit(v);
            if let Some(found) = r? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn contains_h(&mut self, mask: u64) -> std::result::Result<bool, Exhausted> {
        if (mask.count_ones() as usize) < self.h.n() || self.g.edges_within(mask) < self.h.edge_count() {
            return Ok(false);
        }
        if let Some(&known) = self.cache.get(&mask) {
            return Ok(known);
        }
        let hit = match find_subgraph_with_budget(&self.g.induced_mask(mask), self.h, self.budget) {
            SearchOutcome::Found(_) => true,
            SearchOutcome::Absent => false,
            SearchOutcome::Unknown { budget } => return Err(Exhausted { budget }),
        };
        self.cache.insert(mask, hit);
        Ok(hit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinVerdict {
    pub status: Status,
    /// Embedding of `g` into the join; copy `i` of `h` occupies vertices
    /// `i * v(h) .. (i + 1) * v(h)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Join of `k` disjoint copies of `h`.
pub fn join_power(h: &Graph, k: usize) -> Result<Graph> {
    if k * h.n() > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: k * h.n(),
            max: crate::graph::MAX_VERTICES,
        });
    }
    let mut acc = Graph::empty(0)?;
    for _ in 0..k {
        acc = acc.join(h)?;
    }
    Ok(acc)
}

/// Does `g` embed into the join of `k` copies of `h`?
pub fn check_join_property(g: &Graph, h: &Graph, k: usize) -> Result<JoinVerdict> {
    if k < 2 {
        return Err(Error::Parameter(format!("join property needs k >= 2, got {k}")));
    }
    let host = join_power(h, k)?;
    Ok(match find_subgraph_with_budget(&host, g, &mut Budget::default()) {
        SearchOutcome::Found(e) => JoinVerdict {
            status: Status::Verified,
            embedding: Some(e.map),
            note: None,
        },
        SearchOutcome::Absent => JoinVerdict {
            status: Status::Failed,
            embedding: None,
            note: None,
        },
        SearchOutcome::Unknown { budget } => JoinVerdict {
            status: Status::Unknown,
            embedding: None,
            note: Some(format!("embedding budget of {budget} nodes exhausted")),
        },
    })
}
