//! Chromatic number and the sparse-partite embedding condition.

use serde::Serialize;

use super::Status;
use crate::bits::{bit, iter_bits};
use crate::budget::{Bounded, Budget, Exhausted};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CHROMATIC_CAP: usize = 20;
pub const SPARSE_PARTITE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub chromatic_number: usize,
    /// A proper colouring with `chromatic_number` colours.
    pub colors: Vec<usize>,
}

pub fn chromatic_number(g: &Graph) -> Result<Bounded<Coloring>> {
    chromatic_number_with_budget(g, &mut Budget::default())
}

pub fn chromatic_number_with_budget(g: &Graph, budget: &mut Budget) -> Result<Bounded<Coloring>> {
    if g.n() > CHROMATIC_CAP {
        return Err(Error::CapExceeded {
            what: "chromatic number",
            n: g.n(),
            cap: CHROMATIC_CAP,
        });
    }
    if g.n() == 0 {
        return Ok(Bounded::Done(Coloring {
            chromatic_number: 0,
            colors: vec![],
        }));
    }
    let greedy = greedy_coloring(g);
    let upper = greedy.iter().max().map_or(0, |c| c + 1);
    let lower = if g.edge_count() == 0 { 1 } else { 2 };
    let mut best = greedy;
    for c in lower..upper {
        let mut colors = vec![usize::MAX; g.n()];
        match color_with(g, c, &mut colors, 0, budget) {
            Ok(true) => {
                best = colors;
                break;
            }
            Ok(false) => {}
            Err(e) => return Ok(Bounded::Unknown { budget: e.budget }),
        }
    }
    let chromatic_number = best.iter().max().map_or(0, |c| c + 1);
    Ok(Bounded::Done(Coloring {
        chromatic_number,
        colors: best,
    }))
}

fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut colors = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        let mut used = 0u64;
        for u in iter_bits(g.neighbors(v)) {
            if colors[u] != usize::MAX {
                used |= bit(colors[u]);
            }
        }
        colors[v] = (!used).trailing_zeros() as usize;
    }
    colors
}

/// DSATUR-style backtracking: colour the vertex seeing the most colours.
fn color_with(g: &Graph, c: usize, colors: &mut [usize], done: usize, budget: &mut Budget) -> std::result::Result<bool, Exhausted> {
    if done == g.n() {
        return Ok(true);
    }
    budget.tick()?;
    let seen = |colors: &[usize], v: usize| {
        iter_bits(g.neighbors(v))
            .filter(|&u| colors[u] != usize::MAX)
            .fold(0u64, |m, u| m | bit(colors[u]))
    };
    let v = (0..g.n())
        .filter(|&v| colors[v] == usize::MAX)
        .max_by_key(|&v| (seen(colors, v).count_ones(), g.degree(v), std::cmp::Reverse(v)))
        .expect("uncoloured vertex remains");
    let blocked = seen(colors, v);
    let opened = colors.iter().filter(|&&x| x != usize::MAX).max().map_or(0, |m| m + 1);
    for col in 0..c.min(opened + 1) {
        if blocked & bit(col) != 0 {
            continue;
        }
        colors[v] = col;
        if color_with(g, c, colors, done + 1, budget)? {
            return Ok(true);
        }
    }
    colors[v] = usize::MAX;
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsePartiteVerdict {
    pub status: Status,
    /// Class of each vertex, `0..k-1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Can `V(g)` be split into `k - 1` classes, each inducing at most one edge,
/// with at most `k - 2` classes inducing an edge?
pub fn check_sparse_partite_embedding(g: &Graph, k: usize) -> Result<SparsePartiteVerdict> {
    if k < 2 {
        return Err(Error::Parameter(format!("sparse-partite check needs k >= 2, got {k}")));
    }
    if g.n() > SPARSE_PARTITE_CAP {
        return Ok(SparsePartiteVerdict {
            status: Status::Unknown,
            classes: None,
            note: Some(format!("{} vertices exceed the cap {SPARSE_PARTITE_CAP}", g.n())),
        });
    }
    let mut s = Sparse {
        g,
        classes: k - 1,
        max_edged: k - 2,
        masks: vec![0; k - 1],
        edges: vec![0; k - 1],
        assignment: vec![0; g.n()],
        budget: Budget::default(),
    };
    Ok(match s.run(0, 0) {
        Ok(true) => SparsePartiteVerdict {
            status: Status::Verified,
            classes: Some(s.assignment),
            note: None,
        },
        Ok(false) => SparsePartiteVerdict {
            status: Status::Failed,
            classes: None,
            note: None,
        },
        Err(e) => SparsePartiteVerdict {
            status: Status::Unknown,
            classes: None,
            note: Some(format!("budget of {} nodes exhausted", e.budget)),
        },
    })
}

struct Sparse<'a> {
    g: &'a Graph,
    classes: usize,
    max_edged: usize,
    masks: Vec<u64>,
    edges: Vec<usize>,
    assignment: Vec<usize>,
    budget: Budget,
}

impl Sparse<'_> {
    fn run(&mut self, v: usize, used: usize) -> std::result::Result<bool, Exhausted> {
        if v == self.g.n() {
            return Ok(true);
        }
        self.budget.tick()?;
        for c in 0..(used + 1).min(self.classes) {
            let added = (self.g.neighbors(v) & self.masks[c]).count_ones() as usize;
            let new_edges = self.edges[c] + added;
            if new_edges > 1 {
                continue;
            }
            let edged = self.edges.iter().filter(|&&e| e > 0).count() + usize::from(self.edges[c] == 0 && new_edges == 1);
            if edged > self.max_edged {
                continue;
            }
            self.masks[c] |= bit(v);
            self.edges[c] = new_edges;
            self.assignment[v] = c;
            if self.run(v + 1, used.max(c + 1))? {
                return Ok(true);
            }
            self.masks[c] &= !bit(v);
            self.edges[c] -= added;
        }
        Ok(false)
    }
}
