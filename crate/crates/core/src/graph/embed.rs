//! Budgeted search for (not necessarily induced) subgraph embeddings.
//!
//! Pattern vertices are placed in a fixed order where each vertex has as many
//! already-placed neighbours as possible; the candidates for a vertex are the
//! common host-neighbours of the images of those placed neighbours, filtered
//! by degree.

use serde::Serialize;

use super::Graph;
use crate::bits::{bit, iter_bits};
use crate::budget::{Budget, Exhausted, SearchOutcome};

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Independent edge-by-edge check that this is a subgraph embedding.
    pub fn verify(&self, pattern: &Graph, host: &Graph) -> bool {
        self.verify_in(pattern, host.adjacency())
    }

    /// As [`Embedding::verify`] against raw host neighbour masks.
    pub fn verify_in(&self, pattern: &Graph, host_adj: &[u64]) -> bool {
        if self.map.len() != pattern.n() {
            return false;
        }
        let mut used = 0u64;
        for &h in &self.map {
            if h >= host_adj.len() || used & bit(h) != 0 {
                return false;
            }
            used |= bit(h);
        }
        pattern
            .edges()
            .into_iter()
            .all(|(a, b)| host_adj[self.map[a]] & bit(self.map[b]) != 0)
    }

    pub fn vertex_mask(&self) -> u64 {
        self.map.iter().fold(0, |m, &v| m | bit(v))
    }
}

/// Precomputed placement order for a pattern, optionally starting from a
/// fixed prefix of pattern vertices whose images the caller supplies.
#[derive(Debug, Clone)]
pub struct EmbedPlan {
    order: Vec<usize>,
    /// For each position, the earlier positions holding pattern neighbours.
    back: Vec<Vec<usize>>,
    degree: Vec<u32>,
    prefix_len: usize,
}

impl EmbedPlan {
    pub fn new(pattern: &Graph) -> Self {
        EmbedPlan::with_prefix(pattern, &[])
    }

    pub fn with_prefix(pattern: &Graph, prefix: &[usize]) -> Self {
        let n = pattern.n();
        let mut order: Vec<usize> = prefix.to_vec();
        let mut placed: u64 = prefix.iter().fold(0, |m, &v| m | bit(v));
        while order.len() < n {
            // most placed neighbours, then highest degree, then lowest index
            let next = (0..n)
                .filter(|&v| placed & bit(v) == 0)
                .max_by_key(|&v| {
                    (
                        (pattern.neighbors(v) & placed).count_ones(),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex exists");
            order.push(next);
            placed |= bit(next);
        }
        let pos_of: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                iter_bits(pattern.neighbors(v))
                    .map(|u| pos_of[u])
                    .filter(|&p| p < i)
                    .collect()
            })
            .collect();
        let degree = order.iter().map(|&v| pattern.degree(v) as u32).collect();
        EmbedPlan {
            order,
            back,
            degree,
            prefix_len: prefix.len(),
        }
    }

    pub fn pattern_order(&self) -> &[usize] {
        &self.order
    }

    /// Enumerates embeddings into the host given by `host_adj`, restricted to
    /// host vertices in `allowed`, with the plan's prefix mapped to `fixed`.
    ///
    /// `visit` receives the pattern-indexed map and returns `true` to stop.
    /// Returns whether the enumeration was stopped by `visit`.
    pub fn search(
        &self,
        host_adj: &[u64],
        allowed: u64,
        fixed: &[usize],
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, Exhausted> {
        debug_assert_eq!(fixed.len(), self.prefix_len);
        let k = self.order.len();
        let mut map = vec![usize::MAX; k];
        let mut images = vec![0usize; k];
        let mut used = 0u64;
        for (i, &h) in fixed.iter().enumerate() {
            if h >= host_adj.len() || allowed & bit(h) == 0 || used & bit(h) != 0 {
                return Ok(false);
            }
            if (host_adj[h] & allowed).count_ones() < self.degree[i] {
                return Ok(false);
            }
            for &p in &self.back[i] {
                if host_adj[h] & bit(images[p]) == 0 {
                    return Ok(false);
                }
            }
            images[i] = h;
            map[self.order[i]] = h;
            used |= bit(h);
        }
        if k > host_adj.len() {
            return Ok(false);
        }
        let mut ctx = Ctx {
            plan: self,
            host_adj,
            allowed,
            map,
            images,
            used,
            budget,
            visit,
        };
        ctx.extend(self.prefix_len)
    }
}

struct Ctx<'a, 'b> {
    plan: &'a EmbedPlan,
    host_adj: &'a [u64],
    allowed: u64,
    map: Vec<usize>,
    images: Vec<usize>,
    used: u64,
    budget: &'b mut Budget,
    visit: &'b mut dyn FnMut(&[usize]) -> bool,
}

impl Ctx<'_, '_> {
    fn extend(&mut self, i: usize) -> Result<bool, Exhausted> {
        if i == self.plan.order.len() {
            return Ok((self.visit)(&self.map));
        }
        let mut cand = self.allowed & !self.used;
        for &p in &self.plan.back[i] {
            cand &= self.host_adj[self.images[p]];
        }
        let need = self.plan.degree[i];
        for h in iter_bits(cand) {
            self.budget.tick()?;
            if (self.host_adj[h] & self.allowed).count_ones() < need {
                continue;
            }
            self.images[i] = h;
            self.map[self.plan.order[i]] = h;
            self.used |= bit(h);
            let stop = self.extend(i + 1)?;
            self.used &= !bit(h);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Finds an embedding of `pattern` into `host` with the default node budget.
pub fn find_subgraph(host: &Graph, pattern: &Graph) -> SearchOutcome<Embedding> {
    find_subgraph_with_budget(host, pattern, &mut Budget::default())
}

pub fn find_subgraph_with_budget(
    host: &Graph,
    pattern: &Graph,
    budget: &mut Budget,
) -> SearchOutcome<Embedding> {
    let plan = EmbedPlan::new(pattern);
    let mut found = None;
    match plan.search(host.adjacency(), host.vertex_mask(), &[], budget, &mut |m| {
        found = Some(m.to_vec());
        true
    }) {
        Ok(true) => SearchOutcome::Found(Embedding {
            map: found.expect("visited"),
        }),
        Ok(false) => SearchOutcome::Absent,
        Err(e) => e.into(),
    }
}

/// Calls `visit` on every embedding of `pattern` into `host`.
pub fn for_each_embedding(
    host: &Graph,
    pattern: &Graph,
    budget: &mut Budget,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<bool, Exhausted> {
    EmbedPlan::new(pattern).search(host.adjacency(), host.vertex_mask(), &[], budget, &mut visit)
}

/// All automorphisms of `g`, or `None` once more than `limit` have been seen.
pub fn automorphisms(g: &Graph, limit: usize) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut overflow = false;
    let mut budget = Budget::unlimited();
    // an injective edge-preserving self-map is a bijection preserving the edge count
    let _ = for_each_embedding(g, g, &mut budget, |m| {
        if out.len() == limit {
            overflow = true;
            return true;
        }
        out.push(m.to_vec());
        false
    });
    (!overflow).then_some(out)
}
