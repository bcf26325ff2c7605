//! Undirected simple graphs on at most 64 vertices stored as adjacency bitmasks.

mod embed;
mod graph6;
mod spec;

pub use embed::{
    automorphisms, find_subgraph, find_subgraph_with_budget, for_each_embedding, Embedding,
    EmbedPlan,
};
pub use graph6::{emit_graph6, parse_graph6};
pub use spec::{balanced_parts, complete_multipartite, GraphSpec};

use std::fmt;

use crate::bits::{bit, full_mask, iter_bits, mask_of};
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Simple undirected graph; vertex `v` has neighbour mask `adj[v]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_size(n)?;
        let all = full_mask(n);
        Ok(Graph {
            n,
            adj: (0..n).map(|v| all & !bit(v)).collect(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbour masks, rejecting asymmetric or looped input.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let g = Graph { n: adj.len(), adj };
        check_size(g.n)?;
        g.validate()?;
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Parameter(format!("loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in colex order: `(0,1), (0,2), (1,2), (0,3), ...` with `u < v`.
    ///
    /// This is the canonical edge ordering used by colourings and by graph6.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            for u in iter_bits(self.adj[v] & full_mask(v)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of edges with both ends in `mask`.
    pub fn edges_within(&self, mask: u64) -> usize {
        iter_bits(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Induced subgraph on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut seen = 0u64;
        for &v in vertices {
            if seen & bit(v) != 0 {
                return Err(Error::Parameter(format!("vertex {v} repeated in subset")));
            }
            seen |= bit(v);
        }
        let mut g = Graph::empty(vertices.len())?;
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.adj[i] |= bit(j);
                    g.adj[j] |= bit(i);
                }
            }
        }
        Ok(g)
    }

    /// Induced subgraph on the vertices of `mask`, in increasing order.
    pub fn induced_mask(&self, mask: u64) -> Graph {
        let vs: Vec<usize> = iter_bits(mask & self.vertex_mask()).collect();
        self.induced(&vs).expect("mask within vertex range")
    }

    /// The graph with the vertices of `mask` deleted.
    pub fn delete_vertices(&self, mask: u64) -> Graph {
        self.induced_mask(self.vertex_mask() & !mask)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect(),
        }
    }

    /// Edge union on a shared vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Graph {
            n: self.n,
            adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a | b).collect(),
        })
    }

    /// Disjoint union with `other`'s vertices shifted after ours.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_size(n)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|m| m << self.n));
        Ok(Graph { n, adj })
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(g.n) & !left;
        for v in 0..g.n {
            g.adj[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    /// Checks symmetry, looplessness and that no bit exceeds `n`.
    pub fn validate(&self) -> Result<()> {
        let all = self.vertex_mask();
        for v in 0..self.n {
            let m = self.adj[v];
            if m & !all != 0 {
                return Err(Error::Parameter(format!("vertex {v} has a neighbour >= n")));
            }
            if m & bit(v) != 0 {
                return Err(Error::Parameter(format!("loop at vertex {v}")));
            }
            for u in iter_bits(m) {
                if self.adj[u] & bit(v) == 0 {
                    return Err(Error::Parameter(format!("edge {v}-{u} is not symmetric")));
                }
            }
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn mask_of(&self, vertices: &[usize]) -> Result<u64> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Ok(mask_of(vertices))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    Ok(())
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} {:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_graph6(self))
    }
}
