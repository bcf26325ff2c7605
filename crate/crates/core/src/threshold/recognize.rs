//! Structural recognizers for the graph classes the threshold routes use.

use serde::Serialize;

use crate::bits::{bit, iter_bits};
use crate::graph::{emit_graph6, Graph};

/// `Some(t)` if `g` is `K_t`.
pub fn complete_order(g: &Graph) -> Option<usize> {
    (g.n() >= 1 && g.is_complete()).then_some(g.n())
}

/// `Some(s)` if `g` is `K_s` minus a maximum matching, `s >= 3`.
pub fn clique_minus_matching_order(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let c = g.complement();
    let matching = (0..n).all(|v| c.degree(v) <= 1);
    (matching && c.edge_count() == n / 2).then_some(n)
}

/// `Some(t)` if `g` is a star on `t` vertices plus a vertex adjacent to all of it.
pub fn star_apex_order(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 4 || g.edge_count() != 2 * n - 3 {
        return None;
    }
    let apex = (0..n).find(|&v| g.degree(v) == n - 1)?;
    let star = g.delete_vertices(bit(apex));
    let t = n - 1;
    let centre = (0..t).find(|&v| star.degree(v) == t - 1)?;
    (0..t).all(|v| v == centre || star.degree(v) == 1).then_some(t)
}

/// A tree `T` on at least four vertices plus a vertex `v` whose neighbourhood
/// is not monochromatic in the 2-colouring of `T`, but becomes so after
/// dropping one neighbour `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApexTree {
    pub apex: usize,
    pub removable_neighbor: usize,
    /// Bipartition class (0 or 1) of each vertex of `g`; the apex gets class 1
    /// together with `removable_neighbor`.
    pub tree_classes: Vec<u8>,
}

pub fn recognize_apex_tree(g: &Graph) -> Option<ApexTree> {
    let n = g.n();
    if n < 5 || g.edge_count() < n {
        return None;
    }
    for apex in 0..n {
        let rest = g.vertex_mask() & !bit(apex);
        if g.edges_within(rest) != n - 2 {
            continue;
        }
        let Some(classes) = two_colour(g, rest) else { continue };
        let nbrs = g.neighbors(apex);
        let zero = iter_bits(nbrs).filter(|&u| classes[u] == 0).count();
        let one = iter_bits(nbrs).count() - zero;
        if zero == 0 || one == 0 {
            continue;
        }
        let lone = if zero == 1 {
            Some(0u8)
        } else if one == 1 {
            Some(1u8)
        } else {
            None
        };
        let Some(lone_class) = lone else { continue };
        let u = iter_bits(nbrs).find(|&u| classes[u] == lone_class).expect("counted above");
        let mut tree_classes = classes;
        if lone_class == 0 {
            for c in tree_classes.iter_mut() {
                *c ^= 1;
            }
        }
        tree_classes[apex] = 1;
        return Some(ApexTree {
            apex,
            removable_neighbor: u,
            tree_classes,
        });
    }
    None
}

/// 2-colouring of `g[mask]` when it is connected and bipartite.
fn two_colour(g: &Graph, mask: u64) -> Option<Vec<u8>> {
    let start = mask.trailing_zeros() as usize;
    let mut classes = vec![0u8; g.n()];
    let mut seen = bit(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in iter_bits(g.neighbors(v) & mask) {
            if seen & bit(u) == 0 {
                seen |= bit(u);
                classes[u] = classes[v] ^ 1;
                stack.push(u);
            } else if classes[u] == classes[v] {
                return None;
            }
        }
    }
    (seen == mask).then_some(classes)
}

/// Canonical registry key: `complete:t`, `cmm:s`, or `g6:<code>` of `g` as labelled.
pub fn canonical_key(g: &Graph) -> String {
    if let Some(t) = complete_order(g) {
        format!("complete:{t}")
    } else if let Some(s) = clique_minus_matching_order(g) {
        format!("cmm:{s}")
    } else {
        format!("g6:{}", emit_graph6(g))
    }
}

/// Short human-readable name used in provenance strings.
pub fn short_name(g: &Graph) -> String {
    if let Some(t) = complete_order(g) {
        format!("K{t}")
    } else if let Some(s) = clique_minus_matching_order(g) {
        format!("K{s}'")
    } else {
        format!("g6:{}", emit_graph6(g))
    }
}
