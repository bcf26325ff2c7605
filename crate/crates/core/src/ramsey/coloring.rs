use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::{bit, iter_bits};
use crate::error::{Error, Result};
use crate::graph::{emit_graph6, parse_graph6, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Red/blue assignment on the edges of a host graph.
///
/// Colours are stored as a red bitset over the host's colex edge list;
/// every edge not marked red is blue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    host: Graph,
    edges: Vec<(usize, usize)>,
    red: Vec<u64>,
}

impl EdgeColoring {
    pub fn all_blue(host: &Graph) -> Self {
        let edges = host.edges();
        let words = edges.len().div_ceil(64);
        EdgeColoring {
            host: host.clone(),
            edges,
            red: vec![0; words],
        }
    }

    pub fn all_red(host: &Graph) -> Self {
        let mut c = EdgeColoring::all_blue(host);
        for i in 0..c.edges.len() {
            c.set(i, Color::Red);
        }
        c
    }

    /// Colouring with exactly the given host edges red.
    pub fn from_red_edges(host: &Graph, red_edges: &[(usize, usize)]) -> Result<Self> {
        let mut c = EdgeColoring::all_blue(host);
        for &(u, v) in red_edges {
            let idx = c
                .edge_index(u, v)
                .ok_or_else(|| Error::Parameter(format!("{u}-{v} is not a host edge")))?;
            c.set(idx, Color::Red);
        }
        Ok(c)
    }

    /// Builds a colouring from per-edge colours in canonical edge order.
    pub fn from_colors(host: &Graph, colors: &[Color]) -> Result<Self> {
        let mut c = EdgeColoring::all_blue(host);
        if colors.len() != c.edges.len() {
            return Err(Error::Parameter(format!(
                "{} colours for {} edges",
                colors.len(),
                c.edges.len()
            )));
        }
        for (i, &col) in colors.iter().enumerate() {
            c.set(i, col);
        }
        Ok(c)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// Host edges in canonical (colex) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !self.host.has_edge(a, b) {
            return None;
        }
        self.edges.binary_search_by(|&(x, y)| (y, x).cmp(&(b, a))).ok()
    }

    pub fn color(&self, idx: usize) -> Color {
        if self.red[idx / 64] & (1u64 << (idx % 64)) != 0 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Colour of edge `uv`, or `None` for a non-edge.
    pub fn color_of(&self, u: usize, v: usize) -> Option<Color> {
        self.edge_index(u, v).map(|i| self.color(i))
    }

    pub fn set(&mut self, idx: usize, color: Color) {
        let m = 1u64 << (idx % 64);
        match color {
            Color::Red => self.red[idx / 64] |= m,
            Color::Blue => self.red[idx / 64] &= !m,
        }
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.color(i) == Color::Red)
            .map(|(_, &e)| e)
            .collect()
    }

    /// Neighbour masks of the subgraph formed by edges of `color`.
    pub fn adjacency(&self, color: Color) -> Vec<u64> {
        let mut adj = vec![0u64; self.host.n()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if self.color(i) == color {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
            }
        }
        adj
    }

    /// Colouring of the induced host subgraph on `mask`, relabelled in
    /// increasing vertex order.
    pub fn restrict(&self, mask: u64) -> EdgeColoring {
        let vs: Vec<usize> = iter_bits(mask & self.host.vertex_mask()).collect();
        let sub = self.host.induced_mask(mask);
        let mut c = EdgeColoring::all_blue(&sub);
        for i in 0..c.edges.len() {
            let (a, b) = c.edges[i];
            if self.color_of(vs[a], vs[b]) == Some(Color::Red) {
                c.set(i, Color::Red);
            }
        }
        c
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    host: String,
    red_edges: Vec<[usize; 2]>,
}

/// Serialized as `{"host": <graph6>, "red_edges": [[u, v], ...]}`.
impl Serialize for EdgeColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateRepr {
            host: emit_graph6(&self.host),
            red_edges: self.red_edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CertificateRepr::deserialize(d)?;
        let host = parse_graph6(&repr.host).map_err(serde::de::Error::custom)?;
        let red: Vec<(usize, usize)> = repr.red_edges.iter().map(|e| (e[0], e[1])).collect();
        EdgeColoring::from_red_edges(&host, &red).map_err(serde::de::Error::custom)
    }
}
