//! Brute-force oracles shared by the integration suites.
//!
//! Nothing here calls the crate's search or density code: fractions are
//! `(num, den)` pairs compared by cross-multiplication and containment is
//! plain injective-map enumeration.

#![allow(dead_code)]

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use ramsey_core::ramsey::{Color, EdgeColoring};
use ramsey_core::{Graph, GraphSpec, Rational};

pub type Frac = (i64, i64);

pub fn g(spec: &str) -> Graph {
    spec.parse::<GraphSpec>().unwrap().build().unwrap()
}

pub fn frac_eq(a: Frac, b: Frac) -> bool {
    a.0 as i128 * b.1 as i128 == b.0 as i128 * a.1 as i128
}

pub fn frac_lt(a: Frac, b: Frac) -> bool {
    (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128)
}

pub fn same(r: Rational, f: Frac) -> bool {
    frac_eq((r.numer(), r.denom()), f)
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..n {
        for u in 0..v {
            out.push((u, v));
        }
    }
    out
}

/// Graph on `n` vertices whose `i`-th pair (colex order) is present iff bit `i` is set.
pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, num: u32, den: u32) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.next_u32() % den < num).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn d2(v: usize, e: usize) -> Option<Frac> {
    Some(match (v, e) {
        (_, 0) => (0, 1),
        (2, 1) => (1, 2),
        _ => (e as i64 - 1, v as i64 - 2),
    })
}

pub fn ev(v: usize, e: usize) -> Option<Frac> {
    Some((e as i64, v as i64))
}

/// `e / (v - 2 + b/a)` for `m2(h2) = a/b`, written as `e*a / (a*(v-2) + b)`.
pub fn asym(m: Frac) -> impl Fn(usize, usize) -> Option<Frac> {
    move |v, e| (e >= 1).then(|| (e as i64 * m.0, m.0 * (v as i64 - 2) + m.1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Max {
    pub value: Frac,
    pub witness: Vec<usize>,
    pub strict: bool,
}

fn better(val: Frac, set: &[usize], best: &Option<(Frac, Vec<usize>)>) -> bool {
    match best {
        None => true,
        Some((b, bs)) => {
            frac_lt(*b, val) || (frac_eq(*b, val) && (set.len() < bs.len() || (set.len() == bs.len() && set < &bs[..])))
        }
    }
}

/// Maximum over all nonempty vertex subsets of `value(|S|, e(G[S]))`.
pub fn by_vertex_subsets(g: &Graph, value: impl Fn(usize, usize) -> Option<Frac>) -> Option<Max> {
    let n = g.n();
    let adj = adjacency(g);
    let mut best: Option<(Frac, Vec<usize>)> = None;
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut e = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[..i] {
                e += adj[u][v] as usize;
            }
        }
        if let Some(val) = value(set.len(), e) {
            if better(val, &set, &best) {
                best = Some((val, set));
            }
        }
    }
    best.map(|(value, witness)| Max {
        strict: witness.len() == n,
        value,
        witness,
    })
}

/// Maximum over all nonempty edge subsets `F`, each on its spanned vertex set.
/// Adding isolated vertices never helps once the maximum is positive, so this
/// is the maximum over all subgraphs with at least one edge.
pub fn by_edge_subsets(g: &Graph, value: impl Fn(usize, usize) -> Option<Frac>) -> Option<Max> {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 20, "edge-subset oracle limited to 20 edges");
    let subgraphs = (1u32..(1 << m)).filter_map(|f| {
        let mut span = 0u64;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if f >> i & 1 == 1 {
                span |= 1 << u | 1 << v;
            }
        }
        let set: Vec<usize> = (0..g.n()).filter(|&v| span >> v & 1 == 1).collect();
        value(set.len(), f.count_ones() as usize).map(|val| (val, set))
    });
    let mut best: Option<(Frac, Vec<usize>)> = None;
    let mut maximisers = 0usize;
    for (val, set) in subgraphs {
        match &best {
            Some((b, _)) if frac_eq(*b, val) => maximisers += 1,
            Some((b, _)) if frac_lt(val, *b) => {}
            _ => maximisers = 1,
        }
        if better(val, &set, &best) {
            best = Some((val, set));
        }
    }
    best.map(|(value, witness)| Max {
        // strict: the whole graph is the only maximiser
        strict: maximisers == 1 && witness.len() == g.n(),
        value,
        witness,
    })
}

/// Injective maps of `pattern` into `host`, by backtracking over pattern
/// vertices in label order with every unused host vertex as a candidate.
pub fn brute_embedding(host: &[Vec<bool>], pattern: &Graph) -> Option<Vec<usize>> {
    let p = adjacency(pattern);
    let mut map = Vec::with_capacity(p.len());
    fn go(host: &[Vec<bool>], p: &[Vec<bool>], map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for h in 0..host.len() {
            if map.contains(&h) || (0..i).any(|j| p[i][j] && !host[h][map[j]]) {
                continue;
            }
            map.push(h);
            if go(host, p, map) {
                return true;
            }
            map.pop();
        }
        false
    }
    go(host, &p, &mut map).then_some(map)
}

pub fn brute_contains(host: &Graph, pattern: &Graph) -> bool {
    brute_embedding(&adjacency(host), pattern).is_some()
}

pub fn color_matrix(c: &EdgeColoring, color: Color) -> Vec<Vec<bool>> {
    let n = c.host().n();
    (0..n).map(|u| (0..n).map(|v| c.color_of(u, v) == Some(color)).collect()).collect()
}

/// `true` iff `c` has neither a red `red_pat` nor a blue `blue_pat`.
pub fn brute_good(c: &EdgeColoring, red_pat: &Graph, blue_pat: &Graph) -> bool {
    brute_embedding(&color_matrix(c, Color::Red), red_pat).is_none()
        && brute_embedding(&color_matrix(c, Color::Blue), blue_pat).is_none()
}

/// Ramsey by enumerating all `2^e` colourings.
pub fn brute_ramsey(host: &Graph, red_pat: &Graph, blue_pat: &Graph) -> bool {
    let edges = host.edges();
    assert!(edges.len() <= 16);
    let n = host.n();
    let (rp, bp) = (red_pat, blue_pat);
    (0u32..(1 << edges.len())).all(|mask| {
        let mut red = vec![vec![false; n]; n];
        let mut blue = vec![vec![false; n]; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let m = if mask >> i & 1 == 1 { &mut red } else { &mut blue };
            m[u][v] = true;
            m[v][u] = true;
        }
        brute_embedding(&red, rp).is_some() || brute_embedding(&blue, bp).is_some()
    })
}

/// Does every labeling of `V(g)` with `k` labels put a copy of `h` inside one class?
pub fn brute_partition(g: &Graph, h: &Graph, k: usize) -> bool {
    let n = g.n();
    let total = (k as u64).pow(n as u32);
    (0..total).all(|mut code| {
        let mut label = vec![0; n];
        for l in label.iter_mut() {
            *l = (code % k as u64) as usize;
            code /= k as u64;
        }
        (0..k).any(|c| {
            let verts: Vec<usize> = (0..n).filter(|&v| label[v] == c).collect();
            brute_contains(&g.induced(&verts).unwrap(), h)
        })
    })
}
