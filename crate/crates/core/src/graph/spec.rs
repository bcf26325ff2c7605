//! Named graph families with fixed canonical labelings.
//!
//! | family | string form | labeling |
//! |---|---|---|
//! | empty graph on `n` vertices | `empty:n` | |
//! | complete `K_t` | `complete:t` | |
//! | cycle `C_l` | `cycle:l` | `0-1-...-(l-1)-0` |
//! | path on `l` vertices | `path:l` | `0-1-...-(l-1)` |
//! | star on `t` vertices | `star:t` | centre `0`, leaves `1..t` |
//! | complete multipartite | `cmp:a,b,...` | parts consecutive, in order |
//! | `K_s` minus a maximum matching | `cmm:s` | removed edges `{0,1},{2,3},...` |
//! | star on `t` vertices plus apex | `starapex:t` | star as above, apex `t` |
//! | tree plus apex | `treeapex:0-1,1-2,.../a,b,...` | tree vertices first, apex last |
//! | disjoint union | `union:SPEC+SPEC+...` | operands consecutive |
//! | complete join | `join:SPEC+SPEC+...` | operands consecutive |
//! | explicit | `g6:<graph6>` | as encoded |
//!
//! `K7`, `C5` and `P4` abbreviate `complete:7`, `cycle:5` and `path:4`.
//! The same families are accepted as JSON objects tagged by `family`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse_graph6, Graph, MAX_VERTICES};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GraphSpec {
    Empty {
        n: usize,
    },
    Complete {
        t: usize,
    },
    Cycle {
        l: usize,
    },
    Path {
        l: usize,
    },
    Star {
        t: usize,
    },
    CompleteMultipartite {
        parts: Vec<usize>,
    },
    CliqueMinusMatching {
        s: usize,
    },
    StarApex {
        t: usize,
    },
    TreePlusApex {
        tree_edges: Vec<(usize, usize)>,
        apex_neighbors: Vec<usize>,
    },
    DisjointUnion {
        parts: Vec<GraphSpec>,
    },
    Join {
        parts: Vec<GraphSpec>,
    },
    Graph6 {
        code: String,
    },
}

fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    Ok(())
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Empty { n } => Graph::empty(*n),
            GraphSpec::Complete { t } => Graph::complete(*t),
            GraphSpec::Cycle { l } => {
                if *l < 3 {
                    return Err(param(format!("cycle needs l >= 3, got {l}")));
                }
                check_n(*l)?;
                let edges: Vec<_> = (0..*l).map(|i| (i, (i + 1) % l)).collect();
                Graph::from_edges(*l, &edges)
            }
            GraphSpec::Path { l } => {
                check_n(*l)?;
                let edges: Vec<_> = (1..*l).map(|i| (i - 1, i)).collect();
                Graph::from_edges(*l, &edges)
            }
            GraphSpec::Star { t } => {
                if *t == 0 {
                    return Err(param("star needs t >= 1"));
                }
                check_n(*t)?;
                let edges: Vec<_> = (1..*t).map(|i| (0, i)).collect();
                Graph::from_edges(*t, &edges)
            }
            GraphSpec::CompleteMultipartite { parts } => complete_multipartite(parts),
            GraphSpec::CliqueMinusMatching { s } => {
                if *s < 2 {
                    return Err(param(format!("clique-minus-matching needs s >= 2, got {s}")));
                }
                let mut g = Graph::complete(*s)?;
                for i in 0..s / 2 {
                    g.remove_edge(2 * i, 2 * i + 1)?;
                }
                Ok(g)
            }
            GraphSpec::StarApex { t } => {
                if *t < 2 {
                    return Err(param(format!("star-apex needs t >= 2, got {t}")));
                }
                let mut g = Graph::empty(t + 1)?;
                for leaf in 1..*t {
                    g.add_edge(0, leaf)?;
                }
                for u in 0..*t {
                    g.add_edge(u, *t)?;
                }
                Ok(g)
            }
            GraphSpec::TreePlusApex {
                tree_edges,
                apex_neighbors,
            } => tree_plus_apex(tree_edges, apex_neighbors),
            GraphSpec::DisjointUnion { parts } => fold_parts(parts, Graph::disjoint_union),
            GraphSpec::Join { parts } => fold_parts(parts, Graph::join),
            GraphSpec::Graph6 { code } => parse_graph6(code),
        }
    }
}

/// Complete multipartite graph with parts laid out consecutively.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    let n: usize = parts.iter().sum();
    check_n(n)?;
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        for u in 0..v {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Part sizes of the balanced complete `k`-partite graph on `n` vertices:
/// sizes differ by at most one, larger parts first.
pub fn balanced_parts(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

fn tree_plus_apex(tree_edges: &[(usize, usize)], apex_neighbors: &[usize]) -> Result<Graph> {
    let m = tree_edges.len() + 1;
    check_n(m + 1)?;
    let mut tree = Graph::empty(m)?;
    for &(u, v) in tree_edges {
        if tree.has_edge(u, v) {
            return Err(param(format!("tree edge {u}-{v} repeated")));
        }
        tree.add_edge(u, v)?;
    }
    if !is_connected(&tree) {
        return Err(param("tree edges do not form a tree on their vertex set"));
    }
    let mut g = Graph::empty(m + 1)?;
    for (u, v) in tree.edges() {
        g.add_edge(u, v)?;
    }
    for &a in apex_neighbors {
        if a >= m {
            return Err(Error::VertexOutOfRange { vertex: a, n: m });
        }
        g.add_edge(a, m)?;
    }
    Ok(g)
}

fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in crate::bits::iter_bits(frontier) {
            next |= g.neighbors(v);
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == g.vertex_mask()
}

fn fold_parts(parts: &[GraphSpec], op: fn(&Graph, &Graph) -> Result<Graph>) -> Result<Graph> {
    let mut acc = Graph::empty(0)?;
    for p in parts {
        acc = op(&acc, &p.build()?)?;
    }
    Ok(acc)
}

fn join_list(f: &mut fmt::Formatter<'_>, parts: &[impl fmt::Display], sep: &str) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Empty { n } => write!(f, "empty:{n}"),
            GraphSpec::Complete { t } => write!(f, "complete:{t}"),
            GraphSpec::Cycle { l } => write!(f, "cycle:{l}"),
            GraphSpec::Path { l } => write!(f, "path:{l}"),
            GraphSpec::Star { t } => write!(f, "star:{t}"),
            GraphSpec::CompleteMultipartite { parts } => {
                f.write_str("cmp:")?;
                join_list(f, parts, ",")
            }
            GraphSpec::CliqueMinusMatching { s } => write!(f, "cmm:{s}"),
            GraphSpec::StarApex { t } => write!(f, "starapex:{t}"),
            GraphSpec::TreePlusApex {
                tree_edges,
                apex_neighbors,
            } => {
                f.write_str("treeapex:")?;
                let es: Vec<String> = tree_edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                join_list(f, &es, ",")?;
                f.write_str("/")?;
                join_list(f, apex_neighbors, ",")
            }
            GraphSpec::DisjointUnion { parts } => {
                f.write_str("union:")?;
                join_list(f, parts, "+")
            }
            GraphSpec::Join { parts } => {
                f.write_str("join:")?;
                join_list(f, parts, "+")
            }
            GraphSpec::Graph6 { code } => write!(f, "g6:{code}"),
        }
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Spec(format!("{what}: expected a non-negative integer, got {s:?}")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_usize(x, what)).collect()
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Parses `family:params`, or a JSON object when the text starts with `{`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Spec(format!("JSON graph spec: {e}")));
        }
        let compact = text
            .split_at_checked(1)
            .filter(|(f, rest)| matches!(*f, "K" | "C" | "P") && !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()));
        let (family, params) = match compact {
            Some(fp) => fp,
            None => text
                .split_once(':')
                .ok_or_else(|| Error::Spec(format!("expected family:params, got {text:?}")))?,
        };
        let spec = match family {
            "empty" => GraphSpec::Empty { n: parse_usize(params, family)? },
            "complete" | "K" => GraphSpec::Complete { t: parse_usize(params, family)? },
            "cycle" | "C" => GraphSpec::Cycle { l: parse_usize(params, family)? },
            "path" | "P" => GraphSpec::Path { l: parse_usize(params, family)? },
            "star" => GraphSpec::Star { t: parse_usize(params, family)? },
            "cmp" => GraphSpec::CompleteMultipartite { parts: parse_list(params, family)? },
            "cmm" => GraphSpec::CliqueMinusMatching { s: parse_usize(params, family)? },
            "starapex" => GraphSpec::StarApex { t: parse_usize(params, family)? },
            "treeapex" => {
                let (edges, nbrs) = params
                    .split_once('/')
                    .ok_or_else(|| Error::Spec("treeapex needs EDGES/NEIGHBOURS".into()))?;
                let tree_edges = if edges.trim().is_empty() {
                    Vec::new()
                } else {
                    edges
                        .split(',')
                        .map(|e| {
                            let (u, v) = e
                                .split_once('-')
                                .ok_or_else(|| Error::Spec(format!("tree edge {e:?} is not u-v")))?;
                            Ok((parse_usize(u, "tree edge")?, parse_usize(v, "tree edge")?))
                        })
                        .collect::<Result<_>>()?
                };
                GraphSpec::TreePlusApex {
                    tree_edges,
                    apex_neighbors: parse_list(nbrs, "apex neighbours")?,
                }
            }
            "union" | "join" => {
                let parts = params
                    .split('+')
                    .map(str::parse)
                    .collect::<Result<Vec<GraphSpec>>>()?;
                if family == "union" {
                    GraphSpec::DisjointUnion { parts }
                } else {
                    GraphSpec::Join { parts }
                }
            }
            "g6" => GraphSpec::Graph6 { code: params.to_string() },
            other => return Err(Error::Spec(format!("unknown graph family {other:?}"))),
        };
        Ok(spec)
    }
}
