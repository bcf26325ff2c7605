//! Exact red/blue arrow decisions by edge-by-edge backtracking.
//!
//! Edges are coloured in the host's canonical colex order. After each
//! assignment only copies through the new edge are searched for, using one
//! anchored embedding plan per orbit of directed pattern edges under the
//! pattern's automorphism group.

mod coloring;

pub use coloring::{Color, EdgeColoring};

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::{bit, for_each_subset_of_size, full_mask, to_vec};
use crate::budget::{Budget, Exhausted, SearchOutcome, DEFAULT_ARROW_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{automorphisms, EmbedPlan, Embedding, Graph};
use crate::rational::Rational;

const AUTOMORPHISM_LIMIT: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowOptions {
    /// Node budget shared by every search performed in one call.
    pub budget: u64,
    /// Canonical-labeling pruning; only applied to complete hosts without
    /// forbidden families.
    pub symmetry_pruning: bool,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        ArrowOptions {
            budget: DEFAULT_ARROW_BUDGET,
            symmetry_pruning: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub symmetry_pruning: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArrowOutcome {
    Ramsey,
    NotRamsey,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowVerdict {
    pub outcome: ArrowOutcome,
    /// For `NotRamsey`: a colouring with no admissible red or blue copy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<EdgeColoring>,
    /// For global checks: the vertex subset the certificate lives on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    pub stats: SearchStats,
    pub budget: u64,
}

/// A monochromatic copy located in a colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoCopy {
    pub color: Color,
    pub embedding: Embedding,
}

/// Explicit forbidden vertex sets for the robust arrow property.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct RobustQuery {
    /// Forbidden vertex sets for red copies, each of size `v(red pattern)`.
    pub forbidden_red: Vec<Vec<usize>>,
    /// Forbidden vertex sets for blue copies, each of size `v(blue pattern)`.
    pub forbidden_blue: Vec<Vec<usize>>,
}

impl RobustQuery {
    fn masks(sets: &[Vec<usize>], size: usize, host: &Graph, which: &str) -> Result<HashSet<u64>> {
        sets.iter()
            .map(|s| {
                let m = host.mask_of(s)?;
                if m.count_ones() as usize != s.len() || s.len() != size {
                    return Err(Error::Parameter(format!(
                        "forbidden {which} set {s:?} must have {size} distinct vertices"
                    )));
                }
                Ok(m)
            })
            .collect()
    }
}

/// `mu`-global arrow query: every vertex subset of size at least `mu * n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlobalQuery {
    mu: Rational,
}

impl GlobalQuery {
    pub fn new(mu: Rational) -> Result<Self> {
        if mu <= Rational::ZERO || mu > Rational::ONE {
            return Err(Error::Parameter(format!("mu must lie in (0, 1], got {mu}")));
        }
        Ok(GlobalQuery { mu })
    }

    pub fn mu(&self) -> Rational {
        self.mu
    }

    /// Smallest admissible subset size `ceil(mu * n)`.
    pub fn min_size(&self, n: usize) -> usize {
        (self.mu * Rational::integer(n as i64)).ceil() as usize
    }
}

/// Anchored embedding plans for one pattern.
struct PatternIndex {
    plans: Vec<EmbedPlan>,
}

impl PatternIndex {
    fn new(pattern: &Graph) -> Result<Self> {
        if pattern.edge_count() == 0 {
            return Err(Error::EmptyPattern);
        }
        let directed: Vec<(usize, usize)> = pattern
            .edges()
            .into_iter()
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .collect();
        let reps = match automorphisms(pattern, AUTOMORPHISM_LIMIT) {
            Some(auts) => {
                let mut covered: HashSet<(usize, usize)> = HashSet::new();
                let mut reps = Vec::new();
                for &(a, b) in &directed {
                    if covered.contains(&(a, b)) {
                        continue;
                    }
                    reps.push((a, b));
                    for s in &auts {
                        covered.insert((s[a], s[b]));
                    }
                }
                reps
            }
            None => directed,
        };
        Ok(PatternIndex {
            plans: reps
                .into_iter()
                .map(|(a, b)| EmbedPlan::with_prefix(pattern, &[a, b]))
                .collect(),
        })
    }

    /// Is there an admissible copy using host edge `uv`?
    fn copy_through(
        &self,
        adj: &[u64],
        allowed: u64,
        u: usize,
        v: usize,
        budget: &mut Budget,
        accept: &dyn Fn(u64) -> bool,
    ) -> std::result::Result<bool, Exhausted> {
        for plan in &self.plans {
            let hit = plan.search(adj, allowed, &[u, v], budget, &mut |m| {
                accept(m.iter().fold(0u64, |acc, &h| acc | bit(h)))
            })?;
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn accept_all(_: u64) -> bool {
    true
}

struct Engine<'a> {
    edges: Vec<(usize, usize)>,
    all: u64,
    adj: [Vec<u64>; 2],
    colors: Vec<Color>,
    patterns: [&'a PatternIndex; 2],
    accept: [&'a dyn Fn(u64) -> bool; 2],
    prune: bool,
    budget: &'a mut Budget,
    max_depth: usize,
}

fn slot(c: Color) -> usize {
    match c {
        Color::Red => 0,
        Color::Blue => 1,
    }
}

impl Engine<'_> {
    fn run(&mut self, i: usize) -> std::result::Result<bool, Exhausted> {
        self.max_depth = self.max_depth.max(i);
        if i == self.edges.len() {
            return Ok(true);
        }
        self.budget.tick()?;
        let (u, v) = self.edges[i];
        for color in [Color::Blue, Color::Red] {
            if color == Color::Red && self.prune && self.breaks_canonical_order(u, v) {
                continue;
            }
            let s = slot(color);
            self.adj[s][u] |= bit(v);
            self.adj[s][v] |= bit(u);
            let hit = self.patterns[s].copy_through(
                &self.adj[s],
                self.all,
                u,
                v,
                self.budget,
                self.accept[s],
            )?;
            if !hit {
                self.colors[i] = color;
                if self.run(i + 1)? {
                    return Ok(true);
                }
            }
            self.adj[s][u] &= !bit(v);
            self.adj[s][v] &= !bit(u);
        }
        Ok(false)
    }

    /// On a complete host every colouring has a relabeling in which, for
    /// consecutive vertices `j-1, j` agreeing on their colours to `0..i`,
    /// `ij` red forces `i(j-1)` red. Colouring `ij` red here would violate it.
    fn breaks_canonical_order(&self, i: usize, j: usize) -> bool {
        if j < i + 2 {
            return false;
        }
        let red = &self.adj[0];
        let prefix = full_mask(i);
        (red[j] ^ red[j - 1]) & prefix == 0 && red[j - 1] & bit(i) == 0
    }
}

/// Result of a good-colouring search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSearch {
    pub outcome: SearchOutcome<EdgeColoring>,
    pub stats: SearchStats,
}

fn search_good_coloring(
    host: &Graph,
    red: &PatternIndex,
    blue: &PatternIndex,
    accept_red: &dyn Fn(u64) -> bool,
    accept_blue: &dyn Fn(u64) -> bool,
    prune: bool,
    budget: &mut Budget,
) -> ColoringSearch {
    let n = host.n();
    let prune = prune && host.is_complete();
    let mut engine = Engine {
        edges: host.edges(),
        all: host.vertex_mask(),
        adj: [vec![0; n], vec![0; n]],
        colors: vec![Color::Blue; host.edge_count()],
        patterns: [red, blue],
        accept: [accept_red, accept_blue],
        prune,
        budget,
        max_depth: 0,
    };
    let result = engine.run(0);
    let stats = SearchStats {
        nodes: engine.budget.used(),
        max_depth: engine.max_depth,
        symmetry_pruning: prune,
    };
    let outcome = match result {
        Ok(true) => SearchOutcome::Found(
            EdgeColoring::from_colors(host, &engine.colors).expect("one colour per edge"),
        ),
        Ok(false) => SearchOutcome::Absent,
        Err(e) => e.into(),
    };
    ColoringSearch { outcome, stats }
}

/// Searches for a colouring of `host` with no red `red_pat` and no blue `blue_pat`.
pub fn find_good_coloring(
    host: &Graph,
    red_pat: &Graph,
    blue_pat: &Graph,
    opts: ArrowOptions,
) -> Result<ColoringSearch> {
    let red = PatternIndex::new(red_pat)?;
    let blue = PatternIndex::new(blue_pat)?;
    let mut budget = Budget::new(opts.budget);
    Ok(search_good_coloring(
        host,
        &red,
        &blue,
        &accept_all,
        &accept_all,
        opts.symmetry_pruning,
        &mut budget,
    ))
}

fn verdict_from(search: ColoringSearch, budget: u64) -> ArrowVerdict {
    let (outcome, certificate) = match search.outcome {
        SearchOutcome::Found(c) => (ArrowOutcome::NotRamsey, Some(c)),
        SearchOutcome::Absent => (ArrowOutcome::Ramsey, None),
        SearchOutcome::Unknown { .. } => (ArrowOutcome::Unknown, None),
    };
    ArrowVerdict {
        outcome,
        certificate,
        subset: None,
        stats: search.stats,
        budget,
    }
}

/// Decides whether every colouring of `host` has a red `red_pat` or a blue `blue_pat`.
pub fn is_ramsey(host: &Graph, red_pat: &Graph, blue_pat: &Graph, opts: ArrowOptions) -> Result<ArrowVerdict> {
    Ok(verdict_from(find_good_coloring(host, red_pat, blue_pat, opts)?, opts.budget))
}

/// Robust arrow: copies whose vertex set is forbidden do not count.
pub fn is_robustly_ramsey(
    host: &Graph,
    red_pat: &Graph,
    blue_pat: &Graph,
    query: &RobustQuery,
    opts: ArrowOptions,
) -> Result<ArrowVerdict> {
    let red_forbidden = RobustQuery::masks(&query.forbidden_red, red_pat.n(), host, "red")?;
    let blue_forbidden = RobustQuery::masks(&query.forbidden_blue, blue_pat.n(), host, "blue")?;
    let red = PatternIndex::new(red_pat)?;
    let blue = PatternIndex::new(blue_pat)?;
    let accept_red = |m: u64| !red_forbidden.contains(&m);
    let accept_blue = |m: u64| !blue_forbidden.contains(&m);
    let prune = opts.symmetry_pruning && red_forbidden.is_empty() && blue_forbidden.is_empty();
    let mut budget = Budget::new(opts.budget);
    let search = search_good_coloring(host, &red, &blue, &accept_red, &accept_blue, prune, &mut budget);
    Ok(verdict_from(search, opts.budget))
}

/// Global arrow: every induced subgraph on at least `mu * n` vertices is Ramsey.
///
/// Only subsets of the minimum size are examined: a larger subset contains
/// one of them, and the arrow property is inherited by supergraphs.
pub fn is_globally_ramsey(
    host: &Graph,
    red_pat: &Graph,
    blue_pat: &Graph,
    query: GlobalQuery,
    opts: ArrowOptions,
) -> Result<ArrowVerdict> {
    let red = PatternIndex::new(red_pat)?;
    let blue = PatternIndex::new(blue_pat)?;
    let size = query.min_size(host.n());
    let mut budget = Budget::new(opts.budget);
    let mut stats = SearchStats::default();
    let mut result: Option<ArrowVerdict> = None;
    for_each_subset_of_size(host.vertex_mask(), size, |mask| {
        let sub = host.induced_mask(mask);
        let search = search_good_coloring(
            &sub,
            &red,
            &blue,
            &accept_all,
            &accept_all,
            opts.symmetry_pruning,
            &mut budget,
        );
        stats.max_depth = stats.max_depth.max(search.stats.max_depth);
        stats.symmetry_pruning |= search.stats.symmetry_pruning;
        match search.outcome {
            SearchOutcome::Absent => true,
            SearchOutcome::Found(c) => {
                result = Some(ArrowVerdict {
                    outcome: ArrowOutcome::NotRamsey,
                    certificate: Some(lift_coloring(host, mask, &c)),
                    subset: Some(to_vec(mask)),
                    stats,
                    budget: opts.budget,
                });
                false
            }
            SearchOutcome::Unknown { .. } => {
                result = Some(ArrowVerdict {
                    outcome: ArrowOutcome::Unknown,
                    certificate: None,
                    subset: None,
                    stats,
                    budget: opts.budget,
                });
                false
            }
        }
    });
    stats.nodes = budget.used();
    let mut verdict = result.unwrap_or(ArrowVerdict {
        outcome: ArrowOutcome::Ramsey,
        certificate: None,
        subset: None,
        stats,
        budget: opts.budget,
    });
    verdict.stats.nodes = budget.used();
    Ok(verdict)
}

/// Extends a colouring of `host[mask]` to `host`, colouring every other edge blue.
fn lift_coloring(host: &Graph, mask: u64, sub: &EdgeColoring) -> EdgeColoring {
    let vs = to_vec(mask);
    let red: Vec<(usize, usize)> = sub.red_edges().into_iter().map(|(a, b)| (vs[a], vs[b])).collect();
    EdgeColoring::from_red_edges(host, &red).expect("sub-colouring edges are host edges")
}

/// Finds a red copy of `red_pat` or, failing that, a blue copy of `blue_pat`.
pub fn find_mono_copy(c: &EdgeColoring, red_pat: &Graph, blue_pat: &Graph) -> SearchOutcome<MonoCopy> {
    find_mono_copy_filtered(c, red_pat, blue_pat, &accept_all, &accept_all, &mut Budget::new(DEFAULT_ARROW_BUDGET))
}

/// As [`find_mono_copy`], counting only copies whose vertex mask is accepted.
pub fn find_mono_copy_filtered(
    c: &EdgeColoring,
    red_pat: &Graph,
    blue_pat: &Graph,
    accept_red: &dyn Fn(u64) -> bool,
    accept_blue: &dyn Fn(u64) -> bool,
    budget: &mut Budget,
) -> SearchOutcome<MonoCopy> {
    let all = c.host().vertex_mask();
    for (color, pattern, accept) in [(Color::Red, red_pat, accept_red), (Color::Blue, blue_pat, accept_blue)] {
        let adj = c.adjacency(color);
        let mut found = None;
        let res = EmbedPlan::new(pattern).search(&adj, all, &[], budget, &mut |m| {
            let mask = m.iter().fold(0u64, |acc, &h| acc | bit(h));
            if accept(mask) {
                found = Some(m.to_vec());
                true
            } else {
                false
            }
        });
        match res {
            Ok(true) => {
                return SearchOutcome::Found(MonoCopy {
                    color,
                    embedding: Embedding {
                        map: found.expect("visited"),
                    },
                })
            }
            Ok(false) => {}
            Err(e) => return e.into(),
        }
    }
    SearchOutcome::Absent
}

/// Re-verifies a robust certificate: every monochromatic copy is forbidden.
pub fn robust_copy(c: &EdgeColoring, red_pat: &Graph, blue_pat: &Graph, query: &RobustQuery) -> Result<SearchOutcome<MonoCopy>> {
    let host = c.host();
    let red_forbidden = RobustQuery::masks(&query.forbidden_red, red_pat.n(), host, "red")?;
    let blue_forbidden = RobustQuery::masks(&query.forbidden_blue, blue_pat.n(), host, "blue")?;
    Ok(find_mono_copy_filtered(
        c,
        red_pat,
        blue_pat,
        &|m| !red_forbidden.contains(&m),
        &|m| !blue_forbidden.contains(&m),
        &mut Budget::new(DEFAULT_ARROW_BUDGET),
    ))
}
