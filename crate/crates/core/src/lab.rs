//! Seeded `G(n, p)` sampling, perturbed hosts `Gamma_n ∪ G(n, p)`, the two
//! lower-bound colourings, and Monte Carlo estimates of the Ramsey probability.
//!
//! Every edge of trial `t` at size `n` draws one 64-bit uniform from a ChaCha8
//! stream keyed by `(seed, n, t)`; the uniform sits at the edge's colex index.
//! The probability `p` is not part of the key, so for a fixed trial the
//! sampled graph grows monotonically with `p`.
//!
//! Finite `n` says nothing rigorous about asymptotic thresholds; results are
//! sanity curves, sound finite witnesses and seeded regressions.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{SearchOutcome, DEFAULT_ARROW_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{balanced_parts, complete_multipartite, Graph, GraphSpec};
use crate::ramsey::{
    find_good_coloring, find_mono_copy, is_ramsey, ArrowOptions, ArrowOutcome, EdgeColoring, MonoCopy,
};
use crate::rational::Rational;

/// Stated in every simulation result.
pub const LIMITATION: &str = "finite-n estimates; they probe but do not establish asymptotic thresholds";

/// Two-sided 95% normal quantile used for Wilson intervals.
const Z95: f64 = 1.959963984540054;
/// Wilson bounds are rounded outward to this denominator.
const WILSON_DENOM: i64 = 1_000_000;

/// Per-edge uniforms of one trial, in colex edge order of `K_n`.
pub fn edge_uniforms(seed: u64, n: usize, trial: u64) -> Vec<u64> {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(n as u64).to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    key[24..].copy_from_slice(b"gnp-edge");
    let mut rng = ChaCha8Rng::from_seed(key);
    (0..n * n.saturating_sub(1) / 2).map(|_| rng.next_u64()).collect()
}

/// Edge included iff `u / 2^64 < p`, compared exactly.
fn included(u: u64, p: Rational) -> bool {
    let num = p.numer() as u128;
    let den = p.denom() as u128;
    (u as u128) * den < num << 64
}

fn check_p(p: Rational) -> Result<()> {
    if p < Rational::ZERO || p > Rational::ONE {
        return Err(Error::Parameter(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// `G(n, p)` from precomputed uniforms.
pub fn gnp_from_uniforms(n: usize, uniforms: &[u64], p: Rational) -> Result<Graph> {
    check_p(p)?;
    let mut g = Graph::empty(n)?;
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if included(uniforms[i], p) {
                g.add_edge(u, v)?;
            }
            i += 1;
        }
    }
    Ok(g)
}

/// `G(n, p)` on trial 0 of `seed`.
pub fn sample_gnp(n: usize, p: Rational, seed: u64) -> Result<Graph> {
    sample_gnp_trial(n, p, seed, 0)
}

pub fn sample_gnp_trial(n: usize, p: Rational, seed: u64, trial: u64) -> Result<Graph> {
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: crate::graph::MAX_VERTICES,
        });
    }
    gnp_from_uniforms(n, &edge_uniforms(seed, n, trial), p)
}

/// Edge union on a shared vertex set.
pub fn perturb(base: &Graph, random_part: &Graph) -> Result<Graph> {
    base.union(random_part)
}

/// An edge probability: an exact rational, or `c * n^x` evaluated per `n`.
///
/// `c * n^x` is evaluated in double precision, clamped to `[0, 1]` and
/// rounded to the nearest multiple of `2^-53` (ties away from zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeProbability {
    Exact(Rational),
    Power { c: Rational, x: Rational },
}

impl EdgeProbability {
    pub fn at(&self, n: usize) -> Result<Rational> {
        match *self {
            EdgeProbability::Exact(p) => {
                check_p(p)?;
                Ok(p)
            }
            EdgeProbability::Power { c, x } => {
                let v = (c.to_f64() * (n as f64).powf(x.to_f64())).clamp(0.0, 1.0);
                let scale = (1u64 << 53) as f64;
                Rational::new((v * scale).round() as i64, 1 << 53)
            }
        }
    }
}

impl fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeProbability::Exact(p) => write!(f, "{p}"),
            EdgeProbability::Power { c, x } => write!(f, "{c}*n^{x}"),
        }
    }
}

impl FromStr for EdgeProbability {
    type Err = Error;

    /// `a/b`, `n^x` or `c*n^x` with rational `c`, `x`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once("n^") {
            None => Ok(EdgeProbability::Exact(s.parse()?)),
            Some((head, x)) => {
                let c = match head.strip_suffix('*') {
                    Some(c) => c.trim().parse()?,
                    None if head.is_empty() => Rational::ONE,
                    None => return Err(Error::Parameter(format!("cannot parse probability {s:?}"))),
                };
                Ok(EdgeProbability::Power { c, x: x.trim().parse()? })
            }
        }
    }
}

impl Serialize for EdgeProbability {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeProbability {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Which lower-bound recipe produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Balanced k-partite base blue, random edges inside parts coloured to avoid red K and blue H.
    KPartition,
    /// Balanced (k-1)-partite base blue, all other random edges red.
    Chromatic,
}

/// A colouring of a perturbed host together with its re-verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoredWitness {
    pub construction: Construction,
    pub n: usize,
    pub k: usize,
    pub p: Rational,
    pub seed: u64,
    /// No red `K` and no blue `G`.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<MonoCopy>,
    pub certificate: EdgeColoring,
}

impl ColoredWitness {
    pub fn host(&self) -> &Graph {
        self.certificate.host()
    }
}

fn verify(c: &EdgeColoring, k_graph: &Graph, g: &Graph) -> SearchOutcome<Option<MonoCopy>> {
    match find_mono_copy(c, k_graph, g) {
        SearchOutcome::Found(m) => SearchOutcome::Found(Some(m)),
        SearchOutcome::Absent => SearchOutcome::Found(None),
        SearchOutcome::Unknown { budget } => SearchOutcome::Unknown { budget },
    }
}

/// Lower-bound colouring of the k-partition route.
///
/// `Absent` when the random edges inside the parts admit no colouring
/// without red `K` and blue `H`.
#[allow(clippy::too_many_arguments)]
pub fn lower_bound_witness_31(
    n: usize,
    k: usize,
    k_graph: &Graph,
    h: &Graph,
    g: &Graph,
    p: Rational,
    seed: u64,
    budget: u64,
) -> Result<SearchOutcome<ColoredWitness>> {
    if k < 2 || n < k {
        return Err(Error::Parameter(format!("need 2 <= k <= n, got k={k}, n={n}")));
    }
    let gamma = complete_multipartite(&balanced_parts(n, k))?;
    let random = sample_gnp(n, p, seed)?;
    let host = perturb(&gamma, &random)?;
    let inside = Graph::from_edges(
        n,
        &random.edges().into_iter().filter(|&(u, v)| !gamma.has_edge(u, v)).collect::<Vec<_>>(),
    )?;
    let search = find_good_coloring(
        &inside,
        k_graph,
        h,
        ArrowOptions {
            budget,
            symmetry_pruning: false,
        },
    )?;
    let inner = match search.outcome {
        SearchOutcome::Found(c) => c,
        SearchOutcome::Absent => return Ok(SearchOutcome::Absent),
        SearchOutcome::Unknown { budget } => return Ok(SearchOutcome::Unknown { budget }),
    };
    let coloring = EdgeColoring::from_red_edges(&host, &inner.red_edges())?;
    finish(Construction::KPartition, n, k, p, seed, coloring, k_graph, g)
}

/// Lower-bound colouring of the chromatic route: `Gamma_n` is the balanced
/// complete `(k-1)`-partite graph.
pub fn lower_bound_witness_32(
    n: usize,
    k: usize,
    k_graph: &Graph,
    g: &Graph,
    p: Rational,
    seed: u64,
) -> Result<SearchOutcome<ColoredWitness>> {
    if k < 3 || n < k - 1 {
        return Err(Error::Parameter(format!("need k >= 3 and n >= k-1, got k={k}, n={n}")));
    }
    let gamma = complete_multipartite(&balanced_parts(n, k - 1))?;
    let random = sample_gnp(n, p, seed)?;
    let host = perturb(&gamma, &random)?;
    let red: Vec<_> = random.edges().into_iter().filter(|&(u, v)| !gamma.has_edge(u, v)).collect();
    let coloring = EdgeColoring::from_red_edges(&host, &red)?;
    finish(Construction::Chromatic, n, k, p, seed, coloring, k_graph, g)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    construction: Construction,
    n: usize,
    k: usize,
    p: Rational,
    seed: u64,
    certificate: EdgeColoring,
    k_graph: &Graph,
    g: &Graph,
) -> Result<SearchOutcome<ColoredWitness>> {
    Ok(verify(&certificate, k_graph, g).map(|violation| ColoredWitness {
        construction,
        n,
        k,
        p,
        seed,
        verified: violation.is_none(),
        violation,
        certificate,
    }))
}

/// Base graph of an experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseGraph {
    /// Balanced complete multipartite graph with `parts` parts on `n` vertices.
    Balanced { parts: usize },
    /// A fixed graph; its vertex count must equal every `n` of the grid.
    Fixed { spec: GraphSpec },
}

impl BaseGraph {
    pub fn build(&self, n: usize) -> Result<Graph> {
        match self {
            BaseGraph::Balanced { parts } => {
                if *parts == 0 || *parts > n {
                    return Err(Error::Parameter(format!("cannot split {n} vertices into {parts} parts")));
                }
                complete_multipartite(&balanced_parts(n, *parts))
            }
            BaseGraph::Fixed { spec } => {
                let g = spec.build()?;
                if g.n() != n {
                    return Err(Error::VertexCountMismatch { left: g.n(), right: n });
                }
                Ok(g)
            }
        }
    }
}

impl FromStr for BaseGraph {
    type Err = Error;

    /// `balanced:k` or any graph spec.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().strip_prefix("balanced:") {
            Some(k) => Ok(BaseGraph::Balanced {
                parts: k
                    .parse()
                    .map_err(|_| Error::Spec(format!("balanced:k needs an integer, got {k:?}")))?,
            }),
            None => Ok(BaseGraph::Fixed { spec: s.parse()? }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub base: BaseGraph,
    pub red: GraphSpec,
    pub blue: GraphSpec,
    pub ns: Vec<usize>,
    pub ps: Vec<EdgeProbability>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub symmetry_pruning: bool,
}

fn default_budget() -> u64 {
    DEFAULT_ARROW_BUDGET
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellResult {
    pub n: usize,
    pub p: Rational,
    pub p_spec: EdgeProbability,
    pub trials: u64,
    pub ramsey: u64,
    pub notramsey: u64,
    pub unknown: u64,
    /// Wilson score interval for the Ramsey probability over decided trials.
    pub wilson_low: Rational,
    pub wilson_high: Rational,
    /// Mean search nodes per trial.
    pub mean_nodes: Rational,
    pub outcomes: Vec<ArrowOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimResult {
    pub confidence: String,
    pub limitation: String,
    pub cells: Vec<CellResult>,
}

/// 95% Wilson interval for `successes` out of `total`, rounded outward to
/// multiples of `10^-6`. `[0, 1]` when `total = 0`.
pub fn wilson_interval(successes: u64, total: u64) -> (Rational, Rational) {
    if total == 0 {
        return (Rational::ZERO, Rational::ONE);
    }
    let n = total as f64;
    let phat = successes as f64 / n;
    let z2 = Z95 * Z95;
    let centre = phat + z2 / (2.0 * n);
    let spread = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let denom = 1.0 + z2 / n;
    let lo = ((centre - spread) / denom * WILSON_DENOM as f64).floor().max(0.0) as i64;
    let hi = ((centre + spread) / denom * WILSON_DENOM as f64).ceil().min(WILSON_DENOM as f64) as i64;
    let lo = if successes == 0 { 0 } else { lo };
    let hi = if successes == total { WILSON_DENOM } else { hi };
    (Rational::frac(lo, WILSON_DENOM), Rational::frac(hi, WILSON_DENOM))
}

/// Runs every `(n, p)` cell; trials run in parallel and are aggregated by index.
pub fn run_experiment(cfg: &SimConfig) -> Result<SimResult> {
    if cfg.trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    let red = cfg.red.build()?;
    let blue = cfg.blue.build()?;
    let opts = ArrowOptions {
        budget: cfg.budget,
        symmetry_pruning: cfg.symmetry_pruning,
    };
    let mut cells = Vec::new();
    for &n in &cfg.ns {
        let base = cfg.base.build(n)?;
        let ps: Vec<Rational> = cfg.ps.iter().map(|p| p.at(n)).collect::<Result<_>>()?;
        let per_trial: Vec<Vec<(ArrowOutcome, u64)>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let u = edge_uniforms(cfg.seed, n, t);
                ps.iter()
                    .map(|&p| {
                        let host = perturb(&base, &gnp_from_uniforms(n, &u, p)?)?;
                        let v = is_ramsey(&host, &red, &blue, opts)?;
                        Ok((v.outcome, v.stats.nodes))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (i, (&p, spec)) in ps.iter().zip(&cfg.ps).enumerate() {
            let outcomes: Vec<ArrowOutcome> = per_trial.iter().map(|row| row[i].0).collect();
            let nodes: u64 = per_trial.iter().map(|row| row[i].1).sum();
            let count = |o| outcomes.iter().filter(|&&x| x == o).count() as u64;
            let (ramsey, notramsey, unknown) = (
                count(ArrowOutcome::Ramsey),
                count(ArrowOutcome::NotRamsey),
                count(ArrowOutcome::Unknown),
            );
            let (wilson_low, wilson_high) = wilson_interval(ramsey, ramsey + notramsey);
            cells.push(CellResult {
                n,
                p,
                p_spec: *spec,
                trials: cfg.trials,
                ramsey,
                notramsey,
                unknown,
                wilson_low,
                wilson_high,
                mean_nodes: Rational::frac(nodes as i64, cfg.trials as i64),
                outcomes,
            });
        }
    }
    Ok(SimResult {
        confidence: "95%".into(),
        limitation: LIMITATION.into(),
        cells,
    })
}

impl SimResult {
    /// One row per cell: `n,p,trials,ramsey,notramsey,unknown,wilson_low,wilson_high`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parameter(format!("CSV output: {e}"));
        w.write_record(["n", "p", "trials", "ramsey", "notramsey", "unknown", "wilson_low", "wilson_high"])
            .map_err(io)?;
        for c in &self.cells {
            w.write_record([
                c.n.to_string(),
                c.p.to_string(),
                c.trials.to_string(),
                c.ramsey.to_string(),
                c.notramsey.to_string(),
                c.unknown.to_string(),
                c.wilson_low.to_string(),
                c.wilson_high.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parameter(format!("CSV output: {e}")))?;
        Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramsey::Color;

    fn g(s: &str) -> Graph {
        s.parse::<GraphSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn gnp_endpoints() {
        assert_eq!(sample_gnp(12, Rational::ZERO, 7).unwrap().edge_count(), 0);
        assert!(sample_gnp(12, Rational::ONE, 7).unwrap().is_complete());
        assert_eq!(sample_gnp(12, Rational::frac(1, 2), 7).unwrap(), sample_gnp(12, Rational::frac(1, 2), 7).unwrap());
        assert!(sample_gnp(5, Rational::frac(3, 2), 7).is_err());
    }

    #[test]
    fn perturb_examples() {
        let k33 = g("cmp:3,3");
        assert_eq!(perturb(&k33, &Graph::empty(6).unwrap()).unwrap(), k33);
        let one = Graph::from_edges(6, &[(0, 1)]).unwrap();
        assert_eq!(perturb(&k33, &one).unwrap().edge_count(), 10);
        assert_eq!(perturb(&k33, &k33).unwrap(), k33);
        assert!(perturb(&k33, &Graph::empty(5).unwrap()).is_err());
    }

    #[test]
    fn probability_forms() {
        let p: EdgeProbability = "2*n^-1/2".parse().unwrap();
        assert_eq!(p.at(16).unwrap(), Rational::frac(1, 2));
        assert_eq!(p.to_string(), "2/1*n^-1/2");
        let q: EdgeProbability = "n^-1".parse().unwrap();
        assert_eq!(q.at(4).unwrap(), Rational::frac(1, 4));
        assert_eq!("1/3".parse::<EdgeProbability>().unwrap(), EdgeProbability::Exact(Rational::frac(1, 3)));
        assert_eq!("n^1".parse::<EdgeProbability>().unwrap().at(5).unwrap(), Rational::ONE);
        assert!("3n^1".parse::<EdgeProbability>().is_err());
    }

    #[test]
    fn wilson() {
        assert_eq!(wilson_interval(0, 0), (Rational::ZERO, Rational::ONE));
        let (lo, hi) = wilson_interval(0, 5);
        assert_eq!(lo, Rational::ZERO);
        assert!(hi > Rational::frac(43, 100) && hi < Rational::frac(44, 100));
        let (lo, hi) = wilson_interval(5, 5);
        assert_eq!(hi, Rational::ONE);
        assert!(lo > Rational::frac(56, 100));
    }

    #[test]
    fn witness_32_trivial() {
        let w = lower_bound_witness_32(12, 3, &g("K5"), &g("C5"), Rational::ZERO, 1).unwrap().found().unwrap();
        assert!(w.verified);
        assert!(w.certificate.red_edges().is_empty());
        let w = lower_bound_witness_32(12, 3, &g("K5"), &g("C5"), Rational::ONE, 1).unwrap().found().unwrap();
        assert!(!w.verified);
        assert_eq!(w.violation.unwrap().color, Color::Red);
    }

    #[test]
    fn witness_31_trivial() {
        let w = lower_bound_witness_31(6, 2, &g("K3"), &g("K2"), &g("K3"), Rational::ZERO, 1, DEFAULT_ARROW_BUDGET)
            .unwrap()
            .found()
            .unwrap();
        assert!(w.verified);
        assert_eq!(w.host().edge_count(), 9);
    }

    #[test]
    fn experiment_endpoints() {
        let cfg = SimConfig {
            base: "balanced:2".parse().unwrap(),
            red: "K3".parse().unwrap(),
            blue: "K3".parse().unwrap(),
            ns: vec![6],
            ps: vec!["0".parse().unwrap(), "1".parse().unwrap()],
            trials: 5,
            seed: 3,
            budget: DEFAULT_ARROW_BUDGET,
            symmetry_pruning: false,
        };
        let r = run_experiment(&cfg).unwrap();
        assert_eq!((r.cells[0].ramsey, r.cells[0].notramsey), (0, 5));
        assert_eq!((r.cells[1].ramsey, r.cells[1].notramsey), (5, 0));
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("n,p,trials,ramsey,notramsey,unknown,wilson_low,wilson_high\n6,0/1,5,0,5,0,0/1,"));
    }
}
