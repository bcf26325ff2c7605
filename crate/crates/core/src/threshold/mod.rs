//! Hypothesis checks for the two perturbed-threshold theorems and a router
//! that turns a pair `(K, G)` and a density `d` into a threshold exponent.
//!
//! The k-partition route gives `p = n^{-1/m2(K,H)}` for
//! `(k-2)/(k-1) < d <= (k-1)/k`; the chromatic route gives `p = n^{-1/d(K)}`
//! for `(k-3)/(k-2) < d <= (k-2)/(k-1)` where `k = chi(G)`.

mod chromatic;
mod partition;
mod recognize;
mod registry;

use std::collections::BTreeMap;

use serde::Serialize;

pub use chromatic::{
    check_sparse_partite_embedding, chromatic_number, chromatic_number_with_budget, Coloring, SparsePartiteVerdict,
    CHROMATIC_CAP, SPARSE_PARTITE_CAP,
};
pub use partition::{
    check_join_property, check_partition_property, check_partition_property_with, join_power, JoinVerdict,
    PartitionVerdict, DEFAULT_PARTITION_CAP,
};
pub use recognize::{
    canonical_key, clique_minus_matching_order, complete_order, recognize_apex_tree, short_name, star_apex_order,
    ApexTree,
};
pub use registry::{AssumptionRegistry, RegistryEntry};

use crate::bits::{bit, for_each_subset_of_size, to_vec};
use crate::budget::Bounded;
use crate::density::{ev_density, DensityCalculator};
use crate::error::{Error, Result};
use crate::graph::{emit_graph6, Graph, GraphSpec};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Verified,
    Failed,
    Assumed,
    Unknown,
}

impl Status {
    /// Verified, or Assumed on a registry citation.
    pub fn passes(self) -> bool {
        matches!(self, Status::Verified | Status::Assumed)
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Verified
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deleted_from_k: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deleted_from_g: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub densities: BTreeMap<String, Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: String,
    pub status: Status,
    pub evidence: Evidence,
}

impl Condition {
    fn new(id: &str, status: Status, evidence: Evidence) -> Self {
        Condition {
            id: id.to_string(),
            status,
            evidence,
        }
    }

    fn unknown(id: &str, note: String) -> Self {
        Condition::new(
            id,
            Status::Unknown,
            Evidence {
                note: Some(note),
                ..Evidence::default()
            },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Blue base graph split into `k` parts, threshold `n^{-1/m2(K,H)}`.
    KPartition,
    /// `k = chi(G)`, base graph `(k-1)`-partite, threshold `n^{-1/d(K)}`.
    Chromatic,
}

/// Density interval `(low, high]`, or `[low, high]` when `low_closed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityRange {
    pub low: Rational,
    pub high: Rational,
    pub low_closed: bool,
}

impl DensityRange {
    pub fn contains(&self, d: Rational) -> bool {
        d <= self.high && (d > self.low || (self.low_closed && d == self.low))
    }
}

/// `((k-2)/(k-1), (k-1)/k]`.
fn partition_range(k: usize) -> DensityRange {
    let k = k as i64;
    DensityRange {
        low: Rational::frac(k - 2, k - 1),
        high: Rational::frac(k - 1, k),
        low_closed: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub k: usize,
    /// Standing assumptions of the chromatic route; empty otherwise.
    pub preconditions: Vec<Condition>,
    pub conditions: Vec<Condition>,
    /// Auxiliary graphs chosen by the checks (`H`, `K'`, `G'`, `K''`) in graph6.
    pub auxiliary: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_range: Option<DensityRange>,
}

impl HypothesisReport {
    /// Every precondition and condition Verified or Assumed.
    pub fn all_pass(&self) -> bool {
        self.preconditions.iter().chain(&self.conditions).all(|c| c.status.passes())
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.preconditions.iter().chain(&self.conditions).find(|c| c.id == id)
    }

    /// Ids of everything that is not Verified or Assumed.
    pub fn failures(&self) -> Vec<String> {
        self.preconditions
            .iter()
            .chain(&self.conditions)
            .filter(|c| !c.status.passes())
            .map(|c| format!("{}: {:?}", c.id, c.status))
            .collect()
    }
}

fn key(name: &str, args: &str) -> String {
    format!("{name}({args})")
}

/// Maps density-cap errors to `None`, keeping other errors.
fn capped<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::CapExceeded { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

/// `m2(a) >= m2(b) >= 1` and (`a` strictly balanced w.r.t. `m2(., b)` or
/// `m2(a) = m2(b)`), with `m2(b)` supplied; `target` bounds `m2(a, b)` from
/// above when given.
struct PairCheck {
    ok: bool,
    asym: Option<Rational>,
    strict: Option<bool>,
}

fn pair_check(calc: &DensityCalculator, a: &Graph, m2a: Rational, m2b: Rational, target: Option<Rational>) -> Result<PairCheck> {
    if !(m2a >= m2b && m2b >= Rational::ONE) || a.edge_count() == 0 {
        return Ok(PairCheck {
            ok: false,
            asym: None,
            strict: None,
        });
    }
    let r = calc.asym_density_against(a, m2b)?;
    let balanced = r.strict || m2a == m2b;
    let bounded = target.is_none_or(|t| t >= r.value);
    Ok(PairCheck {
        ok: balanced && bounded,
        asym: Some(r.value),
        strict: Some(r.strict),
    })
}

/// Checks the k-partition hypotheses for `(K, G)` with auxiliary graph `H`.
///
/// Condition ids: `partition`, `join`, `strict-balance`, `vertex-deletion`,
/// `zero-statement`.
pub fn check_thm31(k_graph: &Graph, g: &Graph, h: &Graph, k: usize, registry: &AssumptionRegistry) -> Result<HypothesisReport> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    let calc = DensityCalculator::default();
    let mut conditions = Vec::new();

    let p = check_partition_property(g, h, k)?;
    conditions.push(Condition::new(
        "partition",
        p.status,
        Evidence {
            partition: p.counterexample,
            note: p.note.or_else(|| Some(format!("{} set partitions examined", p.partitions))),
            ..Evidence::default()
        },
    ));

    let j = if k * h.n() > crate::graph::MAX_VERTICES {
        JoinVerdict {
            status: Status::Unknown,
            embedding: None,
            note: Some(format!("join of {k} copies exceeds {} vertices", crate::graph::MAX_VERTICES)),
        }
    } else {
        check_join_property(g, h, k)?
    };
    conditions.push(Condition::new(
        "join",
        j.status,
        Evidence {
            embedding: j.embedding,
            note: j.note,
            ..Evidence::default()
        },
    ));

    let densities = capped((|| Ok((calc.m2(k_graph)?.value, calc.m2(g)?.value, calc.m2(h)?.value)))())?;
    match densities {
        Err(note) => {
            conditions.push(Condition::unknown("strict-balance", note.clone()));
            conditions.push(Condition::unknown("vertex-deletion", note));
        }
        Ok((m2k, m2g, m2h)) => {
            let mut ev = Evidence::default();
            ev.densities.insert(key("m2", "K"), m2k);
            ev.densities.insert(key("m2", "G"), m2g);
            ev.densities.insert(key("m2", "H"), m2h);
            let vs_g = pair_check(&calc, k_graph, m2k, m2g, None)?;
            let vs_h = pair_check(&calc, k_graph, m2k, m2h, None)?;
            if let Some(v) = vs_g.asym {
                ev.densities.insert(key("m2", "K,G"), v);
            }
            if let Some(v) = vs_h.asym {
                ev.densities.insert(key("m2", "K,H"), v);
            }
            let yn = |b: Option<bool>| b.map_or("n/a", |b| if b { "true" } else { "false" });
            ev.note = Some(format!(
                "K strictly balanced w.r.t. m2(.,G): {}; w.r.t. m2(.,H): {}",
                yn(vs_g.strict),
                yn(vs_h.strict)
            ));
            conditions.push(Condition::new("strict-balance", Status::of(vs_g.ok && vs_h.ok), ev));
            conditions.push(vertex_deletion(&calc, k_graph, m2g, m2h)?);
        }
    }

    conditions.push(match registry.lookup(k_graph, h) {
        Some(e) => Condition::new(
            "zero-statement",
            Status::Assumed,
            Evidence {
                citation: Some(e.citation.clone()),
                ..Evidence::default()
            },
        ),
        None => Condition::unknown(
            "zero-statement",
            format!("no registry entry for ({}, {})", canonical_key(k_graph), canonical_key(h)),
        ),
    });

    let mut auxiliary = BTreeMap::new();
    auxiliary.insert("H".to_string(), emit_graph6(h));
    if let Some(del) = conditions
        .iter()
        .find(|c| c.id == "vertex-deletion")
        .and_then(|c| c.evidence.deleted_from_k.clone())
    {
        auxiliary.insert("K'".to_string(), emit_graph6(&k_graph.delete_vertices(crate::bits::mask_of(&del))));
    }
    Ok(HypothesisReport {
        theorem: Theorem::KPartition,
        k,
        preconditions: Vec::new(),
        conditions,
        auxiliary,
        density_range: Some(partition_range(k)),
    })
}

/// First `K' = K - v` with `m2(K,H) >= m2(K',G)`, `m2(K') >= m2(G)` and the
/// balance disjunction.
fn vertex_deletion(calc: &DensityCalculator, k_graph: &Graph, m2g: Rational, m2h: Rational) -> Result<Condition> {
    const ID: &str = "vertex-deletion";
    if m2h <= Rational::ZERO || k_graph.edge_count() == 0 {
        return Ok(Condition::new(
            ID,
            Status::Failed,
            Evidence {
                note: Some("m2(K,H) undefined: K or H has no edge".into()),
                ..Evidence::default()
            },
        ));
    }
    let m2kh = calc.asym_density_against(k_graph, m2h)?.value;
    for v in 0..k_graph.n() {
        let kp = k_graph.delete_vertices(bit(v));
        let m2kp = calc.m2(&kp)?.value;
        let c = pair_check(calc, &kp, m2kp, m2g, Some(m2kh))?;
        if c.ok {
            let mut ev = Evidence {
                deleted_from_k: Some(vec![v]),
                note: Some(format!("K' strictly balanced w.r.t. m2(.,G): {}", c.strict == Some(true))),
                ..Evidence::default()
            };
            ev.densities.insert(key("m2", "K,H"), m2kh);
            ev.densities.insert(key("m2", "K',G"), c.asym.expect("computed when ok"));
            ev.densities.insert(key("m2", "K'"), m2kp);
            ev.densities.insert(key("m2", "G"), m2g);
            return Ok(Condition::new(ID, Status::Verified, ev));
        }
    }
    let mut ev = Evidence {
        note: Some(format!("none of the {} one-vertex deletions qualifies", k_graph.n())),
        ..Evidence::default()
    };
    ev.densities.insert(key("m2", "K,H"), m2kh);
    ev.densities.insert(key("m2", "G"), m2g);
    if k_graph.n() > 0 {
        let kp = k_graph.delete_vertices(1);
        let m2kp = calc.m2(&kp)?.value;
        ev.densities.insert(key("m2", "K-0"), m2kp);
        if kp.edge_count() > 0 && m2g > Rational::ZERO {
            ev.densities.insert(key("m2", "K-0,G"), calc.asym_density_against(&kp, m2g)?.value);
        }
    }
    Ok(Condition::new(ID, Status::Failed, ev))
}

/// Checks the chromatic-route hypotheses for `(K, G)`.
///
/// Precondition ids: `density-order`, `balanced`, `chromatic`, `m-density`.
/// Condition ids: `one-vertex-deletion`, `two-vertex-deletion`, `sparse-partite`.
pub fn check_thm32(k_graph: &Graph, g: &Graph, _registry: &AssumptionRegistry) -> Result<HypothesisReport> {
    let calc = DensityCalculator::default();
    let mut pre = Vec::new();
    let mut conditions = Vec::new();
    let mut auxiliary = BTreeMap::new();

    let chi = match chromatic_number(g) {
        Ok(Bounded::Done(c)) => Ok(c),
        Ok(Bounded::Unknown { budget }) => Err(format!("chromatic number search exhausted {budget} nodes")),
        Err(e @ Error::CapExceeded { .. }) => Err(e.to_string()),
        Err(e) => return Err(e),
    };
    let k = chi.as_ref().map_or(0, |c| c.chromatic_number);

    let base = capped((|| {
        Ok((
            calc.m2(k_graph)?.value,
            calc.m2(g)?.value,
            ev_density(k_graph)?,
            calc.m_density(k_graph)?.value,
            calc.m_density(g)?.value,
        ))
    })())?;
    let mut densities: Option<(Rational, Rational)> = None;
    match base {
        Err(note) => {
            for id in ["density-order", "balanced", "m-density"] {
                pre.push(Condition::unknown(id, note.clone()));
            }
        }
        Ok((m2k, m2g, dk, mk, mg)) => {
            let mut ev = Evidence::default();
            ev.densities.insert(key("m2", "K"), m2k);
            ev.densities.insert(key("m2", "G"), m2g);
            pre.push(Condition::new("density-order", Status::of(m2k >= m2g && m2g >= Rational::ONE), ev));
            let mut ev = Evidence::default();
            ev.densities.insert(key("d", "K"), dk);
            ev.densities.insert(key("m", "K"), mk);
            pre.push(Condition::new("balanced", Status::of(dk == mk), ev));
            let mut ev = Evidence::default();
            ev.densities.insert(key("m", "G"), mg);
            ev.densities.insert(key("d", "K"), dk);
            pre.push(Condition::new("m-density", Status::of(mg <= dk), ev));
            densities = Some((m2g, dk));
        }
    }
    pre.insert(
        2,
        match &chi {
            Ok(c) => Condition::new(
                "chromatic",
                Status::of(c.chromatic_number >= 3),
                Evidence {
                    classes: Some(c.colors.clone()),
                    note: Some(format!("chi(G) = {}", c.chromatic_number)),
                    ..Evidence::default()
                },
            ),
            Err(note) => Condition::unknown("chromatic", note.clone()),
        },
    );

    match densities {
        None => {
            conditions.push(Condition::unknown("one-vertex-deletion", "densities unavailable".into()));
            conditions.push(Condition::unknown("two-vertex-deletion", "densities unavailable".into()));
        }
        Some((m2g, dk)) => {
            let one = one_vertex_deletion(&calc, k_graph, g, dk)?;
            if let (Some(kd), Some(gd)) = (&one.evidence.deleted_from_k, &one.evidence.deleted_from_g) {
                auxiliary.insert("K'".into(), emit_graph6(&k_graph.delete_vertices(crate::bits::mask_of(kd))));
                auxiliary.insert("G'".into(), emit_graph6(&g.delete_vertices(crate::bits::mask_of(gd))));
            }
            conditions.push(one);
            let two = two_vertex_deletion(&calc, k_graph, m2g, dk)?;
            if let Some(kd) = &two.evidence.deleted_from_k {
                auxiliary.insert("K''".into(), emit_graph6(&k_graph.delete_vertices(crate::bits::mask_of(kd))));
            }
            conditions.push(two);
        }
    }

    conditions.push(if k >= 2 {
        let s = check_sparse_partite_embedding(g, k)?;
        Condition::new(
            "sparse-partite",
            s.status,
            Evidence {
                classes: s.classes,
                note: s.note,
                ..Evidence::default()
            },
        )
    } else {
        Condition::unknown("sparse-partite", "needs chi(G) >= 2".into())
    });

    let density_range = (k >= 3).then(|| {
        let k = k as i64;
        DensityRange {
            low: Rational::frac(k - 3, k - 2),
            high: Rational::frac(k - 2, k - 1),
            low_closed: false,
        }
    });
    Ok(HypothesisReport {
        theorem: Theorem::Chromatic,
        k,
        preconditions: pre,
        conditions,
        auxiliary,
        density_range,
    })
}

fn one_vertex_deletion(calc: &DensityCalculator, k_graph: &Graph, g: &Graph, dk: Rational) -> Result<Condition> {
    const ID: &str = "one-vertex-deletion";
    let kps: Vec<(Graph, Rational)> = (0..k_graph.n())
        .map(|v| {
            let kp = k_graph.delete_vertices(bit(v));
            let m = calc.m2(&kp)?.value;
            Ok((kp, m))
        })
        .collect::<Result<_>>()?;
    let m2gps: Vec<Rational> = (0..g.n())
        .map(|v| Ok(calc.m2(&g.delete_vertices(bit(v)))?.value))
        .collect::<Result<_>>()?;
    for (i, (kp, m2kp)) in kps.iter().enumerate() {
        for (j, &m2gp) in m2gps.iter().enumerate() {
            let c = pair_check(calc, kp, *m2kp, m2gp, Some(dk))?;
            if c.ok {
                let mut ev = Evidence {
                    deleted_from_k: Some(vec![i]),
                    deleted_from_g: Some(vec![j]),
                    note: Some(format!("K' strictly balanced w.r.t. m2(.,G'): {}", c.strict == Some(true))),
                    ..Evidence::default()
                };
                ev.densities.insert(key("d", "K"), dk);
                ev.densities.insert(key("m2", "K',G'"), c.asym.expect("computed when ok"));
                ev.densities.insert(key("m2", "K'"), *m2kp);
                ev.densities.insert(key("m2", "G'"), m2gp);
                return Ok(Condition::new(ID, Status::Verified, ev));
            }
        }
    }
    let mut ev = Evidence {
        note: Some(format!(
            "none of the {} pairs of one-vertex deletions qualifies",
            kps.len() * m2gps.len()
        )),
        ..Evidence::default()
    };
    ev.densities.insert(key("d", "K"), dk);
    Ok(Condition::new(ID, Status::Failed, ev))
}

fn two_vertex_deletion(calc: &DensityCalculator, k_graph: &Graph, m2g: Rational, dk: Rational) -> Result<Condition> {
    const ID: &str = "two-vertex-deletion";
    let mut found: Option<Result<Condition>> = None;
    let mut best: Option<(Vec<usize>, Rational, Option<Rational>)> = None;
    for_each_subset_of_size(k_graph.vertex_mask(), 2, |pair| {
        let kpp = k_graph.delete_vertices(pair);
        let step = (|| {
            let m2kpp = calc.m2(&kpp)?.value;
            let c = pair_check(calc, &kpp, m2kpp, m2g, Some(dk))?;
            Ok((m2kpp, c))
        })();
        match step {
            Err(e) => {
                found = Some(Err(e));
                false
            }
            Ok((m2kpp, c)) if c.ok => {
                let mut ev = Evidence {
                    deleted_from_k: Some(to_vec(pair)),
                    note: Some(format!("K'' strictly balanced w.r.t. m2(.,G): {}", c.strict == Some(true))),
                    ..Evidence::default()
                };
                ev.densities.insert(key("d", "K"), dk);
                ev.densities.insert(key("m2", "K'',G"), c.asym.expect("computed when ok"));
                ev.densities.insert(key("m2", "K''"), m2kpp);
                ev.densities.insert(key("m2", "G"), m2g);
                found = Some(Ok(Condition::new(ID, Status::Verified, ev)));
                false
            }
            Ok((m2kpp, c)) => {
                if best.is_none() {
                    best = Some((to_vec(pair), m2kpp, c.asym));
                }
                true
            }
        }
    });
    if let Some(r) = found {
        return r;
    }
    let mut ev = Evidence {
        note: Some("no two-vertex deletion qualifies; densities shown for the first pair".into()),
        ..Evidence::default()
    };
    ev.densities.insert(key("d", "K"), dk);
    ev.densities.insert(key("m2", "G"), m2g);
    if let Some((pair, m2kpp, asym)) = best {
        ev.deleted_from_k = Some(pair);
        ev.densities.insert(key("m2", "K''"), m2kpp);
        if let Some(a) = asym {
            ev.densities.insert(key("m2", "K'',G"), a);
        }
    }
    Ok(Condition::new(ID, Status::Failed, ev))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    CliqueClique,
    CliqueVsCliqueMinusMatching,
    CliqueVsApexTree,
    StarApexVsApexTree,
    Chromatic,
    KPartition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    /// The threshold is `n^exponent`.
    pub exponent: Rational,
    pub route: Route,
    pub provenance: String,
    pub k: usize,
    pub density_range: DensityRange,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<String>,
    /// Every hypothesis Verified or Assumed on this instance.
    pub hypotheses_verified: bool,
    pub hypothesis: HypothesisReport,
    pub assumptions: Vec<RegistryEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum ThresholdOutcome {
    Exponent(Box<ThresholdReport>),
    NoRoute { failures: Vec<String> },
}

impl ThresholdOutcome {
    pub fn exponent(&self) -> Option<Rational> {
        match self {
            ThresholdOutcome::Exponent(r) => Some(r.exponent),
            ThresholdOutcome::NoRoute { .. } => None,
        }
    }

    pub fn report(&self) -> Option<&ThresholdReport> {
        match self {
            ThresholdOutcome::Exponent(r) => Some(r.as_ref()),
            ThresholdOutcome::NoRoute { .. } => None,
        }
    }
}

/// Smallest `k >= 2` with `d <= (k-1)/k`.
fn partition_k(d: Rational) -> usize {
    ((Rational::ONE - d).recip().expect("d < 1").ceil()).max(2) as usize
}

fn closed_range(k: usize) -> DensityRange {
    DensityRange {
        low_closed: true,
        ..partition_range(k)
    }
}

fn assumptions_of(h: &HypothesisReport, registry: &AssumptionRegistry, red: &Graph, blue: &Graph) -> Vec<RegistryEntry> {
    match h.condition("zero-statement") {
        Some(c) if c.status == Status::Assumed => registry.lookup(red, blue).into_iter().cloned().collect(),
        _ => Vec::new(),
    }
}

/// Threshold exponent for `(K, G)` at density `d`.
///
/// Routes are tried in order: clique pairs, clique vs clique minus a
/// matching, clique vs apex tree, star-apex vs apex tree, then the generic
/// chromatic route and, when `h` is given, the generic k-partition route.
/// The named routes return their closed-form exponent and record whether
/// every hypothesis checked out on the instance; the generic routes only
/// return an exponent when all hypotheses pass.
pub fn threshold_exponent(
    k_graph: &Graph,
    g: &Graph,
    d: Rational,
    registry: &AssumptionRegistry,
    h: Option<&Graph>,
) -> Result<ThresholdOutcome> {
    if d <= Rational::ZERO || d >= Rational::ONE {
        return Err(Error::Parameter(format!("density d must lie in (0, 1), got {d}")));
    }
    let calc = DensityCalculator::default();
    let mut failures = Vec::new();
    let half = Rational::frac(1, 2);

    let t = complete_order(k_graph);
    if let (Some(t), Some(s)) = (t, complete_order(g)) {
        let k = partition_k(d);
        if t >= s && s > 2 * k {
            let hh = Graph::complete(s.div_ceil(k))?;
            let alternative = (d == partition_range(k).high && s > 2 * (k + 1))
                .then(|| format!("d is also the lower end of the k={} range", k + 1));
            return partition_route(&calc, k_graph, g, &hh, k, registry, Route::CliqueClique, "clique-clique route", alternative);
        }
        failures.push(format!("clique-clique route: needs t >= s >= 2k+1, got t={t}, s={s}, k={k}"));
    }
    if let (Some(t), Some(s)) = (t, clique_minus_matching_order(g)) {
        let k = partition_k(d);
        if t >= s && s >= 7 && 3 * k < s {
            let hh = GraphSpec::CliqueMinusMatching { s: s.div_ceil(k) }.build()?;
            let alternative = (d == partition_range(k).high && 3 * (k + 1) < s)
                .then(|| format!("d is also the lower end of the k={} range", k + 1));
            return partition_route(
                &calc,
                k_graph,
                g,
                &hh,
                k,
                registry,
                Route::CliqueVsCliqueMinusMatching,
                "clique vs clique-minus-matching route",
                alternative,
            );
        }
        failures.push(format!(
            "clique vs clique-minus-matching route: needs t >= s >= 7 and k < s/3, got t={t}, s={s}, k={k}"
        ));
    }
    let apex_tree = recognize_apex_tree(g);
    if let (Some(t), Some(_)) = (t, &apex_tree) {
        if t >= 5 && d <= half {
            return chromatic_route(k_graph, g, registry, Route::CliqueVsApexTree, "clique vs apex-tree route");
        }
        failures.push(format!("clique vs apex-tree route: needs t >= 5 and d <= 1/2, got t={t}"));
    }
    if let (Some(t), Some(_)) = (star_apex_order(k_graph), &apex_tree) {
        if t >= 4 && d <= half {
            return chromatic_route(k_graph, g, registry, Route::StarApexVsApexTree, "star-apex vs apex-tree route");
        }
        failures.push(format!("star-apex vs apex-tree route: needs t >= 4 and d <= 1/2, got t={t}"));
    }

    let report = check_thm32(k_graph, g, registry)?;
    match report.density_range {
        Some(r) if r.contains(d) && report.all_pass() => {
            let exponent = -ev_density(k_graph)?.recip()?;
            return Ok(ThresholdOutcome::Exponent(Box::new(ThresholdReport {
                exponent,
                route: Route::Chromatic,
                provenance: format!("chromatic route, k={}", report.k),
                k: report.k,
                density_range: r,
                alternative: None,
                hypotheses_verified: true,
                assumptions: Vec::new(),
                hypothesis: report,
            })));
        }
        Some(r) if !r.contains(d) => failures.push(format!("chromatic route: d={d} outside ({}, {}]", r.low, r.high)),
        None => failures.push("chromatic route: needs chi(G) >= 3".into()),
        Some(_) => failures.extend(report.failures().into_iter().map(|f| format!("chromatic route: {f}"))),
    }

    if let Some(hh) = h {
        let k = partition_k(d);
        let report = check_thm31(k_graph, g, hh, k, registry)?;
        if report.all_pass() {
            let exponent = -calc.asym_density_against(k_graph, calc.m2(hh)?.value)?.value.recip()?;
            return Ok(ThresholdOutcome::Exponent(Box::new(ThresholdReport {
                exponent,
                route: Route::KPartition,
                provenance: format!("k-partition route, k={k}, H={}", short_name(hh)),
                k,
                density_range: partition_range(k),
                alternative: None,
                hypotheses_verified: true,
                assumptions: assumptions_of(&report, registry, k_graph, hh),
                hypothesis: report,
            })));
        }
        failures.extend(report.failures().into_iter().map(|f| format!("k-partition route: {f}")));
    } else {
        failures.push("k-partition route: no auxiliary graph H supplied".into());
    }
    Ok(ThresholdOutcome::NoRoute { failures })
}

#[allow(clippy::too_many_arguments)]
fn partition_route(
    calc: &DensityCalculator,
    k_graph: &Graph,
    g: &Graph,
    h: &Graph,
    k: usize,
    registry: &AssumptionRegistry,
    route: Route,
    label: &str,
    alternative: Option<String>,
) -> Result<ThresholdOutcome> {
    let report = check_thm31(k_graph, g, h, k, registry)?;
    let exponent = -calc.asym_density_against(k_graph, calc.m2(h)?.value)?.value.recip()?;
    Ok(ThresholdOutcome::Exponent(Box::new(ThresholdReport {
        exponent,
        route,
        provenance: format!("{label}, k={k}, H={}", short_name(h)),
        k,
        density_range: closed_range(k),
        alternative,
        hypotheses_verified: report.all_pass(),
        assumptions: assumptions_of(&report, registry, k_graph, h),
        hypothesis: report,
    })))
}

fn chromatic_route(k_graph: &Graph, g: &Graph, registry: &AssumptionRegistry, route: Route, label: &str) -> Result<ThresholdOutcome> {
    let report = check_thm32(k_graph, g, registry)?;
    let exponent = -ev_density(k_graph)?.recip()?;
    Ok(ThresholdOutcome::Exponent(Box::new(ThresholdReport {
        exponent,
        route,
        provenance: format!("{label}, k=3"),
        k: 3,
        density_range: DensityRange {
            low: Rational::ZERO,
            high: Rational::frac(1, 2),
            low_closed: false,
        },
        alternative: None,
        hypotheses_verified: report.all_pass() && report.k == 3,
        assumptions: Vec::new(),
        hypothesis: report,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        s.parse::<GraphSpec>().unwrap().build().unwrap()
    }

    fn status(r: &HypothesisReport, id: &str) -> Status {
        r.condition(id).unwrap().status
    }

    #[test]
    fn partition_route_k_selection() {
        assert_eq!(partition_k(Rational::frac(1, 3)), 2);
        assert_eq!(partition_k(Rational::frac(1, 2)), 2);
        assert_eq!(partition_k(Rational::frac(3, 5)), 3);
        assert_eq!(partition_k(Rational::frac(2, 3)), 3);
        assert_eq!(partition_k(Rational::frac(7, 10)), 4);
    }

    #[test]
    fn thm31_c5_fails_partition() {
        let r = check_thm31(&g("K5"), &g("C5"), &g("K3"), 2, &AssumptionRegistry::default()).unwrap();
        assert_eq!(status(&r, "partition"), Status::Failed);
        assert!(r.condition("partition").unwrap().evidence.partition.is_some());
    }

    #[test]
    fn thm31_clique_minus_matching() {
        let r = check_thm31(&g("K7"), &g("cmm:7"), &g("cmm:4"), 2, &AssumptionRegistry::default()).unwrap();
        for id in ["partition", "join", "strict-balance", "vertex-deletion"] {
            assert_eq!(status(&r, id), Status::Verified, "{id}");
        }
        let z = r.condition("zero-statement").unwrap();
        assert_eq!(z.status, Status::Assumed);
        assert_eq!(z.evidence.citation.as_deref(), Some("Theorem 1.5 in [BHH] (Bowtell, Hancock, Hyde)"));
    }

    #[test]
    fn thm32_k5_c5() {
        let r = check_thm32(&g("K5"), &g("C5"), &AssumptionRegistry::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert_eq!(r.k, 3);
    }

    #[test]
    fn threshold_examples() {
        let reg = AssumptionRegistry::default();
        let o = threshold_exponent(&g("K5"), &g("K5"), Rational::frac(1, 2), &reg, None).unwrap();
        let r = o.report().unwrap();
        assert_eq!(r.exponent, Rational::frac(-7, 20));
        assert_eq!(r.provenance, "clique-clique route, k=2, H=K3");
        let o = threshold_exponent(&g("K6"), &g("C7"), Rational::frac(1, 3), &reg, None).unwrap();
        assert_eq!(o.exponent(), Some(Rational::frac(-2, 5)));
        let o = threshold_exponent(&g("starapex:5"), &g("C5"), Rational::frac(1, 4), &reg, None).unwrap();
        assert_eq!(o.exponent(), Some(Rational::frac(-2, 3)));
        let o = threshold_exponent(&g("K5"), &g("C6"), Rational::frac(1, 4), &reg, None).unwrap();
        assert!(matches!(o, ThresholdOutcome::NoRoute { .. }));
        assert!(threshold_exponent(&g("K5"), &g("C5"), Rational::ONE, &reg, None).is_err());
    }
}
