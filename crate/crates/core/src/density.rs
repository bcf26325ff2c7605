//! Exact density functionals: 2-density `d2`, its maximum `m2`, the
//! asymmetric density `m2(H1, H2)`, the m-density `max e/v`, and plain `e/v`.
//!
//! Each maximum is taken over all subgraphs. For a fixed vertex set every
//! functional here is strictly increasing in the number of edges (once the
//! value is positive), so it suffices to scan induced subgraphs: `2^n`
//! vertex subsets. For the same reason a graph is strictly balanced exactly
//! when no proper vertex subset attains the maximum, which is what the
//! `strict` flag reports.

use serde::Serialize;

use crate::bits::{full_mask, lex_less_same_size, to_vec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Largest vertex count for which subset enumeration runs by default.
pub const DEFAULT_CAP: usize = 16;
const HARD_CAP: usize = 26;

/// A maximum of a density functional with the subset attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub value: Rational,
    /// Smallest maximising vertex subset (by size, then lexicographically).
    pub witness: Vec<usize>,
    /// `true` iff no proper subgraph attains `value`.
    pub strict: bool,
}

/// `d2` of a graph with `v` vertices and `e` edges.
pub fn d2(v: usize, e: usize) -> Rational {
    match (v, e) {
        (_, 0) => Rational::ZERO,
        (2, 1) => Rational::frac(1, 2),
        _ => Rational::frac(e as i64 - 1, v as i64 - 2),
    }
}

/// `d2(g)` on the whole graph.
pub fn two_density(g: &Graph) -> Rational {
    d2(g.n(), g.edge_count())
}

/// `e(g)/v(g)`.
pub fn ev_density(g: &Graph) -> Result<Rational> {
    if g.n() == 0 {
        return Err(Error::Parameter("e/v density of the graph with no vertices".into()));
    }
    Ok(Rational::frac(g.edge_count() as i64, g.n() as i64))
}

/// Subset-enumeration engine with a configurable vertex cap.
#[derive(Debug, Clone, Copy)]
pub struct DensityCalculator {
    cap: usize,
}

impl Default for DensityCalculator {
    fn default() -> Self {
        DensityCalculator { cap: DEFAULT_CAP }
    }
}

impl DensityCalculator {
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > HARD_CAP {
            return Err(Error::Parameter(format!(
                "enumeration cap {cap} above the hard limit {HARD_CAP}"
            )));
        }
        Ok(DensityCalculator { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, g: &Graph, what: &'static str) -> Result<()> {
        if g.n() > self.cap {
            return Err(Error::CapExceeded {
                what,
                n: g.n(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Maximises `value(v, e)` over nonempty vertex subsets where it is defined.
    fn maximize(
        &self,
        g: &Graph,
        value: impl Fn(usize, usize) -> Option<Rational>,
    ) -> Option<DensityReport> {
        let n = g.n();
        let size = 1usize << n;
        let mut edges = vec![0u16; size];
        let mut best: Option<(Rational, u64)> = None;
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let e = edges[rest] + (g.neighbors(low) & rest as u64).count_ones() as u16;
            edges[mask] = e;
            let v = mask.count_ones() as usize;
            let Some(val) = value(v, e as usize) else {
                continue;
            };
            let m = mask as u64;
            let better = match best {
                None => true,
                Some((b, bm)) => {
                    val > b
                        || (val == b
                            && (m.count_ones() < bm.count_ones()
                                || (m.count_ones() == bm.count_ones() && lex_less_same_size(m, bm))))
                }
            };
            if better {
                best = Some((val, m));
            }
        }
        best.map(|(value, mask)| DensityReport {
            value,
            witness: to_vec(mask),
            strict: mask == full_mask(n),
        })
    }

    /// `m2(g) = max d2(H')` over subgraphs `H'` of `g`.
    pub fn m2(&self, g: &Graph) -> Result<DensityReport> {
        self.check(g, "m2")?;
        if g.n() == 0 {
            return Ok(DensityReport {
                value: Rational::ZERO,
                witness: Vec::new(),
                strict: true,
            });
        }
        Ok(self.maximize(g, |v, e| Some(d2(v, e))).expect("nonempty graph"))
    }

    pub fn is_strictly_2_balanced(&self, g: &Graph) -> Result<bool> {
        Ok(self.m2(g)?.strict)
    }

    /// `m2(h1, h2)`: maximum of `e/(v - 2 + 1/m2(h2))` over subgraphs of `h1`
    /// with at least one edge.
    pub fn asym_density(&self, h1: &Graph, h2: &Graph) -> Result<DensityReport> {
        self.check(h1, "asymmetric density")?;
        self.check(h2, "asymmetric density")?;
        let m1 = self.m2(h1)?.value;
        let m2 = self.m2(h2)?.value;
        if m1 < m2 {
            return Err(Error::DensityOrder {
                first: m1.to_string(),
                second: m2.to_string(),
            });
        }
        self.asym_density_against(h1, m2)
    }

    /// As [`DensityCalculator::asym_density`] with `m2(h2)` supplied.
    pub fn asym_density_against(&self, h1: &Graph, m2_h2: Rational) -> Result<DensityReport> {
        self.check(h1, "asymmetric density")?;
        if h1.edge_count() == 0 {
            return Err(Error::Parameter("asymmetric density needs e(h1) >= 1".into()));
        }
        if m2_h2 <= Rational::ZERO {
            return Err(Error::Parameter("asymmetric density needs e(h2) >= 1".into()));
        }
        let inv = m2_h2.recip()?;
        let report = self
            .maximize(h1, |v, e| {
                (e >= 1).then(|| Rational::integer(e as i64) / (Rational::integer(v as i64 - 2) + inv))
            })
            .expect("h1 has an edge");
        Ok(report)
    }

    /// `true` iff no proper subgraph of `h1` with an edge attains `m2(h1, h2)`.
    pub fn is_strictly_balanced_wrt(&self, h1: &Graph, h2: &Graph) -> Result<bool> {
        Ok(self.asym_density(h1, h2)?.strict)
    }

    /// `m(g) = max e/v` over subgraphs with at least one vertex.
    pub fn m_density(&self, g: &Graph) -> Result<DensityReport> {
        self.check(g, "m-density")?;
        if g.n() == 0 {
            return Err(Error::Parameter("m-density of the graph with no vertices".into()));
        }
        Ok(self
            .maximize(g, |v, e| Some(Rational::frac(e as i64, v as i64)))
            .expect("nonempty graph"))
    }

    /// `e(g)/v(g) = m(g)`.
    pub fn is_balanced(&self, g: &Graph) -> Result<bool> {
        Ok(ev_density(g)? == self.m_density(g)?.value)
    }
}

pub fn m2(g: &Graph) -> Result<DensityReport> {
    DensityCalculator::default().m2(g)
}

pub fn is_strictly_2_balanced(g: &Graph) -> Result<bool> {
    DensityCalculator::default().is_strictly_2_balanced(g)
}

pub fn asym_density(h1: &Graph, h2: &Graph) -> Result<DensityReport> {
    DensityCalculator::default().asym_density(h1, h2)
}

pub fn is_strictly_balanced_wrt(h1: &Graph, h2: &Graph) -> Result<bool> {
    DensityCalculator::default().is_strictly_balanced_wrt(h1, h2)
}

pub fn m_density(g: &Graph) -> Result<DensityReport> {
    DensityCalculator::default().m_density(g)
}

pub fn is_balanced(g: &Graph) -> Result<bool> {
    DensityCalculator::default().is_balanced(g)
}
