mod common;

use common::*;
use ramsey_core::lab::{
    lower_bound_witness_31, lower_bound_witness_32, perturb, run_experiment, sample_gnp, sample_gnp_trial,
    wilson_interval, BaseGraph, ColoredWitness, Construction, EdgeProbability, SimConfig,
};
use ramsey_core::ramsey::{find_mono_copy, ArrowOutcome, Color};
use ramsey_core::{Graph, Rational, SearchOutcome};

const BUDGET: u64 = 1_000_000_000;

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn witness(out: SearchOutcome<ColoredWitness>) -> ColoredWitness {
    match out {
        SearchOutcome::Found(w) => w,
        other => panic!("no witness: {other:?}"),
    }
}

/// Independent check: no red `k`, no blue `g`.
fn sound(w: &ColoredWitness, k: &Graph, g: &Graph) -> bool {
    brute_embedding(&color_matrix(&w.certificate, Color::Red), k).is_none()
        && brute_embedding(&color_matrix(&w.certificate, Color::Blue), g).is_none()
}

fn sweep(seed: u64) -> SimConfig {
    SimConfig {
        base: BaseGraph::Balanced { parts: 2 },
        red: "K3".parse().unwrap(),
        blue: "K3".parse().unwrap(),
        ns: vec![10],
        ps: (0..=10).map(|i| EdgeProbability::Exact(r(i, 10))).collect(),
        trials: 50,
        seed,
        budget: BUDGET,
        symmetry_pruning: false,
    }
}

#[test]
fn sample_endpoints() {
    assert_eq!(sample_gnp(9, Rational::ZERO, 1).unwrap(), Graph::empty(9).unwrap());
    assert_eq!(sample_gnp(9, Rational::ONE, 1).unwrap(), Graph::complete(9).unwrap());
    assert_eq!(sample_gnp(12, r(1, 3), 77).unwrap(), sample_gnp(12, r(1, 3), 77).unwrap());
    assert!(sample_gnp(5, r(3, 2), 0).is_err());
    assert!(sample_gnp(65, r(1, 2), 0).is_err());
}

#[test]
fn mean_edge_count_at_one_half() {
    let total: usize = (0..200).map(|s| sample_gnp(20, r(1, 2), s).unwrap().edge_count()).sum();
    let mean = total as f64 / 200.0;
    let sigma = (190.0f64 * 0.25).sqrt();
    assert!((mean - 95.0).abs() <= 3.0 * sigma, "mean {mean}");
}

#[test]
fn single_edge_frequency_at_one_third() {
    let hits = (0..10_000u64).filter(|&t| sample_gnp_trial(6, r(1, 3), 99, t).unwrap().has_edge(2, 4)).count();
    let expected = 10_000.0 / 3.0;
    let sigma = (10_000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    assert!((hits as f64 - expected).abs() <= 5.0 * sigma, "{hits} hits");
}

#[test]
fn samples_are_coupled_across_p() {
    for t in 0..20 {
        let lo = sample_gnp_trial(15, r(1, 5), 3, t).unwrap();
        let hi = sample_gnp_trial(15, r(3, 5), 3, t).unwrap();
        assert_eq!(lo.union(&hi).unwrap(), hi);
    }
}

#[test]
fn perturb_examples() {
    let k33 = g("cmp:3,3");
    assert_eq!(perturb(&k33, &Graph::empty(6).unwrap()).unwrap(), k33);
    let inside = Graph::from_edges(6, &[(0, 1)]).unwrap();
    assert_eq!(perturb(&k33, &inside).unwrap().edge_count(), 10);
    assert_eq!(perturb(&k33, &k33).unwrap(), k33);
    assert!(perturb(&k33, &Graph::empty(5).unwrap()).is_err());
}

#[test]
fn power_probabilities() {
    let p: EdgeProbability = "1/2*n^-1/2".parse().unwrap();
    assert_eq!(p.to_string(), "1/2*n^-1/2");
    // 1/2 * 16^(-1/2) = 1/8, exactly dyadic
    assert_eq!(p.at(16).unwrap(), r(1, 8));
    let q: EdgeProbability = "n^-1".parse().unwrap();
    assert_eq!(q.at(4).unwrap(), r(1, 4));
    let big: EdgeProbability = "3*n^0".parse().unwrap();
    assert_eq!(big.at(10).unwrap(), Rational::ONE);
    let third: EdgeProbability = "1/3*n^0".parse().unwrap();
    assert_eq!(third.at(7).unwrap().denom(), 1 << 53);
}

#[test]
fn witness31_at_p_zero_is_all_blue_bipartite() {
    let (k3, k2) = (g("K3"), g("K2"));
    for n in [6, 8, 10, 7] {
        let w = witness(lower_bound_witness_31(n, 2, &k3, &k2, &k3, Rational::ZERO, 0, BUDGET).unwrap());
        assert!(w.verified);
        assert_eq!(w.construction, Construction::KPartition);
        assert!(w.certificate.red_edges().is_empty());
        assert!(sound(&w, &k3, &k3));
    }
}

#[test]
fn witness31_clique_minus_matching() {
    let (k7, g7, h) = (g("K7"), g("cmm:7"), g("cmm:4"));
    let w = witness(lower_bound_witness_31(12, 2, &k7, &h, &g7, Rational::ZERO, 0, BUDGET).unwrap());
    assert!(w.verified);
    assert_eq!(w.host(), &g("cmp:6,6"));
    assert!(sound(&w, &k7, &g7));
}

#[test]
fn witness31_seeded_regression() {
    let (k4, k2) = (g("K4"), g("K2"));
    let w = witness(lower_bound_witness_31(10, 2, &k4, &k2, &k4, r(1, 20), 9, BUDGET).unwrap());
    assert!(w.verified);
    assert!(sound(&w, &k4, &k4));
    let json = serde_json::to_value(&w.certificate).unwrap();
    assert_eq!(json, serde_json::json!({"host": "I_N~vrw}O", "red_edges": [[0, 1], [2, 4], [3, 4], [7, 9]]}));
}

#[test]
fn witness32_examples() {
    let (k5, c5) = (g("K5"), g("C5"));
    let w = witness(lower_bound_witness_32(12, 3, &k5, &c5, Rational::ZERO, 0).unwrap());
    assert!(w.verified);
    assert_eq!(w.construction, Construction::Chromatic);
    assert!(sound(&w, &k5, &c5));

    // two red K6 inside the parts
    let w = witness(lower_bound_witness_32(12, 3, &k5, &c5, Rational::ONE, 0).unwrap());
    assert!(!w.verified);
    let v = w.violation.as_ref().unwrap();
    assert_eq!(v.color, Color::Red);
    assert!(!sound(&w, &k5, &c5));
    assert!(find_mono_copy(&w.certificate, &k5, &c5).is_found());
}

#[test]
fn witness32_seeded_regression() {
    let (k, c5) = (g("starapex:4"), g("C5"));
    let w = witness(lower_bound_witness_32(10, 3, &k, &c5, r(1, 10), 9).unwrap());
    assert!(w.verified);
    assert!(sound(&w, &k, &c5));
    let json = serde_json::to_value(&w.certificate).unwrap();
    assert_eq!(
        json,
        serde_json::json!({"host": "I_N~vry}O", "red_edges": [[0, 1], [2, 4], [3, 4], [6, 8], [7, 9]]})
    );
}

#[test]
fn witness_parameter_errors() {
    let k3 = g("K3");
    assert!(lower_bound_witness_31(6, 1, &k3, &k3, &k3, Rational::ZERO, 0, BUDGET).is_err());
    assert!(lower_bound_witness_32(6, 2, &k3, &k3, Rational::ZERO, 0).is_err());
}

#[test]
fn experiment_endpoints_on_k33() {
    let mut cfg = SimConfig {
        base: "balanced:2".parse().unwrap(),
        red: "K3".parse().unwrap(),
        blue: "K3".parse().unwrap(),
        ns: vec![6],
        ps: vec![EdgeProbability::Exact(Rational::ONE), EdgeProbability::Exact(Rational::ZERO)],
        trials: 5,
        seed: 1,
        budget: BUDGET,
        symmetry_pruning: false,
    };
    let res = run_experiment(&cfg).unwrap();
    assert_eq!((res.cells[0].ramsey, res.cells[0].notramsey), (5, 0));
    assert_eq!((res.cells[1].ramsey, res.cells[1].notramsey), (0, 5));
    assert_eq!(res.cells[1].wilson_low, Rational::ZERO);
    cfg.trials = 0;
    assert!(run_experiment(&cfg).is_err());
}

#[test]
fn k55_sweep_regression() {
    let res = run_experiment(&sweep(2024)).unwrap();
    let table: Vec<(String, u64, u64, u64, String, String)> = res
        .cells
        .iter()
        .map(|c| (c.p.to_string(), c.ramsey, c.notramsey, c.unknown, c.wilson_low.to_string(), c.wilson_high.to_string()))
        .collect();
    let expected = [
        ("0/1", 0, 50, 0, "0/1", "17837/250000"),
        ("1/10", 0, 50, 0, "0/1", "17837/250000"),
        ("1/5", 1, 49, 0, "3539/1000000", "20991/200000"),
        ("3/10", 4, 46, 0, "31549/1000000", "188383/1000000"),
        ("2/5", 9, 41, 0, "97701/1000000", "307961/1000000"),
        ("1/2", 17, 33, 0, "224369/1000000", "239231/500000"),
        ("3/5", 33, 17, 0, "260769/500000", "775631/1000000"),
        ("7/10", 40, 10, 0, "167407/250000", "887563/1000000"),
        ("4/5", 50, 0, 0, "232163/250000", "1/1"),
        ("9/10", 50, 0, 0, "232163/250000", "1/1"),
        ("1/1", 50, 0, 0, "232163/250000", "1/1"),
    ];
    let expected: Vec<_> =
        expected.iter().map(|&(p, a, b, c, lo, hi)| (p.to_string(), a, b, c, lo.to_string(), hi.to_string())).collect();
    assert_eq!(table, expected);
}

#[test]
fn per_trial_indicator_is_monotone_in_p() {
    let res = run_experiment(&sweep(11)).unwrap();
    for t in 0..50 {
        let row: Vec<ArrowOutcome> = res.cells.iter().map(|c| c.outcomes[t]).collect();
        assert!(!row.contains(&ArrowOutcome::Unknown));
        let first = row.iter().position(|&o| o == ArrowOutcome::Ramsey).unwrap_or(row.len());
        assert!(row[first..].iter().all(|&o| o == ArrowOutcome::Ramsey), "trial {t}: {row:?}");
    }
}

#[test]
fn experiment_is_deterministic_across_thread_counts() {
    let cfg = SimConfig { trials: 10, ..sweep(5) };
    let a = run_experiment(&cfg).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| run_experiment(&cfg).unwrap());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
}

#[test]
fn wilson_bounds() {
    assert_eq!(wilson_interval(0, 0), (Rational::ZERO, Rational::ONE));
    assert_eq!(wilson_interval(5, 10), (r(236593, 1_000_000), r(763407, 1_000_000)));
    let (lo, hi) = wilson_interval(3, 7);
    assert!(lo < r(3, 7) && r(3, 7) < hi);
}

#[test]
fn csv_has_documented_columns() {
    let res = run_experiment(&SimConfig {
        trials: 3,
        ps: vec![EdgeProbability::Exact(r(1, 2))],
        ..sweep(1)
    })
    .unwrap();
    let csv = res.to_csv().unwrap();
    assert!(csv.starts_with("n,p,trials,ramsey,notramsey,unknown,wilson_low,wilson_high\n10,1/2,3,"));
}
