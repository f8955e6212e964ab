//! Round simulation, finite-statistics certification and protocol examples.

use sdiqrng::bloch::behavior_from_strategy;
use sdiqrng::entropy::{max_certifiable_entropy, min_entropy, r43_quantum_bound};
use sdiqrng::protocol::{
    certify, i4_counterexample, r33_construction, r43_ideal, simulate_rounds, CellCounts, RoundLog,
};
use sdiqrng::witness::{quantum_bound_seesaw_axes, WitnessSpec};

#[test]
fn cell_frequencies_within_binomial_spread() {
    let spec = r43_ideal();
    let exact = spec.behavior();
    let log = simulate_rounds(&spec, 1_000_000, 1.0, (0, 0), 0.0, 0).unwrap();
    let counts = CellCounts::from_log(&log, 4, 3).unwrap();
    for x in 0..4 {
        for y in 0..3 {
            let n = counts.trials(x, y) as f64;
            let p = exact.get(x, y);
            let sigma = (p * (1.0 - p) / n).sqrt();
            let dev = (counts.estimate(x, y).unwrap() - p).abs();
            // 4σ keeps the twelve-cell family-wise miss rate below 0.1%
            assert!(dev < 4.0 * sigma, "cell ({x},{y}): {dev} vs σ {sigma}");
        }
    }
}

#[test]
fn empirical_behavior_converges() {
    let spec = r43_ideal();
    let exact = spec.behavior();
    let n = 1_000_000;
    let mut total = 0.0;
    for seed in 0..10 {
        let log = simulate_rounds(&spec, n, 1.0, (0, 0), 0.0, seed).unwrap();
        let est = CellCounts::from_log(&log, 4, 3).unwrap().behavior().unwrap();
        let tv: f64 = (0..4)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .map(|(x, y)| (est.get(x, y) - exact.get(x, y)).abs())
            .sum::<f64>()
            / 12.0;
        total += tv;
    }
    let mean = total / 10.0;
    assert!(mean < 5.0 * (12.0 / n as f64).sqrt(), "{mean}");
}

#[test]
fn radius_shrinks_with_more_rounds() {
    let spec = r43_ideal();
    let log = simulate_rounds(&spec, 400_000, 0.5, (0, 1), 0.0, 4).unwrap();
    let mut last = f64::INFINITY;
    for len in [50_000, 100_000, 200_000, 400_000] {
        let prefix = RoundLog { rounds: log.rounds[..len].to_vec(), seed: log.seed };
        let cert = certify(&prefix, &spec, 0.99).unwrap();
        assert!(cert.confidence_radius <= last, "{len}: {} > {last}", cert.confidence_radius);
        assert!(cert.certified_entropy_per_round <= max_certifiable_entropy());
        last = cert.confidence_radius;
    }
}

#[test]
fn simulation_is_reproducible() {
    let spec = r43_ideal();
    let a = simulate_rounds(&spec, 200_000, 0.1, (0, 1), 0.05, 9).unwrap();
    let b = simulate_rounds(&spec, 200_000, 0.1, (0, 1), 0.05, 9).unwrap();
    assert_eq!(a, b);
    let c = simulate_rounds(&spec, 200_000, 0.1, (0, 1), 0.05, 10).unwrap();
    assert_ne!(a, c);
    let mut csv = Vec::new();
    a.write_csv(&mut csv).unwrap();
    assert_eq!(RoundLog::read_csv(csv.as_slice()).unwrap().rounds, a.rounds);
}

#[test]
fn depolarized_witness_scales_linearly() {
    let spec = r43_ideal();
    for noise in [0.0, 0.05, 0.2] {
        let log = simulate_rounds(&spec, 600_000, 1.0, (0, 0), noise, 1).unwrap();
        let cert = certify(&log, &spec, 0.99).unwrap();
        let expected = (1.0 - noise) * r43_quantum_bound();
        assert!(
            (cert.witness_estimate - expected).abs() < 3.0 * cert.standard_error,
            "{noise}: {}",
            cert.witness_estimate
        );
    }
}

#[test]
fn three_preparations_fall_short_of_ceiling() {
    let h = min_entropy(&r33_construction().behavior());
    assert!(h <= max_certifiable_entropy() - 0.1, "{h}");
}

#[test]
fn i4_optimum_is_deterministic_on_one_cell() {
    let (bound, h) = i4_counterexample().unwrap();
    assert!((bound.value - 4.5).abs() < 1e-9);
    assert!(h < 1e-6);
    let s = bound.quantum_strategy().unwrap();
    assert!(!s.has_fixed_outcomes());
    let dot = s.preparations()[3].dot(&s.measurements()[0]);
    assert!((dot + 1.0).abs() < 1e-9, "{dot}");
}

#[test]
fn i4_without_fourth_preparation_keeps_some_randomness() {
    // axis-only optimum; every restart lands on a behavior with no 0/1 cell
    let w = WitnessSpec::i4().without_row(3).unwrap();
    for seed in 0..5 {
        let b = quantum_bound_seesaw_axes(&w, 20, seed).unwrap();
        assert!((b.value - 4.5).abs() < 1e-9);
        let h = min_entropy(&behavior_from_strategy(b.quantum_strategy().unwrap()));
        assert!(h > 1e-4, "seed {seed}: {h}");
    }
}
