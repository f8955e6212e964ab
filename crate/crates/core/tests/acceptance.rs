//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use sdiqrng::entropy::{
    guessing_floor, lemma1_min_cos_sum, lemma1_oracle, max_certifiable_entropy, min_entropy, p_lb_floor,
    r43_curve_grid, r43_entropy_curve, r43_quantum_bound,
};
use sdiqrng::extract::{byte_chi_square, toeplitz_extract, BitString, BlockExtractor, ExtractorConfig};
use sdiqrng::protocol::{
    certify, guessing_task_average, i4_counterexample, r33_construction, r43_ideal, simulate_rounds,
};
use sdiqrng::rng;
use sdiqrng::verify::entropy_ceiling_scan;
use sdiqrng::witness::{classical_bound, quantum_bound_seesaw, WitnessSpec};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

type Criterion = (&'static str, Option<u64>, fn() -> Verdict);

fn timed<F: FnOnce() -> Verdict>(limit: Option<Duration>, f: F) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        v.passed &= took < limit;
        v.detail.push_str(&format!("; {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs()));
    } else {
        v.detail.push_str(&format!("; {:.2}s", took.as_secs_f64()));
    }
    v
}

fn c1() -> Verdict {
    let b = quantum_bound_seesaw(&WitnessSpec::r43(), 20, 0).unwrap();
    let err = (b.value - 2.0 * 3f64.sqrt()).abs();
    verdict(err <= 1e-9, format!("R43 see-saw = {:.15}, |error| = {err:.2e}", b.value))
}

fn c2() -> Verdict {
    let v = classical_bound(&WitnessSpec::r43()).unwrap().value;
    verdict(v == 3.0, format!("R43 classical bound = {v}"))
}

fn c3() -> Verdict {
    let h = min_entropy(&r43_ideal().behavior());
    let target = -(0.5 * (1.0 + 1.0 / 3f64.sqrt())).log2();
    let scan = entropy_ceiling_scan(10_000, 0).unwrap();
    verdict(
        (h - target).abs() <= 1e-9 && scan.above_ceiling == 0,
        format!(
            "ideal H = {h:.10} (target {target:.10}); {} of {} strategies violate a classical bound, {} above ceiling, max H = {:.6}",
            scan.violating, scan.strategies, scan.above_ceiling, scan.max_violating_entropy
        ),
    )
}

fn c4() -> Verdict {
    let mut worst: f64 = 0.0;
    for y in 2..=9 {
        worst = worst.max((lemma1_oracle(y, 200, 0).unwrap() - lemma1_min_cos_sum(y)).abs());
    }
    verdict(worst <= 1e-4, format!("max |numerical - closed form| over Y=2..9 = {worst:.2e}"))
}

fn c5() -> Verdict {
    let floor = guessing_floor();
    let mut bad = Vec::new();
    for y in 2..=300 {
        let gap = p_lb_floor(y) - floor;
        let equal = gap.abs() <= 1e-9;
        if gap < -1e-9 || equal != (y % 3 == 0) {
            bad.push(y);
        }
    }
    let tail = p_lb_floor(300) - floor;
    verdict(bad.is_empty() && tail < 1e-4, format!("violations at Y = {bad:?}; p_lb_floor(300) - floor = {tail:.3e}"))
}

fn c6() -> Verdict {
    let spec = r33_construction();
    let avg = guessing_task_average(&spec);
    let behavior = spec.behavior();
    let max_entry = behavior.max_probability();
    let target = 0.5 * (1.0 + 1.0 / 2f64.sqrt());
    let h = min_entropy(&behavior);
    verdict(
        avg >= 0.79125 && max_entry >= target && h <= 0.2296,
        format!("task average = {avg:.6}, max entry = {max_entry:.15}, H = {h:.6}"),
    )
}

fn c7() -> Verdict {
    let low = r43_entropy_curve(3.0).unwrap().min_entropy_bound;
    let high = r43_entropy_curve(r43_quantum_bound()).unwrap().min_entropy_bound;
    let target = -(0.5 * (1.0 + 1.0 / 3f64.sqrt())).log2();
    let grid = r43_curve_grid(1000).unwrap();
    let monotone = grid.windows(2).all(|w| w[0].min_entropy_bound <= w[1].min_entropy_bound);
    verdict(
        low == 0.0 && (high - target).abs() <= 1e-9 && monotone,
        format!("H(3) = {low}, H(2√3) = {high:.10}, monotone on 1000 points: {monotone}"),
    )
}

fn c8() -> Verdict {
    let (bound, h) = i4_counterexample().unwrap();
    verdict(h < 1e-6, format!("I4 see-saw value = {:.12}, min-entropy = {h:.3e}", bound.value))
}

fn c9() -> Verdict {
    let spec = r43_ideal();
    let ideal = certify(&simulate_rounds(&spec, 1_000_000, 0.1, (0, 1), 0.0, 0).unwrap(), &spec, 0.99).unwrap();
    let dev = (ideal.witness_estimate - r43_quantum_bound()).abs();
    let within = dev <= 3.0 * ideal.standard_error;
    let enough = ideal.certified_entropy_per_round >= 0.25;
    let noisy = certify(&simulate_rounds(&spec, 1_000_000, 0.1, (0, 1), 0.05, 0).unwrap(), &spec, 0.99).unwrap();
    let positive = noisy.certified_entropy_per_round > 0.0;
    verdict(
        within && enough && positive,
        format!(
            "noiseless: estimate {:.5} ({:.2} SE from 2√3) [{}], certified {:.5} bits/round (need >= 0.25) [{}], radius {:.4}; \
             noise 0.05: estimate {:.5}, certified {:.5} bits/round [{}]",
            ideal.witness_estimate,
            dev / ideal.standard_error,
            ok(within),
            ideal.certified_entropy_per_round,
            ok(enough),
            ideal.confidence_radius,
            noisy.witness_estimate,
            noisy.certified_entropy_per_round,
            ok(positive),
        ),
    )
}

fn random_bits(rng: &mut impl Rng, n: usize) -> BitString {
    BitString::from_bools((0..n).map(|_| rng.random::<bool>()))
}

fn c10() -> Verdict {
    let mut r = rng::stream(0, 10);
    let mut linear = 0;
    for _ in 0..1000 {
        let n = r.random_range(1..=512);
        let m = r.random_range(1..=n);
        let config = ExtractorConfig::new(n, m, random_bits(&mut r, n + m - 1)).unwrap();
        let (a, b) = (random_bits(&mut r, n), random_bits(&mut r, n));
        let lhs = toeplitz_extract(&a.xor(&b).unwrap(), &config).unwrap();
        let rhs = toeplitz_extract(&a, &config).unwrap().xor(&toeplitz_extract(&b, &config).unwrap()).unwrap();
        linear += usize::from(lhs == rhs);
    }

    let spec = r43_ideal();
    let log = simulate_rounds(&spec, 4_100_000, 0.0, (0, 1), 0.0, 0).unwrap();
    let raw = BitString::from_bools(log.generation_bits());
    let block = 8192;
    let seed = random_bits(&mut r, block + block / 4 - 1);
    let extractor = BlockExtractor::new(block, 0.25, &seed).unwrap();
    let out = extractor.extract(&raw, 1_000_000).unwrap();
    let (stat, p) = byte_chi_square(&out.to_bytes_msb()).unwrap();
    verdict(
        linear == 1000 && out.len() == 1_000_000 && p >= 0.01,
        format!(
            "linearity {linear}/1000; chi-square on {} bits = {stat:.2} (p = {p:.4}, need >= 0.01); raw H∞/bit = {:.4}",
            out.len(),
            max_certifiable_entropy()
        ),
    )
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("R43 quantum bound", Some(1), c1),
        ("R43 classical bound", None, c2),
        ("entropy ceiling", None, c3),
        ("octant cosine-sum minimum", Some(30), c4),
        ("guessing-probability floor", None, c5),
        ("three-preparation construction", None, c6),
        ("curve endpoints and shape", None, c7),
        ("I4 zero entropy", None, c8),
        ("end-to-end simulation", Some(60), c9),
        ("extractor", None, c10),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let v = timed(limit.map(Duration::from_secs), f);
        failed += usize::from(!v.passed);
        println!("criterion {:>2} {} {name}: {}", i + 1, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
