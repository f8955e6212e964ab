//! Numerical self-checks run by the `verify` command.
//!
//! Each check is deterministic in its seed and reports a one-line detail.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::bloch::{behavior_from_strategy, BlochVector, Strategy};
use crate::entropy::{
    guessing_floor, lemma1_min_cos_sum, lemma1_oracle, max_certifiable_entropy, min_entropy, p_lb, p_lb_floor,
    r43_curve_grid, r43_entropy_curve, r43_quantum_bound,
};
use crate::error::Result;
use crate::protocol::{i4_counterexample_entropy, r43_ideal};
use crate::rng;
use crate::witness::{classical_bound, evaluate, evaluate_strategy, quantum_bound_seesaw, WitnessSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckOutcome { name, passed, detail }
    }
}

/// Closed-form cosine-sum minimum against the octant optimizer, `Y = 2..=9`.
pub fn check_octant_minimum(trials: usize, seed: u64) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for y in 2..=9 {
        let found = lemma1_oracle(y, trials, seed)?;
        worst = worst.max((found - lemma1_min_cos_sum(y)).abs());
    }
    Ok(CheckOutcome::new("octant_cosine_minimum", worst <= 1e-4, format!("max |oracle - closed form| = {worst:.3e}")))
}

/// `p_lb_floor(Y) ≥ ½(1+1/√3)` on `Y = 2..=300`, equal exactly when `3 | Y`.
pub fn check_floor_scan() -> CheckOutcome {
    let floor = guessing_floor();
    let mut ok = true;
    for y in 2..=300 {
        let gap = p_lb_floor(y) - floor;
        let equal = gap.abs() <= 1e-9;
        ok &= gap >= -1e-9 && (equal == (y % 3 == 0));
    }
    let tail = p_lb_floor(300) - floor;
    ok &= tail < 1e-4;
    CheckOutcome::new("p_lb_floor_scan", ok, format!("p_lb_floor(300) - floor = {tail:.3e}"))
}

pub fn check_curve_shape() -> Result<CheckOutcome> {
    let grid = r43_curve_grid(1000)?;
    let monotone = grid.windows(2).all(|w| w[1].min_entropy_bound >= w[0].min_entropy_bound);
    let low = r43_entropy_curve(3.0)?.min_entropy_bound;
    let high = r43_entropy_curve(r43_quantum_bound())?.min_entropy_bound;
    let ok = monotone && low == 0.0 && (high - max_certifiable_entropy()).abs() <= 1e-9;
    Ok(CheckOutcome::new(
        "r43_curve_shape",
        ok,
        format!("H(3) = {low}, H(2√3) = {high:.10}, monotone on 1000 points: {monotone}"),
    ))
}

fn perturbed(strategy: &Strategy, which: usize, sigma: f64, rng: &mut impl Rng) -> Strategy {
    let mut preps = strategy.preparations().to_vec();
    let mut axes = strategy.measurements().to_vec();
    let slot = if which < preps.len() { &mut preps[which] } else { &mut axes[which - preps.len()] };
    let kick = BlochVector::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
    if let Some(v) = (*slot + sigma * kick).normalized() {
        *slot = v;
    }
    Strategy::new(preps, axes).expect("unit vectors")
}

/// Stochastic hill climb for the largest `p_lb` among pure R₄,₃ strategies
/// whose witness value is at least `target`, starting from a randomly rotated
/// ideal strategy (which is always feasible).
pub fn max_p_lb_at_witness(target: f64, steps: usize, seed: u64, stream: u64) -> Result<Strategy> {
    let mut rng = rng::stream(seed, stream);
    let witness = WitnessSpec::r43();
    let mut current = r43_ideal().strategy.transformed(&rng::rotation(&mut rng))?;
    let mut best = p_lb(&current);
    let mut sigma: f64 = 0.5;
    let mut misses = 0;
    for _ in 0..steps {
        let which = rng.random_range(0..7);
        let candidate = perturbed(&current, which, sigma, &mut rng);
        let value = p_lb(&candidate);
        if value >= best && evaluate_strategy(&witness, &candidate)? >= target {
            current = candidate;
            best = value;
            misses = 0;
        } else {
            misses += 1;
            if misses >= 40 {
                sigma = (sigma * 0.5).max(1e-7);
                misses = 0;
            }
        }
    }
    Ok(current)
}

/// For 20 witness values on `(3, 2√3]`, searched strategies never push `p_lb`
/// above the curve's `p_lb_bound` evaluated at their own witness value.
pub fn check_curve_consistency(steps: usize, seed: u64) -> Result<CheckOutcome> {
    let witness = WitnessSpec::r43();
    let (lo, hi) = (3.0, r43_quantum_bound());
    let rows: Vec<(f64, f64)> = (1..=20)
        .into_par_iter()
        .map(|k| -> Result<(f64, f64)> {
            let target = lo + (hi - lo) * k as f64 / 20.0;
            let mut excess = f64::NEG_INFINITY;
            let mut slack = f64::INFINITY;
            for restart in 0..4u64 {
                let s = max_p_lb_at_witness(target, steps, seed, 64 * k as u64 + restart)?;
                let bound = r43_entropy_curve(evaluate_strategy(&witness, &s)?)?.p_lb_bound;
                excess = excess.max(p_lb(&s) - bound);
                slack = slack.min(bound - p_lb(&s));
            }
            Ok((excess, slack))
        })
        .collect::<Result<_>>()?;
    let worst = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let loosest = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckOutcome::new(
        "r43_curve_consistency",
        worst <= 1e-6,
        format!("max p_lb - bound = {worst:.3e}; largest remaining gap = {loosest:.3e}"),
    ))
}

/// Summary of a random scan for behaviors that beat a classical bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CeilingScan {
    pub strategies: usize,
    pub violating: usize,
    pub above_ceiling: usize,
    /// Highest min-entropy among classical-bound-violating behaviors.
    pub max_violating_entropy: f64,
}

fn random_witnesses(strategy: &Strategy, rng: &mut impl Rng) -> Vec<WitnessSpec> {
    let (xs, ys) = (strategy.num_preparations(), strategy.num_measurements());
    let dots: Vec<Vec<f64>> =
        strategy.preparations().iter().map(|s| strategy.measurements().iter().map(|t| s.dot(t)).collect()).collect();
    let signs = dots.iter().map(|r| r.iter().map(|d| if *d >= 0.0 { 1.0 } else { -1.0 }).collect()).collect();
    let uniform = (0..xs).map(|_| (0..ys).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let mut out: Vec<WitnessSpec> = [("tailored", dots), ("signs", signs), ("uniform", uniform)]
        .into_iter()
        .filter_map(|(n, c)| WitnessSpec::new(n, c).ok())
        .collect();
    match (xs, ys) {
        (4, 3) => out.extend([WitnessSpec::r43(), WitnessSpec::i4()]),
        (3, 3) => out.push(WitnessSpec::r33()),
        _ => {}
    }
    out
}

/// Random pure strategies with `2 ≤ X, Y ≤ 6`. A behavior counts as
/// violating when some witness from [`random_witnesses`] exceeds its
/// enumerated classical bound.
pub fn entropy_ceiling_scan(strategies: usize, seed: u64) -> Result<CeilingScan> {
    let ceiling = max_certifiable_entropy();
    let rows: Vec<Option<f64>> = (0..strategies as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<f64>> {
            let mut rng = rng::stream(seed, i);
            let xs = rng.random_range(2..=6);
            let ys = rng.random_range(2..=6);
            let preps = (0..xs).map(|_| rng::unit_vector(&mut rng)).collect();
            let axes = (0..ys).map(|_| rng::unit_vector(&mut rng)).collect();
            let s = Strategy::new(preps, axes)?;
            let behavior = behavior_from_strategy(&s);
            for w in random_witnesses(&s, &mut rng) {
                if evaluate(&w, &behavior)? > classical_bound(&w)?.value + 1e-9 {
                    return Ok(Some(min_entropy(&behavior)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let violating: Vec<f64> = rows.into_iter().flatten().collect();
    Ok(CeilingScan {
        strategies,
        violating: violating.len(),
        above_ceiling: violating.iter().filter(|&&h| h > ceiling + 1e-6).count(),
        max_violating_entropy: violating.iter().copied().fold(0.0, f64::max),
    })
}

pub fn check_ceiling_scan(strategies: usize, seed: u64) -> Result<CheckOutcome> {
    let scan = entropy_ceiling_scan(strategies, seed)?;
    Ok(CheckOutcome::new(
        "entropy_ceiling_scan",
        scan.above_ceiling == 0,
        format!(
            "{} of {} random strategies violate a classical bound; {} exceed the ceiling (max H = {:.6})",
            scan.violating, scan.strategies, scan.above_ceiling, scan.max_violating_entropy
        ),
    ))
}

pub fn check_r43_bounds(seed: u64) -> Result<CheckOutcome> {
    let w = WitnessSpec::r43();
    let classical = classical_bound(&w)?.value;
    let quantum = quantum_bound_seesaw(&w, 20, seed)?.value;
    let ok = classical == 3.0 && (quantum - r43_quantum_bound()).abs() <= 1e-9;
    Ok(CheckOutcome::new("r43_bounds", ok, format!("classical = {classical}, see-saw = {quantum:.12}")))
}

pub fn check_i4_counterexample() -> Result<CheckOutcome> {
    let h = i4_counterexample_entropy()?;
    Ok(CheckOutcome::new("i4_zero_entropy", h < 1e-6, format!("min-entropy of I4 optimum = {h:.3e}")))
}

/// Every check, in a fixed order.
pub fn run_all(seed: u64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        check_r43_bounds(seed)?,
        check_octant_minimum(200, seed)?,
        check_floor_scan(),
        check_curve_shape()?,
        check_curve_consistency(3000, seed)?,
        check_ceiling_scan(10_000, seed)?,
        check_i4_counterexample()?,
    ])
}
