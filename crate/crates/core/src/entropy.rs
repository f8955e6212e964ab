//! Min-entropy of a behavior and the closed-form ceilings on it.
//!
//! `p_lb = max_x (1/Y) Σ_y max_b p(b|x,y)` never exceeds the largest outcome
//! probability, so `−log₂ p_lb` caps the min-entropy of a strategy. Over all
//! choices of `Y` axes in one octant, the smallest reachable `p_lb` follows from
//! the minimum of the pairwise cosine sum, which puts the axes on the three
//! coordinate directions in as balanced a way as possible.

use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{behavior_from_strategy, BehaviorTable, BlochVector, Strategy};
use crate::error::{Error, Result};
use crate::fmt::serialize_sig17;
use crate::rng;
use rand::Rng;

/// Tolerance on witness values just above the qubit bound (rounding noise).
pub const WITNESS_TOL: f64 = 1e-9;

/// `½(1 + 1/√3)`: the smallest reachable `p_lb`.
pub fn guessing_floor() -> f64 {
    p_lb_floor(3)
}

/// `2√3`, the qubit maximum of R₄,₃.
pub fn r43_quantum_bound() -> f64 {
    2.0 * 3f64.sqrt()
}

pub const R43_CLASSICAL_BOUND: f64 = 3.0;

/// `−log₂ max_{b,x,y} p(b|x,y)`.
pub fn min_entropy(behavior: &BehaviorTable) -> f64 {
    bits_from_probability(behavior.max_probability())
}

/// `−log₂ p`, with `p = 1` mapped to +0.
pub fn bits_from_probability(p: f64) -> f64 {
    let h = -p.log2();
    if h <= 0.0 {
        0.0
    } else {
        h
    }
}

/// Largest measurement-averaged guessing probability over the preparations.
pub fn p_lb(strategy: &Strategy) -> f64 {
    p_lb_of_behavior(&behavior_from_strategy(strategy))
}

pub fn p_lb_of_behavior(behavior: &BehaviorTable) -> f64 {
    let cols = behavior.num_measurements() as f64;
    behavior.rows().map(|row| row.iter().map(|&p| p.max(1.0 - p)).sum::<f64>() / cols).fold(0.0, f64::max)
}

/// `Y = 3μ + r` with `r ∈ {0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaParams {
    pub settings: usize,
    pub mu: usize,
    pub r: usize,
}

impl LemmaParams {
    pub fn new(settings: usize) -> Result<Self> {
        if settings == 0 {
            return Err(Error::InvalidArgument("need at least one measurement setting".into()));
        }
        Ok(LemmaParams { settings, mu: settings / 3, r: settings % 3 })
    }
}

/// Minimum of `Σ_{i<j} cos θ_ij` over `Y` unit vectors in one octant:
/// `(3/2)μ(μ−1) + rμ`.
pub fn lemma1_min_cos_sum(settings: usize) -> f64 {
    let (mu, r) = ((settings / 3) as f64, (settings % 3) as f64);
    1.5 * mu * (mu - 1.0) + r * mu
}

/// Smallest `p_lb` reachable with `Y` measurement settings:
/// `½(1 + √(3μ² + r(2μ+1)) / (3μ+r))`.
pub fn p_lb_floor(settings: usize) -> f64 {
    let (mu, r) = ((settings / 3) as f64, (settings % 3) as f64);
    0.5 * (1.0 + (3.0 * mu * mu + r * (2.0 * mu + 1.0)).sqrt() / (3.0 * mu + r))
}

/// Largest certifiable min-entropy of any qubit prepare-and-measure protocol,
/// `−log₂ ½(1 + 1/√3) ≈ 0.3424938` bits.
pub fn max_certifiable_entropy() -> f64 {
    -p_lb_floor(3).log2()
}

pub const LEMMA_ORACLE_MAX_SETTINGS: usize = 9;
const PGD_STEP: f64 = 0.02;
const PGD_MAX_ITERATIONS: usize = 20_000;
const PGD_TOLERANCE: f64 = 1e-14;

/// Clamp to the nonnegative octant, then back onto the sphere.
fn project_octant(v: BlochVector) -> Option<BlochVector> {
    BlochVector::new(v.x.max(0.0), v.y.max(0.0), v.z.max(0.0)).normalized()
}

fn cos_sum(vs: &[BlochVector]) -> f64 {
    let total = vs.iter().fold(BlochVector::ZERO, |a, v| a + *v);
    0.5 * (total.dot(&total) - vs.iter().map(|v| v.dot(v)).sum::<f64>())
}

fn octant_trial(settings: usize, seed: u64, trial: u64) -> f64 {
    let mut rng = rng::stream(seed, trial);
    let mut vs: Vec<BlochVector> = (0..settings)
        .map(|_| loop {
            let v = BlochVector::new(rng.random(), rng.random(), rng.random());
            if let Some(u) = v.normalized() {
                break u;
            }
        })
        .collect();

    let mut value = cos_sum(&vs);
    for _ in 0..PGD_MAX_ITERATIONS {
        let total = vs.iter().fold(BlochVector::ZERO, |a, v| a + *v);
        // d/dt_i Σ_{j<k} t_j·t_k = Σ_{j≠i} t_j
        for v in vs.iter_mut() {
            let grad = total - *v;
            if let Some(next) = project_octant(*v - PGD_STEP * grad) {
                *v = next;
            }
        }
        let next = cos_sum(&vs);
        let done = (value - next).abs() < PGD_TOLERANCE;
        value = next;
        if done {
            break;
        }
    }
    value
}

/// Numerical minimum of the pairwise cosine sum over `Y` unit vectors in the
/// nonnegative octant, by projected gradient descent from `trials` random
/// starts.
pub fn lemma1_oracle(settings: usize, trials: usize, seed: u64) -> Result<f64> {
    if !(2..=LEMMA_ORACLE_MAX_SETTINGS).contains(&settings) {
        return Err(Error::Capacity(format!(
            "octant oracle supports 2..={LEMMA_ORACLE_MAX_SETTINGS} settings, got {settings}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    Ok((0..trials as u64).into_par_iter().map(|t| octant_trial(settings, seed, t)).reduce(|| f64::INFINITY, f64::min))
}

/// One point of the R₄,₃ witness-to-entropy curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    #[serde(serialize_with = "serialize_sig17")]
    pub witness_value: f64,
    #[serde(serialize_with = "serialize_sig17")]
    pub p_lb_bound: f64,
    #[serde(serialize_with = "serialize_sig17")]
    pub min_entropy_bound: f64,
}

/// `p_lb ≤ (R + 6 + √(3(12 − R²)))/12` for an R₄,₃ value `R`.
///
/// Values at or below the classical bound 3 certify nothing and map to
/// `p_lb_bound = 1`. Values beyond `±2√3` (plus rounding tolerance) are
/// infeasible for qubits.
pub fn r43_entropy_curve(witness_value: f64) -> Result<CurvePoint> {
    let bound = r43_quantum_bound();
    if !witness_value.is_finite() || witness_value.abs() > bound + WITNESS_TOL {
        return Err(Error::InfeasibleValue { value: witness_value, bound });
    }
    let p_lb_bound = if witness_value <= R43_CLASSICAL_BOUND {
        1.0
    } else {
        let r = witness_value.min(bound);
        // 12 − R² factored so that R = 2√3 gives exactly zero
        let radicand = (3.0 * (bound - r) * (bound + r)).max(0.0);
        ((r + 6.0 + radicand.sqrt()) / 12.0).min(1.0)
    };
    Ok(CurvePoint { witness_value, p_lb_bound, min_entropy_bound: bits_from_probability(p_lb_bound) })
}

/// `points` equally spaced curve samples from the classical bound 3 to 2√3,
/// both endpoints included.
pub fn r43_curve_grid(points: usize) -> Result<Vec<CurvePoint>> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!("curve needs at least 2 points, got {points}")));
    }
    let (lo, hi) = (R43_CLASSICAL_BOUND, r43_quantum_bound());
    (0..points)
        .map(|i| {
            let r = if i + 1 == points { hi } else { lo + (hi - lo) * i as f64 / (points - 1) as f64 };
            r43_entropy_curve(r)
        })
        .collect()
}
