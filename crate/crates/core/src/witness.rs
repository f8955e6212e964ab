//! Linear dimension witnesses `W = Σ w_{x,y} E_{x,y}` with `E_{x,y} = p(b=0|x,y)`.
//!
//! Three bounds are provided:
//!
//! * [`classical_bound`]: exact maximum over deterministic one-bit-message
//!   strategies. Shared randomness cannot do better because the witness is
//!   linear and its maximum over the convex hull sits at an extreme point.
//! * [`quantum_bound_seesaw`]: alternating closed-form updates of states and
//!   axes. Each half-step is optimal given the other half, so the value never
//!   decreases. It is a lower bound on the qubit maximum that attains it in
//!   practice; no optimality certificate is produced.
//! * [`quantum_bound_grid`]: brute force over axes on a Fibonacci-sphere grid
//!   with optimal states in closed form; an independent check on the see-saw.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{behavior_from_strategy, BehaviorTable, BlochVector, Outcome, Strategy};
use crate::error::{Error, Result};
use crate::rng;

/// Upper limit on either dimension for exhaustive classical enumeration.
pub const MAX_ENUMERATION_DIM: usize = 20;

/// See-saw stops once a full iteration improves the value by less than this.
pub const SEESAW_TOLERANCE: f64 = 1e-12;
pub const SEESAW_MAX_ITERATIONS: usize = 10_000;
pub const DEFAULT_RESTARTS: usize = 20;

pub const MAX_GRID_RESOLUTION: usize = 200;
pub const MAX_GRID_MEASUREMENTS: usize = 3;

/// Coefficient matrix of a linear witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WitnessRepr", into = "WitnessRepr")]
pub struct WitnessSpec {
    name: String,
    rows: usize,
    cols: usize,
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    name: String,
    coeffs: Vec<Vec<f64>>,
}

impl TryFrom<WitnessRepr> for WitnessSpec {
    type Error = Error;
    fn try_from(r: WitnessRepr) -> Result<Self> {
        WitnessSpec::new(r.name, r.coeffs)
    }
}

impl From<WitnessSpec> for WitnessRepr {
    fn from(w: WitnessSpec) -> Self {
        let coeffs = w.coeffs.chunks(w.cols).map(<[f64]>::to_vec).collect();
        WitnessRepr { name: w.name, coeffs }
    }
}

impl WitnessSpec {
    pub fn new(name: impl Into<String>, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let rows = coeffs.len();
        let cols = coeffs.first().map_or(0, Vec::len);
        if rows < 2 || cols < 2 {
            return Err(Error::Shape(format!("witness must be at least 2x2, got {rows}x{cols}")));
        }
        let mut flat = Vec::with_capacity(rows * cols);
        for (i, row) in coeffs.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("witness row {i} has {} entries, expected {cols}", row.len())));
            }
            if let Some(c) = row.iter().find(|c| !c.is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite coefficient {c}")));
            }
            flat.extend(row);
        }
        if flat.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidArgument("witness has no nonzero coefficient".into()));
        }
        Ok(WitnessSpec { name: name.into(), rows, cols, coeffs: flat })
    }

    /// The 4-preparation, 3-measurement witness with classical bound 3 and
    /// qubit bound 2√3. Rows are the strings 000, 011, 101, 110; a column
    /// coefficient is +1 where the queried bit is 0.
    pub fn r43() -> Self {
        Self::new("R43", vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]])
            .expect("valid builtin")
    }

    /// The 3x3 witness built on the strings 000, 011, 101.
    pub fn r33() -> Self {
        Self::new("R33", vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0]])
            .expect("valid builtin")
    }

    /// The `I₄` witness padded to 4x3 (`w₄,₂ = w₄,₃ = 0`).
    pub fn i4() -> Self {
        Self::new("I4", vec![vec![1.0, 1.0, 1.0], vec![1.0, 1.0, -1.0], vec![1.0, -1.0, 0.0], vec![-1.0, 0.0, 0.0]])
            .expect("valid builtin")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "r43" => Some(Self::r43()),
            "r33" => Some(Self::r33()),
            "i4" => Some(Self::i4()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_preparations(&self) -> usize {
        self.rows
    }

    pub fn num_measurements(&self) -> usize {
        self.cols
    }

    pub fn coeff(&self, x: usize, y: usize) -> f64 {
        self.coeffs[x * self.cols + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.coeffs[x * self.cols..(x + 1) * self.cols]
    }

    pub fn coeff_sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Same coefficients with row `x` removed.
    pub fn without_row(&self, x: usize) -> Result<Self> {
        if x >= self.rows {
            return Err(Error::Range(format!("row {x} of {}", self.rows)));
        }
        let rows = (0..self.rows).filter(|&i| i != x).map(|i| self.row(i).to_vec()).collect();
        Self::new(format!("{}-without-row-{x}", self.name), rows)
    }

    fn check_shape(&self, x: usize, y: usize) -> Result<()> {
        if x != self.rows || y != self.cols {
            return Err(Error::Shape(format!("witness {} is {}x{}, data is {x}x{y}", self.name, self.rows, self.cols)));
        }
        Ok(())
    }

    /// `Σ_y w_{x,y} t_y` for every `x`.
    fn state_targets(&self, axes: &[BlochVector]) -> Vec<BlochVector> {
        (0..self.rows)
            .map(|x| self.row(x).iter().zip(axes).fold(BlochVector::ZERO, |acc, (&w, t)| acc + w * *t))
            .collect()
    }

    /// `Σ_x w_{x,y} s_x` for every `y`.
    fn axis_targets(&self, states: &[BlochVector]) -> Vec<BlochVector> {
        (0..self.cols)
            .map(|y| states.iter().enumerate().fold(BlochVector::ZERO, |acc, (x, s)| acc + self.coeff(x, y) * *s))
            .collect()
    }

    /// Witness value written through Bloch vectors: `½Σw + ½Σ_x s_x·(Σ_y w t_y)`.
    fn value_of(&self, states: &[BlochVector], axes: &[BlochVector]) -> f64 {
        let targets = self.state_targets(axes);
        0.5 * self.coeff_sum() + 0.5 * states.iter().zip(&targets).map(|(s, v)| s.dot(v)).sum::<f64>()
    }
}

/// `Σ_{x,y} w_{x,y} · p(b=0|x,y)`.
pub fn evaluate(witness: &WitnessSpec, behavior: &BehaviorTable) -> Result<f64> {
    witness.check_shape(behavior.num_preparations(), behavior.num_measurements())?;
    Ok(behavior
        .rows()
        .enumerate()
        .map(|(x, row)| row.iter().zip(witness.row(x)).map(|(p, w)| p * w).sum::<f64>())
        .sum())
}

/// Witness value of a strategy.
pub fn evaluate_strategy(witness: &WitnessSpec, strategy: &Strategy) -> Result<f64> {
    evaluate(witness, &behavior_from_strategy(strategy))
}

/// Classical one-bit strategy: preparation `x` sends `encoding[x]`, and the
/// measurement device answers `response[y][m]` for setting `y` and message `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub encoding: Vec<u8>,
    pub response: Vec<[u8; 2]>,
}

impl DeterministicStrategy {
    /// The 0/1 behavior this strategy produces.
    pub fn behavior(&self) -> BehaviorTable {
        let rows = self
            .encoding
            .iter()
            .map(|&m| self.response.iter().map(|r| if r[m as usize] == 0 { 1.0 } else { 0.0 }).collect())
            .collect();
        BehaviorTable::new(rows).expect("deterministic table is valid")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Maximizer {
    Classical(DeterministicStrategy),
    Quantum(Strategy),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub argmax: Maximizer,
    pub iterations: usize,
    pub converged: bool,
}

impl BoundResult {
    pub fn quantum_strategy(&self) -> Option<&Strategy> {
        match &self.argmax {
            Maximizer::Quantum(s) => Some(s),
            Maximizer::Classical(_) => None,
        }
    }

    pub fn classical_strategy(&self) -> Option<&DeterministicStrategy> {
        match &self.argmax {
            Maximizer::Classical(s) => Some(s),
            Maximizer::Quantum(_) => None,
        }
    }
}

/// Exact classical maximum by enumerating every message assignment.
///
/// For a fixed encoding the best response decouples per `(y, m)`: answer 0
/// exactly when the coefficients of the rows sending `m` sum to a positive
/// number. This is the same maximum as enumerating all `2^(2Y)` response
/// tables.
pub fn classical_bound(witness: &WitnessSpec) -> Result<BoundResult> {
    let (xs, ys) = (witness.num_preparations(), witness.num_measurements());
    if xs > MAX_ENUMERATION_DIM || ys > MAX_ENUMERATION_DIM {
        return Err(Error::Capacity(format!(
            "classical enumeration limited to {MAX_ENUMERATION_DIM}x{MAX_ENUMERATION_DIM}, got {xs}x{ys}"
        )));
    }
    let column_totals: Vec<f64> = (0..ys).map(|y| (0..xs).map(|x| witness.coeff(x, y)).sum()).collect();

    let mut best_value = f64::NEG_INFINITY;
    let mut best_mask = 0u32;
    let mut ones = vec![0.0; ys];
    for mask in 0u32..(1u32 << xs) {
        ones.iter_mut().for_each(|v| *v = 0.0);
        for x in (0..xs).filter(|&x| mask >> x & 1 == 1) {
            for (acc, w) in ones.iter_mut().zip(witness.row(x)) {
                *acc += w;
            }
        }
        let value: f64 =
            ones.iter().zip(&column_totals).map(|(&one, &total)| (total - one).max(0.0) + one.max(0.0)).sum();
        if value > best_value {
            best_value = value;
            best_mask = mask;
        }
    }

    let encoding: Vec<u8> = (0..xs).map(|x| (best_mask >> x & 1) as u8).collect();
    let response = (0..ys)
        .map(|y| {
            let mut r = [1u8; 2];
            for (m, slot) in r.iter_mut().enumerate() {
                let s: f64 = (0..xs).filter(|&x| encoding[x] as usize == m).map(|x| witness.coeff(x, y)).sum();
                if s > 0.0 {
                    *slot = 0;
                }
            }
            r
        })
        .collect();
    Ok(BoundResult {
        value: best_value,
        argmax: Maximizer::Classical(DeterministicStrategy { encoding, response }),
        iterations: 1 << xs,
        converged: true,
    })
}

struct SeesawRun {
    value: f64,
    states: Vec<BlochVector>,
    /// Zero vectors stand for fixed-outcome measurements.
    axes: Vec<BlochVector>,
    fixed: Vec<Option<Outcome>>,
    iterations: usize,
    converged: bool,
}

/// Replaces each vector with the normalized target; a zero target keeps the
/// previous vector.
fn align(current: &mut [BlochVector], targets: &[BlochVector]) {
    for (v, t) in current.iter_mut().zip(targets) {
        if let Some(u) = t.normalized() {
            *v = u;
        }
    }
}

/// Best measurement for each setting given the states: the axis along
/// `Σ_x w s_x`, or a fixed outcome when `|Σ_x w|` beats that resultant.
fn align_measurements(
    witness: &WitnessSpec,
    states: &[BlochVector],
    axes: &mut [BlochVector],
    fixed: &mut [Option<Outcome>],
) {
    let targets = witness.axis_targets(states);
    for y in 0..witness.cols {
        let column: f64 = (0..witness.rows).map(|x| witness.coeff(x, y)).sum();
        let target = targets[y];
        if column.abs() > target.norm() {
            axes[y] = BlochVector::ZERO;
            fixed[y] = Some(if column > 0.0 { Outcome::Zero } else { Outcome::One });
        } else if let Some(u) = target.normalized() {
            axes[y] = u;
            fixed[y] = None;
        }
    }
}

fn fixed_gain(witness: &WitnessSpec, fixed: &[Option<Outcome>]) -> f64 {
    fixed
        .iter()
        .enumerate()
        .filter(|(_, f)| f.is_some())
        .map(|(y, _)| (0..witness.rows).map(|x| witness.coeff(x, y)).sum::<f64>().abs())
        .sum()
}

fn seesaw_once(witness: &WitnessSpec, seed: u64, restart: u64, allow_fixed: bool) -> SeesawRun {
    let mut rng = rng::stream(seed, restart);
    let mut axes: Vec<BlochVector> = (0..witness.num_measurements()).map(|_| rng::unit_vector(&mut rng)).collect();
    let mut states: Vec<BlochVector> = (0..witness.num_preparations()).map(|_| rng::unit_vector(&mut rng)).collect();
    let mut fixed = vec![None; witness.num_measurements()];

    let mut value = witness.value_of(&states, &axes);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < SEESAW_MAX_ITERATIONS {
        iterations += 1;
        align(&mut states, &witness.state_targets(&axes));
        if allow_fixed {
            align_measurements(witness, &states, &mut axes, &mut fixed);
        } else {
            align(&mut axes, &witness.axis_targets(&states));
        }
        let next = witness.value_of(&states, &axes) + 0.5 * fixed_gain(witness, &fixed);
        let gain = next - value;
        value = value.max(next);
        if gain < SEESAW_TOLERANCE {
            converged = true;
            break;
        }
    }
    SeesawRun { value, states, axes, fixed, iterations, converged }
}

/// Best see-saw value over `restarts` random initializations. Measurements
/// range over rank-1 projectors and the fixed-outcome measurements, so every
/// classical one-bit strategy is inside the search space.
///
/// Restart `i` draws from PRNG stream `(seed, i)`, so the result does not
/// depend on how restarts are scheduled. Ties go to the lowest restart index.
pub fn quantum_bound_seesaw(witness: &WitnessSpec, restarts: usize, seed: u64) -> Result<BoundResult> {
    run_seesaw(witness, restarts, seed, true)
}

/// See-saw restricted to rank-1 projective measurements, `t_y` always a unit
/// axis. This restricted optimum is invariant under negating a row together
/// with its state, up to the shift by that row's sum.
pub fn quantum_bound_seesaw_axes(witness: &WitnessSpec, restarts: usize, seed: u64) -> Result<BoundResult> {
    run_seesaw(witness, restarts, seed, false)
}

fn run_seesaw(witness: &WitnessSpec, restarts: usize, seed: u64, allow_fixed: bool) -> Result<BoundResult> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("see-saw needs at least one restart".into()));
    }
    let runs: Vec<SeesawRun> =
        (0..restarts as u64).into_par_iter().map(|r| seesaw_once(witness, seed, r, allow_fixed)).collect();
    let best = runs.into_iter().reduce(|a, b| if b.value > a.value { b } else { a }).expect("at least one restart");

    let axes = best.axes.iter().zip(&best.fixed).map(|(t, f)| if f.is_some() { BlochVector::Z } else { *t }).collect();
    let strategy = Strategy::new(best.states, axes)?.with_fixed_outcomes(best.fixed)?;
    let value = evaluate_strategy(witness, &strategy)?;
    Ok(BoundResult {
        value,
        argmax: Maximizer::Quantum(strategy),
        iterations: best.iterations,
        converged: best.converged,
    })
}

/// `n` nearly uniform points on the unit sphere (golden-angle spiral).
pub fn fibonacci_sphere(n: usize) -> Vec<BlochVector> {
    let golden = std::f64::consts::PI * (1.0 + 5f64.sqrt());
    (0..n)
        .map(|i| {
            let k = i as f64 + 0.5;
            let polar = (1.0 - 2.0 * k / n as f64).acos();
            let azimuth = golden * k;
            BlochVector::new(azimuth.cos() * polar.sin(), azimuth.sin() * polar.sin(), polar.cos())
        })
        .collect()
}

/// Grid lower bound on the qubit maximum.
///
/// Every measurement axis ranges over `resolution` Fibonacci-sphere points;
/// for each axis tuple the states are set to `normalize(Σ_y w t_y)`, which
/// contributes `½|Σ_y w t_y|` per preparation.
pub fn quantum_bound_grid(witness: &WitnessSpec, resolution: usize) -> Result<f64> {
    let ys = witness.num_measurements();
    if ys > MAX_GRID_MEASUREMENTS || resolution > MAX_GRID_RESOLUTION {
        return Err(Error::Capacity(format!(
            "grid search limited to {MAX_GRID_MEASUREMENTS} measurements at resolution {MAX_GRID_RESOLUTION}, \
             got {ys} at {resolution}"
        )));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive".into()));
    }
    let grid = fibonacci_sphere(resolution);
    let base = 0.5 * witness.coeff_sum();
    let total: usize = resolution.pow(ys as u32);

    let best = (0..resolution)
        .into_par_iter()
        .map(|first| {
            let mut axes = vec![grid[first]; ys];
            let mut best = f64::NEG_INFINITY;
            for rest in 0..total / resolution {
                let mut idx = rest;
                for axis in axes.iter_mut().skip(1) {
                    *axis = grid[idx % resolution];
                    idx /= resolution;
                }
                let v: f64 = witness.state_targets(&axes).iter().map(BlochVector::norm).sum();
                best = best.max(v);
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(base + 0.5 * best)
}
