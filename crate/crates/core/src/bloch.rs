//! Bloch-vector representation of qubit preparations and two-outcome
//! projective measurements.
//!
//! A state is `ρ = ½(𝕀 + s·σ)` with `|s| ≤ 1`; a measurement basis is the pair
//! `{½(𝕀 + t·σ), ½(𝕀 − t·σ)}` with `|t| = 1`, stored as the single axis `t`.
//! Outcome 0 corresponds to `+t`, so relabeling the outcomes is the same as
//! negating the axis.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for unit-norm checks on measurement axes and the state norm cap.
pub const NORM_TOL: f64 = 1e-12;

/// Vectors whose norm lies within this distance of 1 may be rescaled by
/// [`BlochVector::renormalize`].
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// A real 3-vector in the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector::new(0.0, 0.0, 0.0);
    pub const X: BlochVector = BlochVector::new(1.0, 0.0, 0.0);
    pub const Y: BlochVector = BlochVector::new(0.0, 1.0, 0.0);
    pub const Z: BlochVector = BlochVector::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, k: f64) -> BlochVector {
        BlochVector::new(k * self.x, k * self.y, k * self.z)
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<BlochVector> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self.scale(1.0 / n))
        } else {
            None
        }
    }

    /// Rescales a vector that is already unit up to rounding noise.
    ///
    /// Fails with [`Error::InvalidMeasurement`] when the norm is further than
    /// [`RENORMALIZE_TOL`] from 1.
    pub fn renormalize(&self) -> Result<BlochVector> {
        let n = self.norm();
        if (n - 1.0).abs() <= RENORMALIZE_TOL {
            Ok(self.scale(1.0 / n))
        } else {
            Err(Error::InvalidMeasurement { norm: n })
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn check_state(&self) -> Result<()> {
        let norm = self.norm();
        if norm.is_finite() && norm <= 1.0 + NORM_TOL {
            Ok(())
        } else {
            Err(Error::InvalidState { norm })
        }
    }

    pub fn check_axis(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() <= NORM_TOL {
            Ok(())
        } else {
            Err(Error::InvalidMeasurement { norm })
        }
    }
}

impl From<[f64; 3]> for BlochVector {
    fn from([x, y, z]: [f64; 3]) -> Self {
        BlochVector::new(x, y, z)
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(v: BlochVector) -> Self {
        v.to_array()
    }
}

impl Add for BlochVector {
    type Output = BlochVector;
    fn add(self, o: BlochVector) -> BlochVector {
        BlochVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, o: BlochVector) -> BlochVector {
        BlochVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        self.scale(-1.0)
    }
}

impl Mul<BlochVector> for f64 {
    type Output = BlochVector;
    fn mul(self, v: BlochVector) -> BlochVector {
        v.scale(self)
    }
}

/// Measurement outcome `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Projection onto `+t`.
    Zero,
    /// Projection onto `−t`.
    One,
}

impl Outcome {
    pub fn from_bit(b: u8) -> Result<Outcome> {
        match b {
            0 => Ok(Outcome::Zero),
            1 => Ok(Outcome::One),
            _ => Err(Error::Range(format!("outcome bit {b} is not 0 or 1"))),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Outcome::Zero => 0,
            Outcome::One => 1,
        }
    }
}

/// `p(b | s, t) = ½(1 ± s·t)`.
///
/// The two outcomes are computed as exact complements of each other.
pub fn outcome_probability(state: &BlochVector, axis: &BlochVector, outcome: Outcome) -> Result<f64> {
    axis.check_axis()?;
    state.check_state()?;
    Ok(unchecked_probability(state, axis, outcome))
}

pub(crate) fn unchecked_probability(state: &BlochVector, axis: &BlochVector, outcome: Outcome) -> f64 {
    let p0 = (0.5 * (1.0 + state.dot(axis))).clamp(0.0, 1.0);
    match outcome {
        Outcome::Zero => p0,
        Outcome::One => 1.0 - p0,
    }
}

/// A full qubit strategy: one Bloch vector per preparation setting and one
/// axis per measurement setting.
///
/// A measurement may instead be the trivial projective measurement `{𝟙, 0}`,
/// which reports a fixed outcome whatever the state. Its axis is then kept
/// but ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StrategyRepr", into = "StrategyRepr")]
pub struct Strategy {
    preparations: Vec<BlochVector>,
    measurements: Vec<BlochVector>,
    fixed: Vec<Option<Outcome>>,
}

#[derive(Serialize, Deserialize)]
struct StrategyRepr {
    preparations: Vec<BlochVector>,
    measurements: Vec<BlochVector>,
    /// `null` for an ordinary axis, `0` or `1` for a fixed outcome.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fixed_outcomes: Option<Vec<Option<u8>>>,
}

impl TryFrom<StrategyRepr> for Strategy {
    type Error = Error;
    fn try_from(r: StrategyRepr) -> Result<Self> {
        let s = Strategy::new(r.preparations, r.measurements)?;
        match r.fixed_outcomes {
            None => Ok(s),
            Some(f) => {
                let fixed = f.into_iter().map(|b| b.map(Outcome::from_bit).transpose()).collect::<Result<_>>()?;
                s.with_fixed_outcomes(fixed)
            }
        }
    }
}

impl From<Strategy> for StrategyRepr {
    fn from(s: Strategy) -> Self {
        let fixed_outcomes =
            s.fixed.iter().any(Option::is_some).then(|| s.fixed.iter().map(|f| f.map(Outcome::bit)).collect());
        StrategyRepr { preparations: s.preparations, measurements: s.measurements, fixed_outcomes }
    }
}

impl Strategy {
    /// Validates the setting counts and norms.
    ///
    /// At least two preparations are required. A single measurement axis is
    /// accepted so that one-setting guessing scenarios can be expressed;
    /// witnesses still require two.
    pub fn new(preparations: Vec<BlochVector>, measurements: Vec<BlochVector>) -> Result<Self> {
        if preparations.len() < 2 {
            return Err(Error::Shape(format!("a strategy needs at least 2 preparations, got {}", preparations.len())));
        }
        if measurements.is_empty() {
            return Err(Error::Shape("a strategy needs at least 1 measurement".into()));
        }
        for s in &preparations {
            s.check_state()?;
        }
        for t in &measurements {
            t.check_axis()?;
        }
        let fixed = vec![None; measurements.len()];
        Ok(Strategy { preparations, measurements, fixed })
    }

    /// Marks measurements as fixed-outcome; `None` keeps the axis.
    pub fn with_fixed_outcomes(mut self, fixed: Vec<Option<Outcome>>) -> Result<Self> {
        if fixed.len() != self.measurements.len() {
            return Err(Error::Shape(format!(
                "{} fixed-outcome entries for {} measurements",
                fixed.len(),
                self.measurements.len()
            )));
        }
        self.fixed = fixed;
        Ok(self)
    }

    pub fn fixed_outcomes(&self) -> &[Option<Outcome>] {
        &self.fixed
    }

    pub fn has_fixed_outcomes(&self) -> bool {
        self.fixed.iter().any(Option::is_some)
    }

    pub fn preparations(&self) -> &[BlochVector] {
        &self.preparations
    }

    pub fn measurements(&self) -> &[BlochVector] {
        &self.measurements
    }

    pub fn num_preparations(&self) -> usize {
        self.preparations.len()
    }

    pub fn num_measurements(&self) -> usize {
        self.measurements.len()
    }

    /// The same strategy with every preparation shrunk to `(1 − noise)·s`.
    pub fn depolarized(&self, noise: f64) -> Result<Strategy> {
        if !(0.0..=1.0).contains(&noise) {
            return Err(Error::InvalidArgument(format!("noise {noise} outside [0,1]")));
        }
        Ok(Strategy {
            preparations: self.preparations.iter().map(|s| s.scale(1.0 - noise)).collect(),
            measurements: self.measurements.clone(),
            fixed: self.fixed.clone(),
        })
    }

    /// Applies the same linear map to every state and axis.
    pub fn transformed(&self, m: &[[f64; 3]; 3]) -> Result<Strategy> {
        let apply = |v: &BlochVector| {
            let a = v.to_array();
            BlochVector::new(
                m[0][0] * a[0] + m[0][1] * a[1] + m[0][2] * a[2],
                m[1][0] * a[0] + m[1][1] * a[1] + m[1][2] * a[2],
                m[2][0] * a[0] + m[2][1] * a[1] + m[2][2] * a[2],
            )
        };
        let preps = self.preparations.iter().map(apply).collect();
        let axes = self.measurements.iter().map(|t| apply(t).renormalize()).collect::<Result<Vec<_>>>()?;
        Strategy::new(preps, axes)?.with_fixed_outcomes(self.fixed.clone())
    }
}

/// The behavior `p(b=0|x,y)` for every setting pair, row-major by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorTable {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl BehaviorTable {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let x = rows.len();
        let y = rows.first().map_or(0, Vec::len);
        if x == 0 || y == 0 {
            return Err(Error::Shape("behavior table must be non-empty".into()));
        }
        let mut probs = Vec::with_capacity(x * y);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != y {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {y}", row.len())));
            }
            for p in row {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Range(format!("probability {p} outside [0,1]")));
                }
                probs.push(p);
            }
        }
        Ok(BehaviorTable { rows: x, cols: y, probs })
    }

    /// The all-½ table produced by maximally mixed preparations.
    pub fn uniform(x: usize, y: usize) -> Self {
        BehaviorTable { rows: x, cols: y, probs: vec![0.5; x * y] }
    }

    pub fn num_preparations(&self) -> usize {
        self.rows
    }

    pub fn num_measurements(&self) -> usize {
        self.cols
    }

    /// `p(b=0|x,y)`.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.cols + y]
    }

    pub fn probability(&self, x: usize, y: usize, outcome: Outcome) -> f64 {
        let p0 = self.get(x, y);
        match outcome {
            Outcome::Zero => p0,
            Outcome::One => 1.0 - p0,
        }
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.probs[x * self.cols..(x + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.probs.chunks(self.cols)
    }

    /// Largest `p(b|x,y)` over all outcomes and settings.
    pub fn max_probability(&self) -> f64 {
        self.probs.iter().map(|&p| p.max(1.0 - p)).fold(0.0, f64::max)
    }
}

/// `probs[x][y] = ½(1 + s_x·t_y)`, or 1 / 0 for a fixed outcome.
pub fn behavior_from_strategy(strategy: &Strategy) -> BehaviorTable {
    let rows = strategy.num_preparations();
    let cols = strategy.num_measurements();
    let mut probs = Vec::with_capacity(rows * cols);
    for s in strategy.preparations() {
        for (t, fixed) in strategy.measurements().iter().zip(&strategy.fixed) {
            probs.push(match fixed {
                Some(Outcome::Zero) => 1.0,
                Some(Outcome::One) => 0.0,
                None => unchecked_probability(s, t, Outcome::Zero),
            });
        }
    }
    BehaviorTable { rows, cols, probs }
}
