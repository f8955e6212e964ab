//! Seeded PRNG streams.
//!
//! Every parallel unit of work (a see-saw restart, an optimizer trial, a
//! simulation shard) owns a ChaCha stream selected by `(seed, index)`, so
//! results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bloch::BlochVector;

pub type StreamRng = ChaCha8Rng;

/// Independent generator for work unit `stream` under `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniformly distributed point on the unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let v = BlochVector::new(x, y, z);
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// Uniformly random rotation matrix (from a normalized Gaussian quaternion).
pub fn rotation<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 3]; 3] {
    let q: [f64; 4] = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-9 {
            break q.map(|v| v / n);
        }
    };
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}
