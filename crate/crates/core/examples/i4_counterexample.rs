//! Maximal violation of I₄ certifies nothing: the optimum makes one cell
//! deterministic. Dropping the fourth preparation leaves randomness behind.

use sdiqrng::bloch::behavior_from_strategy;
use sdiqrng::entropy::min_entropy;
use sdiqrng::protocol::i4_counterexample;
use sdiqrng::witness::{quantum_bound_seesaw_axes, WitnessSpec};

fn main() -> sdiqrng::Result<()> {
    let (bound, h) = i4_counterexample()?;
    let s = bound.quantum_strategy().unwrap();
    println!("I4 optimum {:.10}, min-entropy {h:.3e}", bound.value);
    println!("s4 · t1 = {:.12}", s.preparations()[3].dot(&s.measurements()[0]));

    let truncated = WitnessSpec::i4().without_row(3)?;
    for seed in 0..3 {
        let b = quantum_bound_seesaw_axes(&truncated, 20, seed)?;
        let h = min_entropy(&behavior_from_strategy(b.quantum_strategy().unwrap()));
        println!("without x=4, seed {seed}: value {:.10}, min-entropy {h:.6}", b.value);
    }
    Ok(())
}
