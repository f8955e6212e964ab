//! Classical and qubit bounds for the built-in witnesses and one custom one.
//!
//! Run with `cargo run --example witness_bounds`.

use sdiqrng::witness::{classical_bound, quantum_bound_grid, quantum_bound_seesaw, WitnessSpec};

fn main() -> sdiqrng::Result<()> {
    let custom = WitnessSpec::new("custom", vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 0.5]])?;
    println!("{:<8} {:>10} {:>14} {:>14}", "witness", "classical", "see-saw", "grid(60)");
    for w in [WitnessSpec::r43(), WitnessSpec::r33(), WitnessSpec::i4(), custom] {
        let c = classical_bound(&w)?;
        let q = quantum_bound_seesaw(&w, 20, 0)?;
        let g = quantum_bound_grid(&w, 60)?;
        println!("{:<8} {:>10.6} {:>14.10} {:>14.10}", w.name(), c.value, q.value, g);
    }

    let c = classical_bound(&WitnessSpec::r43())?;
    let best = c.classical_strategy().unwrap();
    println!("\nR43 classical optimum: encoding {:?}, responses {:?}", best.encoding, best.response);
    Ok(())
}
