//! Simulates the R₄,₃ protocol at a few noise levels and certifies each log.

use sdiqrng::protocol::{certify, r43_ideal, simulate_rounds};

fn main() -> sdiqrng::Result<()> {
    let spec = r43_ideal();
    println!("noise  rounds     test  estimate  radius   H/round   net/round");
    for noise in [0.0, 0.03, 0.05, 0.1] {
        for (rounds, tf) in [(1_000_000, 0.1), (4_000_000, 0.5)] {
            let log = simulate_rounds(&spec, rounds, tf, (0, 1), noise, 0)?;
            let c = certify(&log, &spec, 0.99)?;
            println!(
                "{noise:<5}  {rounds:<9}  {tf:<4}  {:.5}   {:.4}   {:.5}   {:+.5}",
                c.witness_estimate, c.confidence_radius, c.certified_entropy_per_round, c.net_expansion_per_round
            );
        }
    }
    Ok(())
}
