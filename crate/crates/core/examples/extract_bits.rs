//! Certify a simulated run, then hash its generation outputs with a Toeplitz
//! matrix and check the bytes for gross bias.

use rand::Rng;
use sdiqrng::extract::{byte_chi_square, output_budget, BitString, BlockExtractor};
use sdiqrng::protocol::{certify, r43_ideal, simulate_rounds};

fn main() -> sdiqrng::Result<()> {
    let spec = r43_ideal();
    let log = simulate_rounds(&spec, 2_000_000, 0.5, (0, 1), 0.0, 3)?;
    let cert = certify(&log, &spec, 0.99)?;
    let raw = BitString::from_bools(log.generation_bits());
    let budget = output_budget(&cert);
    println!("{} raw bits at {:.4} bits each, budget {budget} bits", raw.len(), cert.certified_entropy_per_round);

    let block = 4096;
    let mut rng = sdiqrng::rng::stream(42, 0);
    let seed = BitString::from_bools((0..2 * block).map(|_| rng.random::<bool>()));
    let extractor = BlockExtractor::new(block, cert.certified_entropy_per_round, &seed)?;
    let out = extractor.extract(&raw, budget)?;
    let bytes = out.to_bytes_msb();
    let (stat, p) = byte_chi_square(&bytes)?;
    println!(
        "{} output bits, {} per block; chi-square {stat:.1}, p = {p:.3}",
        out.len(),
        extractor.config().output_length()
    );
    let head: String = bytes.iter().take(16).map(|b| format!("{b:02x}")).collect();
    println!("first bytes: {head}");
    Ok(())
}
