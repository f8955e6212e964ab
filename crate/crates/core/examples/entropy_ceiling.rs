//! Ceiling on certifiable min-entropy and how fast the guessing floor
//! approaches it as the number of measurement settings grows.

use sdiqrng::entropy::{guessing_floor, lemma1_min_cos_sum, lemma1_oracle, max_certifiable_entropy, p_lb_floor};
use sdiqrng::protocol::r43_ideal;
use sdiqrng::verify::entropy_ceiling_scan;

fn main() -> sdiqrng::Result<()> {
    println!("ceiling: {:.10} bits per round", max_certifiable_entropy());
    println!("ideal R43 behavior: {:.10} bits", sdiqrng::entropy::min_entropy(&r43_ideal().behavior()));

    println!("\n Y   closed form    octant search   p_lb floor - ½(1+1/√3)");
    for y in 2..=9 {
        let found = lemma1_oracle(y, 100, 0)?;
        println!(
            "{y:>2}   {:>12.8}   {:>12.8}   {:.3e}",
            lemma1_min_cos_sum(y),
            found,
            p_lb_floor(y) - guessing_floor()
        );
    }
    for y in [30, 100, 301] {
        println!("{y:>3}  floor gap {:.3e}", p_lb_floor(y) - guessing_floor());
    }

    let scan = entropy_ceiling_scan(5_000, 1)?;
    println!(
        "\nrandom scan: {} of {} strategies beat a classical bound, highest min-entropy among them {:.6}",
        scan.violating, scan.strategies, scan.max_violating_entropy
    );
    Ok(())
}
