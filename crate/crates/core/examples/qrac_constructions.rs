//! The tetrahedral 3→1 code behind R₄,₃ and the three-preparation code built from
//! the 2→1 code, compared by guessing probability and min-entropy.

use sdiqrng::entropy::{max_certifiable_entropy, min_entropy};
use sdiqrng::protocol::{guessing_task_average, r33_construction, r43_ideal};
use sdiqrng::witness::evaluate;

fn main() -> sdiqrng::Result<()> {
    for spec in [r43_ideal(), r33_construction()] {
        let behavior = spec.behavior();
        println!("{}:", spec.witness.name());
        for (label, row) in spec.labels.iter().zip(behavior.rows()) {
            let cells: Vec<String> = row.iter().map(|p| format!("{p:.4}")).collect();
            println!("  x={label}  p(b=0|x,y) = [{}]", cells.join(", "));
        }
        println!(
            "  witness {:.6}, task average {:.6}, max cell {:.6}, min-entropy {:.6} (ceiling {:.6})\n",
            evaluate(&spec.witness, &behavior)?,
            guessing_task_average(&spec),
            behavior.max_probability(),
            min_entropy(&behavior),
            max_certifiable_entropy()
        );
    }
    Ok(())
}
