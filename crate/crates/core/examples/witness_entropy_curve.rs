//! Certified min-entropy as a function of the observed R₄,₃ value, printed as
//! CSV (pass a point count as the first argument).

use sdiqrng::cli::write_curve_csv;

fn main() -> sdiqrng::Result<()> {
    let points = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(21);
    write_curve_csv(points, &mut std::io::stdout().lock())
}
