use sdiqrng::verify::run_all;

fn main() -> sdiqrng::Result<()> {
    for c in run_all(0)? {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(())
}
