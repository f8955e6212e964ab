fn main() {
    std::process::exit(sdiqrng::cli::run(std::env::args_os()));
}
