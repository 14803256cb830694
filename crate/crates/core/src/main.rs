fn main() {
    std::process::exit(polyoracle::harness::cli::run(std::env::args_os()));
}
