fn main() {
    std::process::exit(hopfmod::cli::main_with_args(std::env::args()));
}
