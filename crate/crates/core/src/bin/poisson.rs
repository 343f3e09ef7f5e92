fn main() {
    std::process::exit(poisson_core::cli::main());
}
