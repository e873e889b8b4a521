fn main() {
    std::process::exit(ndmm::cli::main());
}
