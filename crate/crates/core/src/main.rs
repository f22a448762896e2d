fn main() {
    std::process::exit(eqkh::cli::main());
}
