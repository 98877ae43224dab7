fn main() {
    std::process::exit(hamcoh::cli::main());
}
