fn main() {
    std::process::exit(polynum::cli::main());
}
