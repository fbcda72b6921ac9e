fn main() {
    std::process::exit(magic_simplex::cli::main());
}
