fn main() {
    std::process::exit(lorentz3::cli::main());
}
