fn main() {
    std::process::exit(korder::cli::main());
}
