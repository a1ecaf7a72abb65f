fn main() {
    std::process::exit(knotcensus::cli::main_with_args(std::env::args_os()));
}
