fn main() {
    std::process::exit(aggregation::cli::main_with_args(std::env::args_os()));
}
