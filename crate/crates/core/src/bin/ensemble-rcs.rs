fn main() {
    std::process::exit(ensemble_rcs::cli::main_with_args(std::env::args_os()));
}
