fn main() {
    std::process::exit(barrier_core::cli::main_with_args(std::env::args_os()));
}
