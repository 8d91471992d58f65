fn main() {
    std::process::exit(commvar::cli::main_with_args(std::env::args_os()));
}
