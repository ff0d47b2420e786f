fn main() {
    std::process::exit(capkit::cli::main_with_args(std::env::args_os()));
}
