fn main() {
    std::process::exit(cfqkd::cli::main_with_args(std::env::args_os()));
}
