fn main() {
    std::process::exit(qjunta::cli::main_with_args(std::env::args_os()));
}
