fn main() {
    std::process::exit(lhm_decay::cli::main_with_args(std::env::args_os()));
}
