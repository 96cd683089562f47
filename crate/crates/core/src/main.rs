fn main() {
    std::process::exit(diamond_jcm::cli::main_with_args(std::env::args_os()));
}
