fn main() {
    std::process::exit(kneadlab::cli::main_with_args(std::env::args_os()));
}
