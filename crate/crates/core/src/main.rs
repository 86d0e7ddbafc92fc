fn main() {
    std::process::exit(twomode::cli::main_with_args(std::env::args_os()));
}
