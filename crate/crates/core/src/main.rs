fn main() {
    std::process::exit(relrabi::cli::main_with_args(std::env::args_os()));
}
