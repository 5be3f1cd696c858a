fn main() {
    std::process::exit(backlund::cli::main_with_args(std::env::args_os()));
}
