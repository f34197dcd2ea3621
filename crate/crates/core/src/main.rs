fn main() {
    std::process::exit(minor_toolkit::cli::run(std::env::args_os()));
}
