fn main() {
    std::process::exit(kleinwell::cli::run(std::env::args_os()));
}
