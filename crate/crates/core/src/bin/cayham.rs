fn main() {
    std::process::exit(cayham::cli::run(std::env::args_os()));
}
