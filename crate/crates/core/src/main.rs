fn main() {
    std::process::exit(basewitness::cli::run(std::env::args_os()));
}
