fn main() {
    std::process::exit(opposition::cli::run(std::env::args_os()));
}
