fn main() {
    std::process::exit(ecj::cli::run(std::env::args_os()));
}
