fn main() {
    std::process::exit(carlitz_cli::run(std::env::args_os()));
}
