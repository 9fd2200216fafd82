fn main() {
    std::process::exit(minorbench::cli::run_cli(std::env::args_os()));
}
