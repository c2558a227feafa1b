fn main() {
    std::process::exit(fmb_cli::run_cli(std::env::args()));
}
