fn main() {
    std::process::exit(rlfrac::harness::run_cli(std::env::args_os()));
}
