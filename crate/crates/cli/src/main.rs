fn main() {
    std::process::exit(esms_cli::run());
}
