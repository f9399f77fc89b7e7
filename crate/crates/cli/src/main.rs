fn main() {
    std::process::exit(klreg_cli::run(std::env::args().skip(1)));
}
