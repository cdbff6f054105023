fn main() {
    std::process::exit(double_bubble::cli::run(std::env::args()));
}
