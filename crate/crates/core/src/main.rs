fn main() {
    std::process::exit(teleportsim::cli::run());
}
