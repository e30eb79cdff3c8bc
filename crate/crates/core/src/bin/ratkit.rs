fn main() {
    std::process::exit(ratkit::cli::run());
}
