fn main() {
    std::process::exit(hazmean::cli::run());
}
