fn main() {
    std::process::exit(petersson_lab::cli::parse_and_dispatch());
}
