fn main() {
    std::process::exit(twospectra::cli::run());
}
