fn main() {
    std::process::exit(hyperk::cli::run(std::env::args_os()));
}
