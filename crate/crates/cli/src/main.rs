fn main() {
    std::process::exit(morphic_cli::run(std::env::args_os()));
}
