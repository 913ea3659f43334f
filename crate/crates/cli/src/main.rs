fn main() {
    std::process::exit(sgf_cli::run(std::env::args_os()));
}
