fn main() {
    std::process::exit(germ_cli::run(std::env::args_os()));
}
