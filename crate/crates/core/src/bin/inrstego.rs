fn main() {
    std::process::exit(inrstego::cli::run(std::env::args_os()));
}
