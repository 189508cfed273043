fn main() {
    std::process::exit(folcheck::cli::run(std::env::args_os()));
}
