fn main() {
    std::process::exit(linespace::cli::run(std::env::args_os()));
}
