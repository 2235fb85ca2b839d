fn main() {
    std::process::exit(diacong::cli::run(std::env::args_os()));
}
