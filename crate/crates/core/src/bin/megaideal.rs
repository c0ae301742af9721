fn main() {
    std::process::exit(megaideal::cli::run(std::env::args_os()));
}
