fn main() {
    std::process::exit(whalab::cli::run(std::env::args_os()));
}
