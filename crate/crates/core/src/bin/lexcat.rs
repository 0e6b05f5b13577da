fn main() {
    std::process::exit(lexcat::cli::run(std::env::args_os()));
}
