fn main() {
    std::process::exit(g2spiral::cli::run(std::env::args_os()));
}
