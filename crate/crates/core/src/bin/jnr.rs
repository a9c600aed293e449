fn main() {
    std::process::exit(jointrange::cli::run(std::env::args_os()));
}
