fn main() {
    std::process::exit(k3type::cli::run(std::env::args_os()));
}
