fn main() {
    std::process::exit(bpint_cli::run(std::env::args_os()));
}
