fn main() {
    let status = vindef::cli::run(std::env::args_os());
    std::process::exit(status.code);
}
