fn main() {
    std::process::exit(germlab::run(std::env::args_os()));
}
