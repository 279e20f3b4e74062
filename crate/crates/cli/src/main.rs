fn main() {
    std::process::exit(rchi_cli::run(std::env::args_os()));
}
