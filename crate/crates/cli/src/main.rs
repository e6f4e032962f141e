fn main() {
    std::process::exit(cubefactors_cli::run(std::env::args_os()));
}
