fn main() {
    std::process::exit(cuntz_endo::cli::run(std::env::args_os()));
}
