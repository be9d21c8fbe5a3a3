fn main() {
    std::process::exit(orbit_codes::cli::run(std::env::args_os()));
}
