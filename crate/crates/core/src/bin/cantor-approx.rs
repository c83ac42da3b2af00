fn main() {
    std::process::exit(cantor_approx::cli::run_command(std::env::args_os()));
}
