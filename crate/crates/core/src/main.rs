fn main() -> std::process::ExitCode {
    cfpq::cli::main_with(std::env::args_os())
}
