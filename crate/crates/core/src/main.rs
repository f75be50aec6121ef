fn main() -> std::process::ExitCode {
    lt_hkr::cli::main_with_args(std::env::args_os())
}
