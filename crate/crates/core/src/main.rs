fn main() -> std::process::ExitCode {
    toric_zeta::cli::main()
}
