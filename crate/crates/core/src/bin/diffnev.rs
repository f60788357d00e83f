fn main() -> std::process::ExitCode {
    diffnev::cli::main()
}
