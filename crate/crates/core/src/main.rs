fn main() -> std::process::ExitCode {
    ncqm::cli::main()
}
