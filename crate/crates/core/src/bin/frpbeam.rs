fn main() -> std::process::ExitCode {
    frpbeam::cli::main()
}
