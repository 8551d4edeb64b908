fn main() {
    std::process::exit(hopfstar_cli::main_with(std::env::args_os()));
}
