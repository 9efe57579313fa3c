fn main() {
    std::process::exit(critqfi_cli::main_with_args(std::env::args_os()));
}
