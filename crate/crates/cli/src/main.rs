fn main() {
    std::process::exit(tbdecay_cli::main_with_args(std::env::args_os()));
}
