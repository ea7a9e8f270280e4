fn main() {
    std::process::exit(dunkl_kit::cli::main_with(std::env::args_os()));
}
