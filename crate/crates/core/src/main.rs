fn main() {
    std::process::exit(garside_b3::cli::main_with_args(std::env::args_os()));
}
