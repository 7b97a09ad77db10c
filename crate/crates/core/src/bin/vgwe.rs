fn main() {
    std::process::exit(vgwe::cli::main_with_args(std::env::args_os()));
}
