fn main() {
    std::process::exit(twistkit::cli::main_with(std::env::args_os()));
}
