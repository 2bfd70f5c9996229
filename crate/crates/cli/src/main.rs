fn main() {
    std::process::exit(lefschetz_cli::cli_main(std::env::args_os()));
}
