fn main() {
    std::process::exit(infodiet_cli::dispatch(std::env::args_os()));
}
