fn main() {
    std::process::exit(schreier_lab::cli::dispatch(std::env::args_os()));
}
