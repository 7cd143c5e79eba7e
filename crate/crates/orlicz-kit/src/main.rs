fn main() {
    let mut out = std::io::stdout().lock();
    std::process::exit(orlicz_kit::cli::run(std::env::args_os(), &mut out));
}
