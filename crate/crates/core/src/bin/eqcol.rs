fn main() {
    std::process::exit(eqcol::cli::run(std::env::args_os()));
}
