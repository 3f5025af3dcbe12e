fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(toric_core::cli::run(&argv));
}
