fn main() {
    let code = relicut::cli::run(std::env::args_os());
    std::process::exit(code);
}
