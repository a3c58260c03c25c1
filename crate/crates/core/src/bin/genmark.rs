fn main() {
    env_logger::init();
    let code = genmark::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
