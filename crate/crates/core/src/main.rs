fn main() {
    std::process::exit(twistor_engine::cli::run(std::env::args_os()));
}
