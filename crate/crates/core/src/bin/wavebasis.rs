fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("WAVEBASIS_LOG", "warn")).init();
    std::process::exit(wavebasis::cli::run(std::env::args_os()));
}
