fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CFHM_LOG")).init();
    std::process::exit(cfhm::cli::main_with(std::env::args_os()));
}
