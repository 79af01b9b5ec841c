fn main() {
    env_logger::init();
    std::process::exit(mopkit::cli::run());
}
