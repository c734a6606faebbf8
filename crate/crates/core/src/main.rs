fn main() {
    std::process::exit(clawsynth::cli::run(std::env::args_os()));
}
