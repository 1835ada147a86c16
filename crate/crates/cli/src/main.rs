fn main() {
    std::process::exit(sr_chroma_cli::run(std::env::args_os()));
}
