fn main() {
    std::process::exit(graph_agmon::cli::run(std::env::args_os()));
}
