fn main() {
    std::process::exit(cws_graph::cli::main_with_args(std::env::args_os()));
}
