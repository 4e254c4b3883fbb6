mod cli;

fn main() {
    std::process::exit(cli::run_from(std::env::args_os()));
}
