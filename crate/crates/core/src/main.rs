fn main() { std::process::exit(ratgrow::cli::run_cli(std::env::args_os().collect())); }
