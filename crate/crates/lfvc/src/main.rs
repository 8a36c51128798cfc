use std::process::exit;

fn main() {
    exit(lfvc::cli::run());
}
