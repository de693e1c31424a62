use std::io;

fn main() {
    let code = elliptic_helix::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
