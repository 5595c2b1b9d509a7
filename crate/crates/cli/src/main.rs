use std::io;

fn main() {
    let code = pweyl_cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
