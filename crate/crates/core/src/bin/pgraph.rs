use std::io;

fn main() {
    let code = pgraph::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
