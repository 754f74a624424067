use std::io;

fn main() {
    let code = pattern_mobius::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
