use std::io;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = ruzsa_core::cli::run_cli(&argv, &mut io::stdin(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
