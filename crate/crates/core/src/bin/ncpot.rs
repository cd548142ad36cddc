//! `ncpot`: command-line access to the library verbs.

fn main() {
    let code = ncpot::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
