use std::io;

fn main() {
    let code = chiral_polytope::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
