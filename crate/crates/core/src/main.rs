use std::io::{stderr, stdout};

fn main() {
    let code = dirichlet_hopf::cli::run(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock());
    std::process::exit(code);
}
