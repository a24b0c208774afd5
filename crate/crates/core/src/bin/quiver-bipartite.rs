use std::io;

fn main() {
    let code = quiver_bipartite::cli::cli_main(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
