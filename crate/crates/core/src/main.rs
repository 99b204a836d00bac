use std::io::{self, Write};

fn main() {
    let ctx = gw1::cli::Context::from_env();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = gw1::cli::run(std::env::args_os(), &ctx, &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    std::process::exit(code);
}
