use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = hypersection_cli::main_with(argv, &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
