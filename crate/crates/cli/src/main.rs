use std::io::Write;

fn main() {
    let out = holodep_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(out.stdout.as_bytes());
    std::process::exit(out.code);
}
