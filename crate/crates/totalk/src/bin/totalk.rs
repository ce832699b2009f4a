use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (code, output) = totalk::cli::dispatch(&args);
    if code == 2 {
        eprint!("{}", ensure_newline(output));
    } else {
        print!("{}", ensure_newline(output));
    }
    ExitCode::from(code as u8)
}

fn ensure_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
