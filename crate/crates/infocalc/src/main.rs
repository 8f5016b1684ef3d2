use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = infocalc::run(std::env::args_os());
    if !result.output.is_empty() {
        let mut out = std::io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = out.write_all(result.output.as_bytes());
    }
    if !result.summary.is_empty() {
        eprintln!("{}", result.summary);
    }
    ExitCode::from(u8::try_from(result.exit_code).unwrap_or(2))
}
