use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = tracerange_cli::run_command(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(result.body.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(u8::try_from(result.exit_code).unwrap_or(1))
}
