use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (status, stdout, stderr) = freelike_cli::main_with_args(std::env::args_os());
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    ExitCode::from(status as u8)
}
