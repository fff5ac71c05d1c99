use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = qshare_cli::init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(qshare_cli::EXIT_INPUT as u8);
    }
    let outcome = qshare_cli::run(std::env::args_os());
    let _ = std::io::stdout().lock().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
