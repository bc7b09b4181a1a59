use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. `cabwt stats | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = cabwt::cli::Cli::parse();
    match cabwt::cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
