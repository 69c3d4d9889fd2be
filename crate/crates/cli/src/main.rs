use std::io::Write;

use clap::Parser;

fn main() {
    let cli = match qcopier_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else
            // is a usage error.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match qcopier_cli::run(&cli, &mut lock) {
        Ok(()) => {
            let _ = lock.flush();
        }
        Err(err) => {
            let _ = lock.flush();
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
