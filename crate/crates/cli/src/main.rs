use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sympleib_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let out = run(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    let mut code = out.code;
    if let Some(path) = &cli.json_out {
        let text = serde_json::to_string_pretty(&out.json).expect("serializable");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            code = EXIT_USAGE;
        }
    }
    ExitCode::from(code as u8)
}
