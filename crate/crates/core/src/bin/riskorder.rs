use std::io::{Read, Write};
use std::process::ExitCode;

use riskorder::cli::{run, Context, EXIT_INPUT};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let mut stdin = Vec::new();
    if argv.iter().skip(1).any(|a| a == "-") {
        if let Err(e) = std::io::stdin().read_to_end(&mut stdin) {
            eprintln!("error: cannot read stdin: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    let ctx = match Context::from_env(stdin) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let out = run(&argv, &ctx);
    let _ = std::io::stdout().write_all(&out.stdout);
    let _ = std::io::stderr().write_all(&out.stderr);
    ExitCode::from(out.code as u8)
}
