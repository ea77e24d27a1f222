use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<_> = std::env::args_os().collect();
    let pretty = argv.iter().any(|a| a == "--pretty");
    let result = cycmod_cli::run(argv);
    if let Some(msg) = result
        .payload
        .pointer("/error/message")
        .and_then(|m| m.as_str())
    {
        eprintln!("cycmod: {msg}");
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(result.render(pretty).as_bytes());
    ExitCode::from(result.exit_code as u8)
}
