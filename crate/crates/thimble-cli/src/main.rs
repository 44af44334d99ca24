use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, text) = thimble_cli::run_command(args);
    print!("{text}");
    ExitCode::from(code as u8)
}
