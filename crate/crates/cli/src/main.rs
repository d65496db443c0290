use std::io::Write;
use std::process::ExitCode;

use casson_cli::{render_error, run, Args, Format, EXIT_INPUT};
use clap::Parser;

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.render(args.format).as_bytes());
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            let text = render_error(&e, args.format);
            let _ = match args.format {
                Format::Human => std::io::stderr().write_all(text.as_bytes()),
                Format::Json => std::io::stdout().write_all(text.as_bytes()),
            };
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
