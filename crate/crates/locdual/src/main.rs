use std::process::ExitCode;

use locdual::render::pretty;
use locdual::request::OutputFormat;
use locdual::run::Response;
use locdual::{run, CliError, Request};

fn main() -> ExitCode {
    let (response, format) = match Request::from_argv(std::env::args()) {
        Ok(req) => (run(&req), req.output_format()),
        Err(CliError::Args(e)) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => (Response::from_error(&e), OutputFormat::Json),
    };
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&response).expect("response serializes")),
        OutputFormat::Pretty => print!("{}", pretty(&response)),
    }
    ExitCode::from(response.exit_code as u8)
}
