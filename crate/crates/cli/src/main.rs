use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;
mod error;
mod job;
mod output;

use args::{Cli, Command, OutputArgs};
use error::{CliError, CliResult};
use output::Report;

/// Environment variable capping the worker threads used by sweeps.
const THREADS_VAR: &str = "VDW_THREADS";

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os().collect()))
}

fn run(argv: Vec<OsString>) -> u8 {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match dispatch(argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn parse<I, T>(argv: I) -> CliResult<Result<Cli, String>>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => Ok(Ok(cli)),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => Ok(Err(e.to_string())),
        Err(e) => {
            let msg = e.to_string();
            Err(CliError::Usage(msg.trim_start_matches("error: ").trim_end().to_string()))
        }
    }
}

fn dispatch(argv: Vec<OsString>) -> CliResult<u8> {
    match parse(argv)? {
        Ok(cli) => execute(cli.command),
        Err(help) => {
            print!("{help}");
            Ok(0)
        }
    }
}

fn emit(report: &Report, out: &OutputArgs) -> CliResult<()> {
    let text = report.render(out.format);
    match &out.out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)?;
        }
        None => match std::io::stdout().write_all(text.as_bytes()) {
            // A closed pipe (`| head`) is not a failure.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

fn execute(command: Command) -> CliResult<u8> {
    match command {
        Command::Energy(a) => emit(&commands::energy(&a)?, &a.output)?,
        Command::Atlas(a) => emit(&commands::atlas(&a)?, &a.output)?,
        Command::Thresholds(a) => emit(&commands::thresholds(&a)?, &a.output)?,
        Command::Intermediate(a) => emit(&commands::intermediate(&a)?, &a.output)?,
        Command::Verify(a) => {
            let (report, ok) = commands::verify(&a)?;
            emit(&report, &a.output)?;
            if !ok {
                return Err(CliError::Numerical("oracle and closed forms disagree beyond tolerance".into()));
            }
        }
        Command::Job(a) => run_jobs(&a.path)?,
    }
    Ok(0)
}

fn run_jobs(path: &Path) -> CliResult<()> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let jobs = job::load_jobs(&text, path)?;
    let batch = text.trim_start().starts_with('[');
    for (i, j) in jobs.iter().enumerate() {
        let argv = job::to_argv(j, batch.then_some(i), path)?;
        match parse(argv)? {
            Ok(cli) => {
                execute(cli.command)?;
            }
            Err(_) => return Err(CliError::Usage(format!("job {} asked for help output", i + 1))),
        }
    }
    Ok(())
}
