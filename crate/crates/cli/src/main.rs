mod args;
mod commands;
mod error;
mod table;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use table::{render, write_output, Metadata};

const THREADS_ENV: &str = "BPG_THREADS";

/// Reads a `key=value` file into `--key value` arguments. `true` turns a
/// key into a bare switch and `false` drops it.
fn config_args(path: &Path) -> Result<Vec<(String, Vec<String>)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{}:{}: expected key=value", path.display(), lineno + 1))
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k == "config" {
            return Err(CliError::Usage(format!("{}:{}: nested config", path.display(), lineno + 1)));
        }
        let flag = format!("--{}", k.replace('_', "-"));
        let argv = match v {
            "true" => vec![flag],
            "false" => continue,
            _ => vec![flag, v.to_string()],
        };
        out.push((k.replace('_', "-"), argv));
    }
    Ok(out)
}

/// Splices config-file values in after the subcommand; flags given on the
/// command line win.
fn expand_config(mut argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let pos = argv.iter().position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else { return Ok(argv) };
    let path = match argv[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => argv
            .get(pos + 1)
            .cloned()
            .ok_or_else(|| CliError::Usage("--config needs a path".into()))?,
    };
    let given = |key: &str| {
        let long = format!("--{key}");
        argv.iter().any(|a| *a == long || a.starts_with(&format!("{long}=")))
    };
    let extra: Vec<String> = config_args(Path::new(&path))?
        .into_iter()
        .filter(|(k, _)| !given(k))
        .flat_map(|(_, a)| a)
        .collect();
    let at = 2.min(argv.len());
    argv.splice(at..at, extra);
    Ok(argv)
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("{THREADS_ENV}: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    let table = match &cli.command {
        Command::Eval(a) => commands::eval(a)?,
        Command::Moments(a) => commands::moments(a)?,
        Command::Entropy(a) => commands::entropy(a)?,
        Command::Galton(a) => commands::galton(a)?,
        Command::Fit(a) => commands::fit(a)?,
        Command::Ttt(a) => commands::ttt(a)?,
        Command::Describe(a) => commands::describe(a)?,
        Command::Simulate(a) => commands::simulate(a)?,
    };
    let common = cli.command.common();
    let meta = Metadata::new(cli.command.name(), common.seed, common.deterministic);
    let bytes = render(&table, &meta, common.format)?;
    write_output(&bytes, common.output.as_deref())
        .map_err(|e| match &common.output {
            Some(p) => CliError::Output(format!("{}: {e}", p.display())),
            None => CliError::Output(e.to_string()),
        })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args_os().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = expand_config(argv).and_then(|argv| {
        let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
        run(cli)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
