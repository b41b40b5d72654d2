use std::fmt;

/// Failure classes, each with its own process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Convergence(String),
    Numerical(String),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Output(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Convergence(_) => 4,
            CliError::Numerical(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Data(m)
            | CliError::Convergence(m)
            | CliError::Numerical(m)
            | CliError::Output(m) => f.write_str(m),
        }
    }
}

impl From<bpg_core::Error> for CliError {
    fn from(e: bpg_core::Error) -> Self {
        use bpg_core::Error as E;
        let msg = e.to_string();
        match e {
            E::Domain(_) | E::Parse(_) => CliError::Usage(msg),
            E::Dataset(_) | E::Io { .. } => CliError::Data(msg),
            E::Convergence { .. } | E::Fit(_) => CliError::Convergence(msg),
            E::Quadrature { .. } | E::NonFinite(_) | E::NotPositiveDefinite => CliError::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
