use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_BOUND: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_USAGE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse config {}: {source}", path.display())]
    Config {
        path: PathBuf,
        source: Box<toml::de::Error>,
    },
    #[error(transparent)]
    Model(#[from] olg_land_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use olg_land_core::Error as E;
        match self {
            CliError::Config { .. } => EXIT_USAGE,
            CliError::Model(E::BoundViolated { .. } | E::NoValidStart { .. }) => EXIT_BOUND,
            CliError::Model(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Csv { .. } => EXIT_IO,
        }
    }
}
