//! CLI-level error type. Everything here maps to process exit code 2
//! (usage or configuration); a falsified claim is not an error but exit 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Field(#[from] walsh_forge_core::gf::FieldError),
    #[error("{0}")]
    Walsh(#[from] walsh_forge_core::walsh::WalshError),
    #[error("{0}")]
    Family(#[from] walsh_forge_core::family::FamilyError),
    #[error("{0}")]
    Expsum(#[from] walsh_forge_core::expsums::ExpsumError),
    #[error("{0}")]
    Units(#[from] walsh_forge_core::units::UnitsError),
    #[error("{0}")]
    Niho(#[from] walsh_forge_core::niho::NihoError),
    #[error("{0}")]
    Parse(#[from] crate::spec_text::ParseError),
    #[error("{0}")]
    SpecBuild(#[from] crate::spec_text::SpecBuildError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}
