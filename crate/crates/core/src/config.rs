//! Material config files.
//!
//! Two sections with three keys each; anything else is rejected.
//!
//! ```text
//! [electric]
//! omega_p = 0.75
//! omega_t = 1.03
//! gamma = 0.001
//!
//! [magnetic]
//! omega_p = 0.43
//! omega_t = 1.0
//! gamma = 0.001
//! ```

use std::path::Path;

use thiserror::Error;

use crate::materials::{MaterialParams, MaterialsError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Invalid(#[from] MaterialsError),
}

pub fn parse_material(text: &str) -> Result<MaterialParams, ConfigError> {
    let p: MaterialParams = toml::from_str(text)?;
    p.validate()?;
    Ok(p)
}

pub fn load_material(path: impl AsRef<Path>) -> Result<MaterialParams, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_material(&text)
}
