//! Layered run configuration.
//!
//! Defaults come from an optional JSON file (`--config <path>`, falling back
//! to the `AFM_SQRTWELL_CONFIG` environment variable) and are overridden by
//! command-line flags. Unknown keys in the file are rejected rather than
//! silently ignored.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sqrtwell::afm::PrincipalN;
use sqrtwell::exact::MeshConfig;

use crate::output::Format;

pub const ENV_CONFIG: &str = "AFM_SQRTWELL_CONFIG";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mesh_size: Option<usize>,
    pub scale: Option<f64>,
    pub eta: Option<f64>,
    pub variant: Option<String>,
    pub format: Option<String>,
    pub precision: Option<u8>,
}

/// Fully resolved settings shared by every command.
pub struct RunConfig {
    pub eta: f64,
    pub variant: PrincipalN,
    pub format: Format,
    pub precision: u8,
}

/// Reads the config file named by flag or environment; absent means empty.
pub fn load_file(explicit: Option<&Path>) -> Result<FileConfig, String> {
    let path: Option<PathBuf> = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_CONFIG).map(PathBuf::from));
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
}

pub fn parse_variant(name: &str) -> Result<PrincipalN, String> {
    match name {
        "harmonic" => Ok(PrincipalN::Harmonic),
        "coulomb" => Ok(PrincipalN::Coulomb),
        "linear" => Ok(PrincipalN::Linear),
        "fitted" => Ok(PrincipalN::Fitted),
        other => Err(format!(
            "unknown variant {other:?}; expected harmonic, coulomb, linear or fitted"
        )),
    }
}

fn parse_format(name: &str) -> Result<Format, String> {
    match name {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(format!("unknown format {other:?}; expected csv or json")),
    }
}

/// Merges flags over file values over built-in defaults.
pub fn resolve(
    file: &FileConfig,
    flag_format: Option<Format>,
    flag_precision: Option<u8>,
) -> Result<RunConfig, String> {
    let format = match flag_format {
        Some(f) => f,
        None => file
            .format
            .as_deref()
            .map(parse_format)
            .transpose()?
            .unwrap_or(Format::Csv),
    };
    let precision = flag_precision.or(file.precision).unwrap_or(5);
    if !(1..=15).contains(&precision) {
        return Err(format!(
            "precision must be between 1 and 15, got {precision}"
        ));
    }
    let eta = file.eta.unwrap_or(1.0);
    if !eta.is_finite() {
        return Err(format!("eta must be finite, got {eta}"));
    }
    let variant = file
        .variant
        .as_deref()
        .map(parse_variant)
        .transpose()?
        .unwrap_or(PrincipalN::Harmonic);
    Ok(RunConfig {
        eta,
        variant,
        format,
        precision,
    })
}

/// Mesh settings for the solver-backed commands, same precedence rules.
pub fn mesh(
    file: &FileConfig,
    flag_size: Option<usize>,
    flag_scale: Option<f64>,
) -> Result<MeshConfig, sqrtwell::exact::ExactError> {
    let size = flag_size
        .or(file.mesh_size)
        .unwrap_or(MeshConfig::DEFAULT_SIZE);
    match flag_scale.or(file.scale) {
        Some(scale) => MeshConfig::with_scale(size, scale),
        None => MeshConfig::new(size),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_apply_when_everything_is_absent() {
        let cfg = resolve(&FileConfig::default(), None, None).unwrap();
        assert_eq!(cfg.precision, 5);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.eta, 1.0);
        assert!(matches!(cfg.variant, PrincipalN::Harmonic));
    }

    #[test]
    fn flags_override_file_values() {
        let file = FileConfig {
            precision: Some(9),
            format: Some("json".into()),
            ..FileConfig::default()
        };
        let cfg = resolve(&file, Some(Format::Csv), Some(3)).unwrap();
        assert_eq!(cfg.precision, 3);
        assert_eq!(cfg.format, Format::Csv);
    }

    #[test]
    fn bad_precision_is_rejected_from_any_source() {
        let file = FileConfig {
            precision: Some(0),
            ..FileConfig::default()
        };
        assert!(resolve(&file, None, None).is_err());
        assert!(resolve(&FileConfig::default(), None, Some(16)).is_err());
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let err = serde_json::from_str::<FileConfig>(r#"{"mesh": 40}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
    }

    #[test]
    fn mesh_precedence_matches_the_other_settings() {
        let file = FileConfig {
            mesh_size: Some(60),
            scale: Some(0.25),
            ..FileConfig::default()
        };
        let cfg = mesh(&file, None, None).unwrap();
        assert_eq!(cfg.size(), 60);
        assert_eq!(cfg.scale(), Some(0.25));
        let cfg = mesh(&file, Some(80), Some(0.5)).unwrap();
        assert_eq!(cfg.size(), 80);
        assert_eq!(cfg.scale(), Some(0.5));
        assert!(mesh(&file, Some(10), None).is_err());
    }
}
