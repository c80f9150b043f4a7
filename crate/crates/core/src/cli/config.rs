use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Optional TOML defaults. Flags and environment variables take precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out_dir: Option<PathBuf>,
    pub format: Option<super::Format>,
    pub max_records: Option<usize>,
    pub timeout_secs: Option<u64>,
    pub retries: Option<u32>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c: FileConfig = toml::from_str("out_dir = \"out\"\nformat = \"json\"\nretries = 2\n").unwrap();
        assert_eq!(c.out_dir, Some(PathBuf::from("out")));
        assert_eq!(c.format, Some(super::super::Format::Json));
        assert_eq!(c.retries, Some(2));
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
