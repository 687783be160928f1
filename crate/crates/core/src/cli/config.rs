//! Flat `key=value` configuration files.

use std::path::{Path, PathBuf};

use crate::attacks::AttackKind;
use crate::error::{Error, Result};
use crate::protocols::ProtocolId;

use super::spec::OutputFormat;

/// Values read from a config file; absent keys stay `None`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigValues {
    pub protocol: Option<ProtocolId>,
    pub attack: Option<AttackKind>,
    pub rounds: Option<u64>,
    pub f: Option<f64>,
    pub n: Option<usize>,
    pub s: Option<f64>,
    pub seed: Option<u64>,
    pub sample_fraction: Option<f64>,
    pub abort_threshold: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

fn parse<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("line {line}: bad value {value:?} for {key}")))
}

/// Parses config text. Blank lines and `#` comments are skipped; keys may
/// use `-` or `_`.
pub fn parse_config(text: &str) -> Result<ConfigValues> {
    let mut cfg = ConfigValues::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("line {line}: expected key=value")))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "protocol" => cfg.protocol = Some(parse(line, &key, value)?),
            "attack" => cfg.attack = Some(parse(line, &key, value)?),
            "rounds" => cfg.rounds = Some(parse(line, &key, value)?),
            "f" => cfg.f = Some(parse(line, &key, value)?),
            "n" => cfg.n = Some(parse(line, &key, value)?),
            "s" => cfg.s = Some(parse(line, &key, value)?),
            "seed" => cfg.seed = Some(parse(line, &key, value)?),
            "sample_fraction" => cfg.sample_fraction = Some(parse(line, &key, value)?),
            "abort_threshold" => cfg.abort_threshold = Some(parse(line, &key, value)?),
            "output" => cfg.output = Some(PathBuf::from(value)),
            "format" => cfg.format = Some(parse(line, &key, value)?),
            other => {
                return Err(Error::InvalidParameter(format!("line {line}: unknown key {other:?}")))
            }
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ConfigValues> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let cfg = parse_config("# run\nprotocol = scqkd\nrounds=1000 # short\n\nsample-fraction=0.5\n").unwrap();
        assert_eq!(cfg.protocol, Some(ProtocolId::Scqkd));
        assert_eq!(cfg.rounds, Some(1000));
        assert_eq!(cfg.sample_fraction, Some(0.5));
        assert_eq!(parse_config("").unwrap(), ConfigValues::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config("rounds=abc").is_err());
        assert!(parse_config("colour=blue").is_err());
        assert!(parse_config("rounds 10").is_err());
    }
}
