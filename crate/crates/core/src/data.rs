//! Diagrams embedded in the library, addressable by bare name.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_diagram, Diagram, ParseError};
use crate::surgery::{FillingSpec, ScanEntry};

const FILES: &[(&str, &str)] = &[
    ("trivial", include_str!("../data/trivial.theta")),
    ("kinoshita", include_str!("../data/kinoshita.theta")),
    ("trefoil", include_str!("../data/trefoil.knot")),
    ("fig8", include_str!("../data/fig8.knot")),
    ("kappa", include_str!("../data/kappa.knot")),
    ("spineG", include_str!("../data/spineG.theta")),
    ("tunnel_trefoil", include_str!("../data/tunnel_trefoil.theta")),
];

const FILLING: &str = include_str!("../data/kinoshita_filling.json");

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{name}: {source}")]
    Parse { name: String, source: ParseError },
    #[error("no file or shipped diagram named '{0}'")]
    Unknown(String),
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn shipped_source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// A shipped diagram by bare name (`kinoshita`, `kappa`, ...).
pub fn shipped(name: &str) -> Option<Diagram> {
    shipped_source(name).map(|s| parse_diagram(s).expect("shipped diagram parses"))
}

/// Reads `arg` as a file if it exists, otherwise as a shipped name; a
/// shipped name may carry its `.knot`/`.theta` extension.
pub fn load(arg: &str) -> Result<Diagram, LoadError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: arg.to_string(), source })?;
        return parse_diagram(&text).map_err(|source| LoadError::Parse { name: arg.to_string(), source });
    }
    let bare = arg.strip_suffix(".knot").or_else(|| arg.strip_suffix(".theta")).unwrap_or(arg);
    shipped(bare).ok_or_else(|| LoadError::Unknown(arg.to_string()))
}

/// The recorded filling scan for the shipped Kinoshita diagram.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FillingRecord {
    pub diagram: String,
    pub edge: usize,
    pub reference: String,
    pub range: (i32, i32),
    pub selected: FillingSpec,
    pub scan: Vec<ScanEntry>,
}

pub fn shipped_filling() -> FillingRecord {
    serde_json::from_str(FILLING).expect("shipped filling record parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_shipped_parse_and_are_planar() {
        for n in names() {
            let d = shipped(n).unwrap();
            assert!(d.validate().is_valid(), "{n}");
            assert!(d.is_planar(), "{n}");
            assert_eq!(d.name.as_deref(), Some(n));
        }
    }

    #[test]
    fn load_by_name_and_extension() {
        assert_eq!(load("trefoil.knot").unwrap(), load("trefoil").unwrap());
        assert!(matches!(load("nonesuch"), Err(LoadError::Unknown(_))));
    }
}
