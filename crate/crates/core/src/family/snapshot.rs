//! The checked-in result of the wiring search.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::search::{Rejection, SearchOutcome};
use super::{FamilyError, GadgetWiring, PortMap};

pub const SNAPSHOT_JSON: &str = include_str!("../../data/wiring.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub wiring: GadgetWiring,
    /// Port maps whose families are isomorphic to this one.
    pub equivalent: Vec<PortMap>,
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Body {
    max_n_check: usize,
    entries: Vec<SnapshotEntry>,
    rejected: Vec<Rejection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringSnapshot {
    pub max_n_check: usize,
    pub entries: Vec<SnapshotEntry>,
    pub rejected: Vec<Rejection>,
    /// SHA-256 of the compact JSON of the other fields.
    pub checksum: String,
}

fn digest(body: &Body) -> String {
    let bytes = serde_json::to_vec(body).expect("snapshot body serialises");
    hex::encode(Sha256::digest(&bytes))
}

impl WiringSnapshot {
    /// Survivors sorted by port map; the first is canonical.
    pub fn from_outcome(outcome: &SearchOutcome) -> WiringSnapshot {
        let entries: Vec<SnapshotEntry> = outcome
            .survivors
            .iter()
            .enumerate()
            .map(|(k, s)| SnapshotEntry {
                wiring: s.wiring,
                equivalent: s.equivalent.clone(),
                canonical: k == 0,
            })
            .collect();
        let body = Body {
            max_n_check: outcome.max_n_check,
            entries,
            rejected: outcome.rejected.clone(),
        };
        let checksum = digest(&body);
        WiringSnapshot {
            max_n_check: body.max_n_check,
            entries: body.entries,
            rejected: body.rejected,
            checksum,
        }
    }

    pub fn parse(text: &str) -> Result<WiringSnapshot, FamilyError> {
        let s: WiringSnapshot = serde_json::from_str(text).map_err(|e| FamilyError::Snapshot(e.to_string()))?;
        let body = Body {
            max_n_check: s.max_n_check,
            entries: s.entries.clone(),
            rejected: s.rejected.clone(),
        };
        if digest(&body) != s.checksum {
            return Err(FamilyError::Snapshot("checksum mismatch".into()));
        }
        match s.entries.iter().filter(|e| e.canonical).count() {
            1 => {}
            k => return Err(FamilyError::Snapshot(format!("{k} entries marked canonical"))),
        }
        if s.entries.iter().any(|e| e.wiring.anchor.is_none()) {
            return Err(FamilyError::Snapshot("entry without anchor".into()));
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<WiringSnapshot, FamilyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FamilyError::Snapshot(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("snapshot serialises");
        s.push('\n');
        s
    }

    /// The snapshot compiled into the crate.
    pub fn embedded() -> &'static WiringSnapshot {
        static SNAP: OnceLock<WiringSnapshot> = OnceLock::new();
        SNAP.get_or_init(|| WiringSnapshot::parse(SNAPSHOT_JSON).expect("embedded wiring snapshot is valid"))
    }

    pub fn canonical(&self) -> &SnapshotEntry {
        self.entries
            .iter()
            .find(|e| e.canonical)
            .expect("validated snapshots have a canonical entry")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_parses() {
        let s = WiringSnapshot::embedded();
        assert!(s.canonical().wiring.anchor.is_some());
    }

    #[test]
    fn tampering_is_detected() {
        let text = SNAPSHOT_JSON.replacen("\"canonical\": true", "\"canonical\": false", 1);
        assert!(WiringSnapshot::parse(&text).is_err());
    }
}
