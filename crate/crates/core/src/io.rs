//! JSON file format for explicit symmetric sets:
//!
//! ```json
//! {"ground_set": ["a", "b"], "k": 2, "tuples": [["a", "b"]], "symmetrize": true}
//! ```
//!
//! With `symmetrize` false (the default) the tuples must already be closed
//! under coordinate permutation. The canonical dump lists every tuple in
//! lexicographic index order with `symmetrize: false`, so loading it back
//! reproduces the same set.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve::ExplicitSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub ground_set: Vec<String>,
    pub k: usize,
    pub tuples: Vec<Vec<String>>,
    #[serde(default)]
    pub symmetrize: bool,
}

impl SetFile {
    pub fn into_set(self) -> Result<ExplicitSet> {
        ExplicitSet::from_labels(self.ground_set, self.k, &self.tuples, self.symmetrize)
    }

    pub fn canonical(x: &ExplicitSet) -> Self {
        Self {
            ground_set: x.ground_set().to_vec(),
            k: x.k(),
            tuples: x.tuples().map(|t| x.render(t)).collect(),
            symmetrize: false,
        }
    }
}

pub fn parse_set(json: &str) -> Result<ExplicitSet> {
    let file: SetFile = serde_json::from_str(json)
        .map_err(|e| Error::InvalidInput(format!("malformed set file: {e}")))?;
    file.into_set()
}

pub fn load_set(path: &Path) -> Result<ExplicitSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_set(&text)
}

pub fn dump_canonical(x: &ExplicitSet) -> String {
    serde_json::to_string_pretty(&SetFile::canonical(x)).expect("set file always serializes")
}

pub fn save_canonical(x: &ExplicitSet, path: &Path) -> Result<()> {
    std::fs::write(path, dump_canonical(x) + "\n")
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}
