use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::diagram::{parse_diagram, IntersectionDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub value: toml::Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureEntry {
    pub name: String,
    pub file: PathBuf,
    pub genus: u32,
    /// Crossing counts keyed by the two curve labels, e.g. `AB`.
    pub intersections: BTreeMap<String, usize>,
    pub provenance: Provenance,
    #[serde(default)]
    pub expected: BTreeMap<String, Expected>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureManifest {
    pub fixture: Vec<FixtureEntry>,
}

/// Expected-value keys a suite knows how to check.
pub const EXPECTED_KEYS: &[&str] = &[
    "bigons",
    "bicorns",
    "configuration",
    "filling",
    "path_steps",
    "path_steps_min",
    "slim_route",
    "slim_disjoint",
    "surgery_pair",
    "complexity",
    "pi0_route",
    "y_boundary",
];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub entry: FixtureEntry,
    pub diagram: IntersectionDiagram,
}

impl Fixture {
    pub fn name(&self) -> &str {
        &self.entry.name
    }

    pub fn expected(&self, key: &str) -> Option<&toml::Value> {
        self.entry.expected.get(key).map(|e| &e.value)
    }
}

impl FixtureManifest {
    pub fn from_toml(text: &str) -> Result<Self, VerifyError> {
        toml::from_str(text).map_err(|e| VerifyError::Manifest { locus: "manifest".into(), message: e.to_string() })
    }

    /// Parses every fixture and checks it against its declared genus and
    /// crossing counts. `dir` resolves relative file paths.
    pub fn validate(&self, dir: &Path) -> Result<Vec<Fixture>, VerifyError> {
        let mut out = Vec::new();
        for (k, entry) in self.fixture.iter().enumerate() {
            let err = |message: String| VerifyError::Manifest {
                locus: format!("fixture[{k}] `{}`", entry.name),
                message,
            };
            if out.iter().any(|f: &Fixture| f.entry.name == entry.name) {
                return Err(err("duplicate name".into()));
            }
            let path = dir.join(&entry.file);
            let text = fs::read_to_string(&path).map_err(|e| err(format!("{}: {e}", path.display())))?;
            let d = parse_diagram(&text).map_err(|e| err(format!("{}: {e}", path.display())))?;
            if d.genus() != entry.genus {
                return Err(err(format!("declared genus {} but the diagram has genus {}", entry.genus, d.genus())));
            }
            let n = d.curve_labels().len();
            let mut declared = entry.intersections.clone();
            for a in 0..n {
                for b in a + 1..n {
                    let key = format!("{}{}", d.label(a), d.label(b));
                    let got = d.crossings_between(a, b).len();
                    match declared.remove(&key) {
                        Some(want) if want == got => {}
                        Some(want) => return Err(err(format!("{key}: declared {want} crossings, found {got}"))),
                        None => return Err(err(format!("{key}: crossing count not declared"))),
                    }
                }
            }
            if let Some(key) = declared.keys().next() {
                return Err(err(format!("{key}: not a pair of curves in the diagram")));
            }
            if let Some(key) = entry.expected.keys().find(|k| !EXPECTED_KEYS.contains(&k.as_str())) {
                return Err(err(format!("unknown expected value `{key}`")));
            }
            out.push(Fixture { entry: entry.clone(), diagram: d });
        }
        Ok(out)
    }
}

pub fn load_fixtures(dir: &Path) -> Result<Vec<Fixture>, VerifyError> {
    let path = dir.join("manifest.toml");
    let text = fs::read_to_string(&path)
        .map_err(|e| VerifyError::Manifest { locus: path.display().to_string(), message: e.to_string() })?;
    FixtureManifest::from_toml(&text)?.validate(dir)
}
