use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::VerifyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub case: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    /// Conventions, strategy defaults and seeds in force for the run.
    pub convention: BTreeMap<String, Value>,
    pub cases: BTreeMap<String, u64>,
    pub maxima: BTreeMap<String, i64>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.into(),
            convention: BTreeMap::new(),
            cases: BTreeMap::new(),
            maxima: BTreeMap::new(),
            violations: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.convention.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.cases.entry(key.into()).or_default() += n;
    }

    pub fn max(&mut self, key: &str, v: i64) {
        let e = self.maxima.entry(key.into()).or_insert(v);
        *e = (*e).max(v);
    }

    pub fn violate(&mut self, case: impl Into<String>, kind: &str, detail: impl Into<String>) {
        self.violations.push(Violation { case: case.into(), kind: kind.into(), detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// One row per statistic and per violation.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "section", "key", "value"]).unwrap();
        let rows = self
            .cases
            .iter()
            .map(|(k, v)| ("cases", k.clone(), v.to_string()))
            .chain(self.maxima.iter().map(|(k, v)| ("maxima", k.clone(), v.to_string())))
            .chain(self.violations.iter().map(|v| ("violation", format!("{}/{}", v.case, v.kind), v.detail.clone())));
        for (section, key, value) in rows {
            w.write_record([self.suite.as_str(), section, &key, &value]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    /// Writes `<suite>.json` and `<suite>.csv` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<[PathBuf; 2], VerifyError> {
        fs::create_dir_all(dir)?;
        let json = dir.join(format!("{}.json", self.suite));
        let csv = dir.join(format!("{}.csv", self.suite));
        fs::write(&json, self.to_json())?;
        fs::write(&csv, self.to_csv())?;
        Ok([json, csv])
    }
}
