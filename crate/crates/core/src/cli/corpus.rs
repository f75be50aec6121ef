//! The field and group files a suite run works over.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{FieldSpec, LocalField};
use crate::groups::{load_group, FiniteGroup, GroupSpec};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus directory {0} is missing or lacks fields/ and groups/")]
    MissingCorpus(PathBuf),
    #[error("{0}: {1}")]
    Unreadable(String, String),
}

const BUILTIN_FIELDS: &[(&str, &str)] = &[
    ("q2", include_str!("../../corpus/fields/q2.json")),
    ("q2_ramified_quadratic", include_str!("../../corpus/fields/q2_ramified_quadratic.json")),
    ("q2_unramified_quadratic", include_str!("../../corpus/fields/q2_unramified_quadratic.json")),
    ("q3", include_str!("../../corpus/fields/q3.json")),
    ("q3_unramified_quadratic", include_str!("../../corpus/fields/q3_unramified_quadratic.json")),
];

const BUILTIN_GROUPS: &[(&str, &str)] = &[
    ("a4", include_str!("../../corpus/groups/a4.json")),
    ("d4", include_str!("../../corpus/groups/d4.json")),
    ("q8", include_str!("../../corpus/groups/q8.json")),
    ("s3", include_str!("../../corpus/groups/s3.json")),
    ("s4", include_str!("../../corpus/groups/s4.json")),
    ("z4xz2", include_str!("../../corpus/groups/z4xz2.json")),
    ("z6", include_str!("../../corpus/groups/z6.json")),
];

/// Loaded corpus. Files that parse but fail validation are kept in
/// `rejected` so the suite can report them.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub source: String,
    pub fields: Vec<(String, Arc<LocalField>)>,
    pub groups: Vec<Arc<FiniteGroup>>,
    pub rejected: Vec<(String, String)>,
}

impl Corpus {
    /// The corpus shipped with the crate.
    pub fn builtin() -> Self {
        let fields = BUILTIN_FIELDS.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
        let groups = BUILTIN_GROUPS.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
        Self::from_texts("builtin".into(), fields, groups).expect("builtin corpus parses")
    }

    /// Reads `dir/fields/*.json` and `dir/groups/*.json` in file-name order.
    pub fn load(dir: &Path) -> Result<Self, CorpusError> {
        let read_dir = |sub: &str| -> Result<Vec<(String, String)>, CorpusError> {
            let d = dir.join(sub);
            if !d.is_dir() {
                return Err(CorpusError::MissingCorpus(dir.to_path_buf()));
            }
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&d)
                .map_err(|e| CorpusError::Unreadable(d.display().to_string(), e.to_string()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            paths
                .into_iter()
                .map(|p| {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| CorpusError::Unreadable(p.display().to_string(), e.to_string()))?;
                    let stem = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
                    Ok((stem, text))
                })
                .collect()
        };
        let fields = read_dir("fields")?;
        let groups = read_dir("groups")?;
        Self::from_texts(dir.display().to_string(), fields, groups)
    }

    fn from_texts(
        source: String,
        fields: Vec<(String, String)>,
        groups: Vec<(String, String)>,
    ) -> Result<Self, CorpusError> {
        let mut corpus = Corpus {
            source,
            fields: Vec::new(),
            groups: Vec::new(),
            rejected: Vec::new(),
        };
        for (name, text) in fields {
            let spec: FieldSpec =
                serde_json::from_str(&text).map_err(|e| CorpusError::Unreadable(name.clone(), e.to_string()))?;
            match spec.build() {
                Ok(k) => corpus.fields.push((name, k)),
                Err(e) => corpus.rejected.push((name, e.to_string())),
            }
        }
        for (name, text) in groups {
            let spec: GroupSpec =
                serde_json::from_str(&text).map_err(|e| CorpusError::Unreadable(name.clone(), e.to_string()))?;
            match load_group(&spec) {
                Ok(g) => corpus.groups.push(Arc::new(g)),
                Err(e) => corpus.rejected.push((name, e.to_string())),
            }
        }
        Ok(corpus)
    }

    pub fn unramified_fields(&self) -> impl Iterator<Item = &(String, Arc<LocalField>)> {
        self.fields.iter().filter(|(_, k)| k.is_unramified())
    }

    pub fn field(&self, name: &str) -> Option<&Arc<LocalField>> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, k)| k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_matches_the_standard_groups() {
        let c = Corpus::builtin();
        assert!(c.rejected.is_empty());
        assert_eq!(c.fields.len(), 5);
        let mut orders: Vec<(String, usize)> = c.groups.iter().map(|g| (g.name().to_string(), g.order())).collect();
        orders.sort();
        let mut expected: Vec<(String, usize)> = crate::groups::standard_corpus()
            .iter()
            .map(|g| (g.name().to_string(), g.order()))
            .collect();
        expected.sort();
        assert_eq!(orders, expected);
    }

    #[test]
    fn on_disk_copy_loads() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let c = Corpus::load(&dir).unwrap();
        assert_eq!(c.groups.len(), 7);
        assert!(matches!(
            Corpus::load(Path::new("/nonexistent/corpus")),
            Err(CorpusError::MissingCorpus(_))
        ));
    }
}
