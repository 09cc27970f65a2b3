//! JSON dataset files and the registry that resolves datasets by name.
//!
//! Rationals are written as JSON integers or `"p/q"` strings. Unknown fields
//! are rejected and `"schema-version": 1` is required.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::variety::{
    ContractionInfo, ContractionKind, ContractionTarget, CurveClass, DivisorClass, NeRay, ValidationError, VarietyData,
    VarietyParts,
};
use crate::{QMat, QVec, Rat};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("syntax error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("invalid data at {0}")]
    Validation(#[from] ValidationError),
    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),
}

impl DatasetError {
    fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        DatasetError::Schema { location: location.into(), message: message.into() }
    }
}

/// A rational as it appears in a dataset file.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FileRat(Rat);

impl Serialize for FileRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.is_integer().then(|| self.0.numer().to_i64()).flatten() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for FileRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = FileRat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<FileRat, E> {
                Ok(FileRat(Rat::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<FileRat, E> {
                Ok(FileRat(Rat::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<FileRat, E> {
                Rat::from_str(v.trim()).map(FileRat).map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        deserializer.deserialize_any(RatVisitor)
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum FileKind {
    Divisorial,
    Fiber,
    Small,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct FileContraction {
    kind: FileKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exceptional_divisor: Option<Vec<FileRat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pushforward: Option<Vec<Vec<FileRat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pullback: Option<Vec<Vec<FileRat>>>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct FileRay {
    coords: Vec<FileRat>,
    contraction: FileContraction,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct DatasetFile {
    #[serde(rename = "schema-version")]
    schema_version: u32,
    name: String,
    rho: usize,
    divisor_basis: Vec<String>,
    curve_basis: Vec<String>,
    pairing: Vec<Vec<FileRat>>,
    canonical_class: Vec<FileRat>,
    ne_rays: Vec<FileRay>,
    eff_generators: Vec<Vec<FileRat>>,
}

fn to_vec(v: Vec<FileRat>) -> QVec {
    v.into_iter().map(|x| x.0).collect()
}

fn from_vec(v: &[Rat]) -> Vec<FileRat> {
    v.iter().cloned().map(FileRat).collect()
}

fn to_matrix(location: &str, rows: Vec<Vec<FileRat>>) -> Result<QMat, DatasetError> {
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(DatasetError::schema(format!("{location}[{i}]"), format!("ragged matrix: expected {cols} entries")));
    }
    Ok(Matrix::from_rows(cols, rows.into_iter().map(to_vec)))
}

fn from_matrix(m: &QMat) -> Vec<Vec<FileRat>> {
    (0..m.rows()).map(|i| from_vec(m.row(i))).collect()
}

impl DatasetFile {
    fn into_variety(self) -> Result<VarietyData, DatasetError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DatasetError::schema(
                "schema-version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        let name = self.name;
        let mut ne_rays = Vec::with_capacity(self.ne_rays.len());
        for (i, ray) in self.ne_rays.into_iter().enumerate() {
            let location = format!("ne_rays[{i}].contraction");
            let c = ray.contraction;
            let kind = match c.kind {
                FileKind::Divisorial => ContractionKind::Divisorial,
                FileKind::Fiber => ContractionKind::Fiber,
                FileKind::Small => ContractionKind::Small,
            };
            if kind == ContractionKind::Divisorial && c.exceptional_divisor.is_none() {
                return Err(DatasetError::schema(
                    format!("{location}.exceptional_divisor"),
                    "missing field `exceptional_divisor` for a divisorial ray",
                ));
            }
            let target = match (c.target, c.pushforward, c.pullback) {
                (None, None, None) => None,
                (Some(target), Some(push), Some(pull)) => Some(ContractionTarget {
                    name: target,
                    pushforward: to_matrix(&format!("{location}.pushforward"), push)?,
                    pullback: to_matrix(&format!("{location}.pullback"), pull)?,
                }),
                (Some(_), push, _) => {
                    let missing = if push.is_none() { "pushforward" } else { "pullback" };
                    return Err(DatasetError::schema(
                        format!("{location}.{missing}"),
                        format!("missing field `{missing}` for a contraction with a target"),
                    ));
                }
                (None, _, _) => {
                    return Err(DatasetError::schema(
                        format!("{location}.target"),
                        "contraction matrices given without a target",
                    ))
                }
            };
            ne_rays.push(NeRay {
                class: CurveClass::new(&name, to_vec(ray.coords)),
                contraction: ContractionInfo {
                    kind,
                    exceptional_divisor: c.exceptional_divisor.map(|e| DivisorClass::new(&name, to_vec(e))),
                    target,
                },
            });
        }
        let parts = VarietyParts {
            rho: self.rho,
            divisor_basis_labels: self.divisor_basis,
            curve_basis_labels: self.curve_basis,
            pairing: to_matrix("pairing", self.pairing)?,
            canonical_class: to_vec(self.canonical_class),
            ne_rays,
            eff_generators: self.eff_generators.into_iter().map(to_vec).collect(),
            name,
        };
        Ok(VarietyData::new(parts)?)
    }

    fn from_variety(v: &VarietyData) -> Self {
        let p = v.parts();
        DatasetFile {
            schema_version: SCHEMA_VERSION,
            name: p.name.clone(),
            rho: p.rho,
            divisor_basis: p.divisor_basis_labels.clone(),
            curve_basis: p.curve_basis_labels.clone(),
            pairing: from_matrix(&p.pairing),
            canonical_class: from_vec(&p.canonical_class),
            ne_rays: p
                .ne_rays
                .iter()
                .map(|r| FileRay {
                    coords: from_vec(&r.class.coords),
                    contraction: FileContraction {
                        kind: match r.contraction.kind {
                            ContractionKind::Divisorial => FileKind::Divisorial,
                            ContractionKind::Fiber => FileKind::Fiber,
                            ContractionKind::Small => FileKind::Small,
                        },
                        exceptional_divisor: r.contraction.exceptional_divisor.as_ref().map(|e| from_vec(&e.coords)),
                        target: r.contraction.target.as_ref().map(|t| t.name.clone()),
                        pushforward: r.contraction.target.as_ref().map(|t| from_matrix(&t.pushforward)),
                        pullback: r.contraction.target.as_ref().map(|t| from_matrix(&t.pullback)),
                    },
                })
                .collect(),
            eff_generators: p.eff_generators.iter().map(|d| from_vec(d)).collect(),
        }
    }
}

/// Parses and validates a dataset document.
pub fn parse_dataset(text: &str) -> Result<VarietyData, DatasetError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: DatasetFile = serde_path_to_error::deserialize(de).map_err(|err| {
        let location = match err.path().to_string() {
            p if p == "." => "document".to_string(),
            p => p,
        };
        let inner = err.into_inner();
        let message = inner.to_string();
        if inner.is_data() {
            DatasetError::Schema { location, message }
        } else {
            DatasetError::Parse { location, message }
        }
    })?;
    file.into_variety()
}

pub fn load_dataset(path: &Path) -> Result<VarietyData, DatasetError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DatasetError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_dataset(&text)
}

/// Pretty-printed dataset document; [`parse_dataset`] reads it back unchanged.
pub fn to_json(v: &VarietyData) -> String {
    let mut text = serde_json::to_string_pretty(&DatasetFile::from_variety(v)).expect("datasets serialize");
    text.push('\n');
    text
}

/// Fetches target datasets by name.
pub trait Resolver {
    fn resolve(&self, name: &str) -> Result<&VarietyData, DatasetError>;
}

const BUNDLED: [(&str, &str); 5] = [
    ("blowup-line-p3", include_str!("../data/blowup-line-p3.json")),
    ("blowup-point-p3", include_str!("../data/blowup-point-p3.json")),
    ("flag-w", include_str!("../data/flag-w.json")),
    ("p1xp1xp1", include_str!("../data/p1xp1xp1.json")),
    ("p3", include_str!("../data/p3.json")),
];

#[derive(Debug)]
enum Source {
    Bundled(&'static str),
    File(PathBuf),
}

#[derive(Debug)]
struct Entry {
    source: Source,
    loaded: OnceLock<Result<VarietyData, DatasetError>>,
}

/// Datasets keyed by name, parsed on first use.
///
/// Names come from file stems; a dataset whose `name` field disagrees with its
/// file name fails to load.
#[derive(Debug)]
pub struct Registry {
    entries: BTreeMap<String, Entry>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { entries: BTreeMap::new() }
    }

    pub fn bundled() -> Self {
        let mut r = Registry::empty();
        for (name, text) in BUNDLED {
            r.insert(name.to_string(), Source::Bundled(text));
        }
        r
    }

    fn insert(&mut self, name: String, source: Source) {
        self.entries.insert(name, Entry { source, loaded: OnceLock::new() });
    }

    /// Adds every `*.json` file of `dir`, shadowing datasets of the same name.
    pub fn add_directory(&mut self, dir: &Path) -> Result<(), DatasetError> {
        let io = |e: std::io::Error| DatasetError::Io { path: dir.display().to_string(), message: e.to_string() };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .map(|entry| entry.map(|e| e.path()))
            .collect::<Result<_, _>>()
            .map_err(io)?;
        paths.sort();
        for path in paths {
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                self.insert(stem.to_string(), Source::File(path.clone()));
            }
        }
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Result<&VarietyData, DatasetError> {
        let entry = self.entries.get(name).ok_or_else(|| DatasetError::UnknownDataset(name.to_string()))?;
        entry
            .loaded
            .get_or_init(|| {
                let v = match &entry.source {
                    Source::Bundled(text) => parse_dataset(text)?,
                    Source::File(path) => load_dataset(path)?,
                };
                if v.name() != name {
                    return Err(DatasetError::schema("name", format!("`{}` does not match file name `{name}`", v.name())));
                }
                Ok(v)
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

impl Resolver for Registry {
    fn resolve(&self, name: &str) -> Result<&VarietyData, DatasetError> {
        self.get(name)
    }
}
