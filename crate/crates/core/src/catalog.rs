//! Classification data for irreducible noncompact symmetric pairs and the
//! κ tables built from it.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use num_traits::Signed;
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, Rational};
use crate::rootsys::{build_root_system, Family, LengthClass, MultAssignment, RootSystem, RootSystemError};

const DEFAULT_CATALOG_TEXT: &str = include_str!("../data/default_catalog.txt");

pub const FORMAT_VERSION: u32 = 1;

const KEYS: [&str; 7] = ["id", "label", "cartan", "params", "family", "mult", "kappa"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("entry `{id}`: invalid multiplicity {value} for class `{class}`")]
    InvalidMultiplicity { id: String, class: String, value: i64 },
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
    #[error("entry `{id}`: parameters out of range ({reason})")]
    ParamsOutOfRange { id: String, reason: String },
    #[error("entry `{id}`: root data {found} does not match {cartan} (expected {expected})")]
    FamilyMismatch { id: String, cartan: String, found: String, expected: String },
    #[error("entry `{id}`: {source}")]
    RootSystem { id: String, source: RootSystemError },
    #[error("every factor is compact; kappa is undefined")]
    AllCompact,
    #[error("{entries} entries but {flags} compactness flags")]
    LengthMismatch { entries: usize, flags: usize },
    #[error("cannot read catalog `{path}`: {message}")]
    Io { path: String, message: String },
}

/// One row of the classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSpaceEntry {
    pub id: String,
    pub group_name: String,
    pub cartan_label: String,
    pub params: BTreeMap<String, i64>,
    pub family: Family,
    pub rank: usize,
    pub multiplicities: MultAssignment,
    pub expected_kappa: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFile {
    pub format_version: u32,
    pub entries: Vec<SymmetricSpaceEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KappaRow {
    pub id: String,
    pub group_name: String,
    pub rank: usize,
    pub computed_kappa: Option<Rational>,
    pub expected_kappa: Rational,
    pub matches: bool,
    pub error: Option<String>,
}

pub const CARTAN_LABELS: &[&str] = &[
    "complex-A", "complex-B", "complex-C", "complex-D", "complex-G2", "complex-F4", "complex-E6",
    "complex-E7", "complex-E8", "AI", "AII", "AIII", "BDI", "CI", "CII", "DIII-even", "DIII-odd",
    "EI", "EII", "EIII", "EIV", "EV", "EVI", "EVII", "EVIII", "EIX", "FI", "FII", "G",
];

pub fn default_catalog() -> CatalogFile {
    load_catalog(DEFAULT_CATALOG_TEXT).expect("shipped catalog is well formed")
}

pub fn default_catalog_text() -> &'static str {
    DEFAULT_CATALOG_TEXT
}

/// Loads from a path; the name `default` selects the built-in catalog.
pub fn load_catalog_path(path: &str) -> Result<CatalogFile, CatalogError> {
    if path == "default" {
        return Ok(default_catalog());
    }
    let text = std::fs::read_to_string(Path::new(path))
        .map_err(|e| CatalogError::Io { path: path.to_string(), message: e.to_string() })?;
    load_catalog(&text)
}

#[derive(Default)]
struct Block {
    start: usize,
    fields: BTreeMap<String, (usize, String)>,
}

pub fn load_catalog(text: &str) -> Result<CatalogFile, CatalogError> {
    let mut version: Option<u32> = None;
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "[entry]" {
            blocks.push(Block { start: line_no, ..Default::default() });
            continue;
        }
        let perr = |message: String| CatalogError::Parse { line: line_no, message };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| perr(format!("expected `key = value`, found `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        match blocks.last_mut() {
            None => {
                if key != "format_version" {
                    return Err(perr(format!("unexpected key `{key}` before first [entry]")));
                }
                let v: u32 = value.parse().map_err(|_| perr(format!("bad format_version `{value}`")))?;
                if v != FORMAT_VERSION {
                    return Err(CatalogError::UnsupportedVersion(v));
                }
                version = Some(v);
            }
            Some(block) => {
                if !KEYS.contains(&key) {
                    return Err(perr(format!("unknown key `{key}`")));
                }
                if block.fields.insert(key.to_string(), (line_no, value.to_string())).is_some() {
                    return Err(perr(format!("repeated key `{key}`")));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(blocks.len());
    for block in blocks {
        let entry = parse_entry(&block)?;
        if !seen.insert(entry.id.clone()) {
            return Err(CatalogError::DuplicateId(entry.id));
        }
        entries.push(entry);
    }
    Ok(CatalogFile { format_version: version.unwrap_or(FORMAT_VERSION), entries })
}

fn parse_entry(block: &Block) -> Result<SymmetricSpaceEntry, CatalogError> {
    let get = |key: &str| -> Result<(usize, &str), CatalogError> {
        block.fields.get(key).map(|(l, v)| (*l, v.as_str())).ok_or_else(|| CatalogError::Parse {
            line: block.start,
            message: format!("entry is missing `{key}`"),
        })
    };
    let (_, id) = get("id")?;
    if id.is_empty() {
        return Err(CatalogError::Parse { line: block.start, message: "empty id".into() });
    }
    let (_, label) = get("label")?;
    let (cartan_line, cartan) = get("cartan")?;
    if !CARTAN_LABELS.contains(&cartan) {
        return Err(CatalogError::Parse { line: cartan_line, message: format!("unknown cartan label `{cartan}`") });
    }

    let (params_line, params_text) = get("params")?;
    let mut params = BTreeMap::new();
    for item in params_text.split_whitespace() {
        let bad = || CatalogError::Parse { line: params_line, message: format!("bad parameter `{item}`") };
        let (k, v) = item.split_once(':').ok_or_else(bad)?;
        let v: i64 = v.parse().map_err(|_| bad())?;
        if params.insert(k.to_string(), v).is_some() {
            return Err(bad());
        }
    }

    let (family_line, family_text) = get("family")?;
    let ferr = |message: String| CatalogError::Parse { line: family_line, message };
    let mut parts = family_text.split_whitespace();
    let family: Family = parts
        .next()
        .ok_or_else(|| ferr("missing family".into()))?
        .parse()
        .map_err(|e: RootSystemError| ferr(e.to_string()))?;
    let rank = parts
        .next()
        .and_then(|r| r.strip_prefix("rank:"))
        .and_then(|r| r.parse::<usize>().ok())
        .ok_or_else(|| ferr(format!("expected `<family> rank:<n>`, found `{family_text}`")))?;
    if parts.next().is_some() {
        return Err(ferr(format!("trailing text in `{family_text}`")));
    }

    let (mult_line, mult_text) = get("mult")?;
    let mut multiplicities = MultAssignment::new();
    for item in mult_text.split_whitespace() {
        let bad = |m: String| CatalogError::Parse { line: mult_line, message: m };
        let (k, v) = item.split_once(':').ok_or_else(|| bad(format!("bad multiplicity `{item}`")))?;
        let class: LengthClass = k.parse().map_err(|e: RootSystemError| bad(e.to_string()))?;
        let value: i64 = v.parse().map_err(|_| bad(format!("bad multiplicity `{item}`")))?;
        if value <= 0 || value > u32::MAX as i64 {
            return Err(CatalogError::InvalidMultiplicity { id: id.to_string(), class: k.to_string(), value });
        }
        if multiplicities.insert(class, value as u32).is_some() {
            return Err(bad(format!("repeated class `{k}`")));
        }
    }

    let (kappa_line, kappa_text) = get("kappa")?;
    let expected_kappa = parse_rational(kappa_text)
        .map_err(|e| CatalogError::Parse { line: kappa_line, message: e.to_string() })?;
    let twice = expected_kappa * Rational::from_integer(2);
    if !expected_kappa.is_positive() || !twice.is_integer() {
        return Err(CatalogError::Parse {
            line: kappa_line,
            message: format!("kappa `{kappa_text}` is not a positive half-integer"),
        });
    }

    Ok(SymmetricSpaceEntry {
        id: id.to_string(),
        group_name: label.to_string(),
        cartan_label: cartan.to_string(),
        params,
        family,
        rank,
        multiplicities,
        expected_kappa,
    })
}

/// Serialises in the block format accepted by [`load_catalog`].
pub fn serialize_catalog(catalog: &CatalogFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version = {}", catalog.format_version);
    for e in &catalog.entries {
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let mult: Vec<String> = e.multiplicities.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(out, "\n[entry]");
        let _ = writeln!(out, "id = {}", e.id);
        let _ = writeln!(out, "label = {}", e.group_name);
        let _ = writeln!(out, "cartan = {}", e.cartan_label);
        let _ = writeln!(out, "params = {}", params.join(" "));
        let _ = writeln!(out, "family = {} rank:{}", e.family, e.rank);
        let _ = writeln!(out, "mult = {}", mult.join(" "));
        let _ = writeln!(out, "kappa = {}", format_rational(&e.expected_kappa));
    }
    out
}

impl SymmetricSpaceEntry {
    fn param(&self, key: &str) -> Result<i64, CatalogError> {
        self.params.get(key).copied().ok_or_else(|| CatalogError::ParamsOutOfRange {
            id: self.id.clone(),
            reason: format!("missing parameter `{key}`"),
        })
    }

    fn out_of_range(&self, reason: &str) -> CatalogError {
        CatalogError::ParamsOutOfRange { id: self.id.clone(), reason: reason.to_string() }
    }

    /// Root family and rank dictated by the Cartan label and parameters.
    pub fn expected_root_data(&self) -> Result<(Family, usize), CatalogError> {
        let n = || self.param("n");
        let pq = || -> Result<(i64, i64), CatalogError> { Ok((self.param("p")?, self.param("q")?)) };
        let at_least = |v: i64, lo: i64| -> Result<usize, CatalogError> {
            if v >= lo {
                Ok(v as usize)
            } else {
                Err(self.out_of_range(&format!("need parameter >= {lo}, got {v}")))
            }
        };
        let ordered = |p: i64, q: i64, min_sum: i64| -> Result<(), CatalogError> {
            if p < 1 || p > q || p + q < min_sum {
                return Err(self.out_of_range(&format!("need 1 <= p <= q and p+q >= {min_sum}, got p={p} q={q}")));
            }
            Ok(())
        };
        use Family::*;
        Ok(match self.cartan_label.as_str() {
            "complex-A" => (A, at_least(n()?, 2)? - 1),
            "complex-B" => (B, at_least(n()?, 1)?),
            "complex-C" => (C, at_least(n()?, 1)?),
            "complex-D" => (D, at_least(n()?, 2)?),
            "complex-G2" | "G" => (G2, 2),
            "complex-F4" | "FI" | "EII" | "EVI" | "EIX" => (F4, 4),
            "complex-E6" | "EI" => (E6, 6),
            "complex-E7" | "EV" => (E7, 7),
            "complex-E8" | "EVIII" => (E8, 8),
            "AI" | "AII" => (A, at_least(n()?, 2)? - 1),
            "AIII" => {
                let (p, q) = pq()?;
                ordered(p, q, 3)?;
                (if p < q { BC } else { C }, p as usize)
            }
            "BDI" => {
                let (p, q) = pq()?;
                ordered(p, q, 3)?;
                (if p < q { B } else { D }, p as usize)
            }
            "CI" => (C, at_least(n()?, 1)?),
            "CII" => {
                let (p, q) = pq()?;
                ordered(p, q, 2)?;
                (if p < q { BC } else { C }, p as usize)
            }
            "DIII-even" => (C, at_least(n()?, 1)?),
            "DIII-odd" => (BC, at_least(n()?, 1)?),
            "EIII" => (BC, 2),
            "EIV" => (A, 2),
            "EVII" => (C, 3),
            "FII" => (BC, 1),
            other => return Err(self.out_of_range(&format!("unknown cartan label `{other}`"))),
        })
    }

    /// Restricted root system realising this row.
    pub fn instantiate(&self) -> Result<RootSystem, CatalogError> {
        let (family, rank) = self.expected_root_data()?;
        if (family, rank) != (self.family, self.rank) {
            return Err(CatalogError::FamilyMismatch {
                id: self.id.clone(),
                cartan: self.cartan_label.clone(),
                found: format!("{} rank {}", self.family, self.rank),
                expected: format!("{family} rank {rank}"),
            });
        }
        if self.cartan_label.starts_with("complex-") && self.multiplicities.values().any(|&m| m != 2) {
            return Err(self.out_of_range("complex groups carry multiplicity 2 on every root"));
        }
        build_root_system(family, rank, &self.multiplicities)
            .map_err(|source| CatalogError::RootSystem { id: self.id.clone(), source })
    }
}

pub fn instantiate(entry: &SymmetricSpaceEntry) -> Result<RootSystem, CatalogError> {
    entry.instantiate()
}

/// κ for every row, in catalog order. Failing rows are flagged, not fatal.
pub fn kappa_table(catalog: &CatalogFile) -> Vec<KappaRow> {
    catalog
        .entries
        .iter()
        .map(|e| match e.instantiate() {
            Ok(sys) => {
                let k = sys.kappa();
                KappaRow {
                    id: e.id.clone(),
                    group_name: e.group_name.clone(),
                    rank: e.rank,
                    computed_kappa: Some(k),
                    expected_kappa: e.expected_kappa,
                    matches: k == e.expected_kappa,
                    error: None,
                }
            }
            Err(err) => KappaRow {
                id: e.id.clone(),
                group_name: e.group_name.clone(),
                rank: e.rank,
                computed_kappa: None,
                expected_kappa: e.expected_kappa,
                matches: false,
                error: Some(err.to_string()),
            },
        })
        .collect()
}

/// κ of a product: the minimum over noncompact factors.
pub fn product_kappa(entries: &[SymmetricSpaceEntry], compact: &[bool]) -> Result<Rational, CatalogError> {
    if entries.len() != compact.len() {
        return Err(CatalogError::LengthMismatch { entries: entries.len(), flags: compact.len() });
    }
    let mut best: Option<Rational> = None;
    for (e, &is_compact) in entries.iter().zip(compact) {
        if is_compact {
            continue;
        }
        let k = e.instantiate()?.kappa();
        best = Some(best.map_or(k, |b| b.min(k)));
    }
    best.ok_or(CatalogError::AllCompact)
}

impl CatalogFile {
    pub fn get(&self, id: &str) -> Option<&SymmetricSpaceEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}
