//! JSON instance files, trace CSVs, cover and manifest JSON.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use contractlab_core::discretization::DiscretizedContractSet;
use contractlab_core::learners::RegretTrace;
use contractlab_core::{ActionSpec, AgentType, Instance, Violation};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: malformed JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: invalid instance:{}", list(.violations))]
    Invalid { path: PathBuf, violations: Vec<Violation> },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|x| format!("\n  {x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionFile {
    pub prob: Vec<f64>,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeFile {
    pub weight: f64,
    pub actions: Vec<ActionFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub values: Vec<f64>,
    pub types: Vec<TypeFile>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        Self {
            name: inst.name().to_owned(),
            values: inst.values().to_vec(),
            types: inst
                .types()
                .iter()
                .map(|t| TypeFile {
                    weight: t.weight,
                    actions: t.actions.iter().map(|a| ActionFile { prob: a.prob.clone(), cost: a.cost }).collect(),
                })
                .collect(),
        }
    }
}

impl InstanceFile {
    /// Builds the instance and returns the full violation list on failure.
    pub fn into_instance(self) -> Result<Instance, Vec<Violation>> {
        let types = self
            .types
            .into_iter()
            .map(|t| AgentType::new(t.weight, t.actions.into_iter().map(|a| ActionSpec::new(a.prob, a.cost)).collect()))
            .collect();
        let inst = Instance::from_parts(self.name, self.values, types);
        let violations = inst.validate();
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(violations)
        }
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_owned(), source })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| IoError::Json { path: path.to_owned(), source })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| IoError::Io { path: path.to_owned(), source })
}

pub fn parse_instance(text: &str, path: &Path) -> Result<Instance, IoError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|source| IoError::Json { path: path.to_owned(), source })?;
    file.into_instance().map_err(|violations| IoError::Invalid { path: path.to_owned(), violations })
}

pub fn read_instance(path: &Path) -> Result<Instance, IoError> {
    parse_instance(&read(path)?, path)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), IoError> {
    write_json(path, &InstanceFile::from(inst))
}

/// Semicolon-joined coordinates.
pub fn join_contract(f: &[f64]) -> String {
    f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

pub const TRACE_HEADER: [&str; 7] = ["t", "arm", "contract", "outcome", "reward", "regret_step", "regret_cum"];

pub fn write_trace<W: Write>(w: W, trace: &RegretTrace) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(TRACE_HEADER)?;
    let contracts: Vec<String> = trace.arms.iter().map(|f| join_contract(f)).collect();
    for r in &trace.rows {
        out.write_record([
            r.t.to_string(),
            r.arm.to_string(),
            contracts[r.arm].clone(),
            r.outcome.to_string(),
            r.reward.to_string(),
            r.regret_step.to_string(),
            r.regret_cum.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_trace_file(path: &Path, trace: &RegretTrace) -> Result<(), IoError> {
    let file = fs::File::create(path).map_err(|source| IoError::Io { path: path.to_owned(), source })?;
    write_trace(std::io::BufWriter::new(file), trace).map_err(|source| IoError::Csv { path: path.to_owned(), source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverFile {
    pub eps: f64,
    pub directions: Vec<Vec<f64>>,
    pub arms: Vec<Vec<f64>>,
}

impl From<&DiscretizedContractSet> for CoverFile {
    fn from(s: &DiscretizedContractSet) -> Self {
        Self { eps: s.eps, directions: s.code.directions.clone(), arms: s.arms.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub grid_utility: f64,
    pub grid_contract: Vec<f64>,
    pub resolution: f64,
    /// `u` at the separable closed-form optimizer.
    pub closed_form_utility: f64,
    /// Grid and closed form differ by more than a grid cell.
    pub closed_form_disagrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub label: String,
    pub file: String,
    pub index: Vec<usize>,
    pub sentinel: bool,
    /// Additive closed form, exact for one free coordinate.
    pub claimed_optimum: f64,
    pub claimed_contract: Vec<f64>,
    /// Optimum of the separable analysis.
    pub exact_optimum: f64,
    pub exact_contract: Vec<f64>,
    pub region_lower: Vec<f64>,
    pub region_upper: Vec<Option<f64>>,
    pub oracle: OracleSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyManifest {
    pub family: String,
    pub m_free: usize,
    pub eps: f64,
    pub levels: usize,
    pub sentinel_level: usize,
    pub base: String,
    pub perturbed: Vec<ManifestEntry>,
}
