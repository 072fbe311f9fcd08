//! JSON input documents and their conversion into core data. All rationals
//! are strings "p/q" (or "p"); rotation numbers may carry a "-eps" / "+eps"
//! suffix for the infinitesimal offsets.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use cch_core::chain::{ModuliInput, ModuliRecord};
use cch_core::dynamics::{FreeHomotopyModel, OrbitSet};
use cch_core::models::{self, EllipsoidSpec, MorseData};
use cch_core::orbit::{
    CzModel, Offset, OrbitIterate, OrbitType, Rational, RotationNumber, SimpleOrbit,
};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

pub fn parse_rational(s: &str, path: &str) -> Result<Rational, CliError> {
    let err = |why: &str| CliError::Input(format!("{path}: {why} (got `{s}`)"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num.trim()).map_err(|_| err("malformed numerator"))?;
    let d = BigInt::from_str(den.trim()).map_err(|_| err("malformed denominator"))?;
    if d == BigInt::from(0) {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn parse_rotation(s: &str, path: &str) -> Result<RotationNumber, CliError> {
    let (body, offset) = if let Some(b) = s.strip_suffix("-eps") {
        (b, Offset::MinusEps)
    } else if let Some(b) = s.strip_suffix("+eps") {
        (b, Offset::PlusEps)
    } else {
        (s, Offset::Exact)
    };
    Ok(RotationNumber::new(parse_rational(body, path)?, offset))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_set: Option<OrbitSetDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<RecordDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
}

/// Optional per-document defaults; command-line flags take precedence.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    /// [lo, hi], inclusive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_cap: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_index: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_ends: Option<u32>,
    /// [levels, cover degree, branch, components per level].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<(u32, u32, u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSetDoc {
    pub orbits: Vec<OrbitDoc>,
    pub homotopy: HomotopyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_cap: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDoc {
    pub name: String,
    #[serde(rename = "type")]
    pub orbit_type: String,
    /// Required for the three rotation types; hyperbolic ones take a plain
    /// rational, elliptic ones need an eps suffix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<String>,
    /// Required for type "explicit".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<IndexTableDoc>,
    pub action: String,
    #[serde(default)]
    pub homotopy_seed: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexTableDoc {
    pub period: u32,
    pub residues: Vec<i64>,
    pub increment: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum HomotopyDoc {
    Trivial,
    Cyclic { order: u32 },
    Table { bound: u32, map: Vec<ClassEntryDoc> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntryDoc {
    pub orbit: String,
    pub k: u32,
    pub class: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelDoc {
    Ellipsoid { phi1: String, phi2: String, action1: String, action2: String },
    PrequantizedS3 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        critical_points: Option<Vec<CriticalPointDoc>>,
    },
    LensSpace {
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        critical_points: Option<Vec<CriticalPointDoc>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalPointDoc {
    pub name: String,
    pub index: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordDoc {
    pub x: EndDoc,
    pub y: EndDoc,
    pub sign: i8,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndDoc {
    pub orbit: String,
    pub k: u32,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, CliError> {
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("document: {e}")))?;
        if doc.version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "version: unsupported schema version `{}`, expected `{SCHEMA_VERSION}`",
                doc.version
            )));
        }
        Ok(doc)
    }

    /// Builds the orbit set, optionally overriding the action cap.
    pub fn to_orbit_set(&self, cap_override: Option<&Rational>) -> Result<OrbitSet, CliError> {
        let mut set = match (&self.orbit_set, &self.model) {
            (Some(_), Some(_)) => {
                return Err(CliError::Input(
                    "document: give either orbit_set or model, not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Input(
                    "document: one of orbit_set or model is required".into(),
                ))
            }
            (Some(os), None) => os.to_core()?,
            (None, Some(m)) => m.to_core()?,
        };
        if let Some(cap) = cap_override {
            set.action_cap = Some(cap.clone());
            set.validate().map_err(|e| CliError::Input(format!("action cap: {e}")))?;
        }
        Ok(set)
    }

    pub fn to_moduli(&self, set: &OrbitSet) -> Result<ModuliInput, CliError> {
        let mut records = Vec::new();
        for (i, rec) in self.moduli.iter().flatten().enumerate() {
            let path = format!("moduli[{i}]");
            let resolve = |end: &EndDoc, field: &str| {
                set.orbit_by_name(&end.orbit)
                    .map(|(id, _)| OrbitIterate::new(id, end.k))
                    .ok_or_else(|| {
                        CliError::Input(format!("{path}.{field}.orbit: unknown orbit `{}`", end.orbit))
                    })
            };
            records.push(ModuliRecord {
                x: resolve(&rec.x, "x")?,
                y: resolve(&rec.y, "y")?,
                sign: rec.sign,
                m_u: rec.multiplicity,
            });
        }
        let input = ModuliInput { records };
        input.validate(set).map_err(|e| CliError::Input(format!("moduli: {e}")))?;
        Ok(input)
    }
}

impl OrbitSetDoc {
    fn to_core(&self) -> Result<OrbitSet, CliError> {
        let mut orbits = Vec::new();
        for (i, o) in self.orbits.iter().enumerate() {
            orbits.push(o.to_core(&format!("orbit_set.orbits[{i}]"))?);
        }
        let homotopy = match &self.homotopy {
            HomotopyDoc::Trivial => FreeHomotopyModel::Trivial,
            HomotopyDoc::Cyclic { order } => FreeHomotopyModel::Cyclic { order: *order },
            HomotopyDoc::Table { bound, map } => {
                let mut table = BTreeMap::new();
                for e in map {
                    table.insert((e.orbit.clone(), e.k), e.class);
                }
                FreeHomotopyModel::Table { map: table, bound: *bound }
            }
        };
        let cap = self
            .action_cap
            .as_deref()
            .map(|s| parse_rational(s, "orbit_set.action_cap"))
            .transpose()?;
        let mut set = OrbitSet::new(orbits, homotopy, cap)
            .map_err(|e| CliError::Input(format!("orbit_set: {e}")))?;
        if let Some(notes) = &self.notes {
            set.notes = notes.clone();
        }
        Ok(set)
    }
}

impl OrbitDoc {
    fn to_core(&self, path: &str) -> Result<SimpleOrbit, CliError> {
        let action = parse_rational(&self.action, &format!("{path}.action"))?;
        let rot_path = format!("{path}.rotation");
        let need_rotation = || -> Result<RotationNumber, CliError> {
            let s = self.rotation.as_deref().ok_or_else(|| {
                CliError::Input(format!("{rot_path}: required for type `{}`", self.orbit_type))
            })?;
            parse_rotation(s, &rot_path)
        };
        let built = match self.orbit_type.as_str() {
            "elliptic" => SimpleOrbit::elliptic(
                self.name.clone(),
                need_rotation()?,
                action,
                self.homotopy_seed,
            ),
            "positive-hyperbolic" | "negative-hyperbolic" => {
                let rot = need_rotation()?;
                if rot.offset() != Offset::Exact {
                    return Err(CliError::Input(format!(
                        "{rot_path}: hyperbolic rotation numbers are exact, drop the eps suffix"
                    )));
                }
                let theta = rot.rational_part().clone();
                if self.orbit_type == "positive-hyperbolic" {
                    SimpleOrbit::positive_hyperbolic(
                        self.name.clone(),
                        theta,
                        action,
                        self.homotopy_seed,
                    )
                } else {
                    SimpleOrbit::negative_hyperbolic(
                        self.name.clone(),
                        theta,
                        action,
                        self.homotopy_seed,
                    )
                }
            }
            "explicit" => {
                let t = self.table.as_ref().ok_or_else(|| {
                    CliError::Input(format!("{path}.table: required for type `explicit`"))
                })?;
                SimpleOrbit::new(
                    self.name.clone(),
                    OrbitType::Explicit,
                    CzModel::PeriodicAffine {
                        period: t.period,
                        residues: t.residues.clone(),
                        increment: t.increment,
                    },
                    action,
                    self.homotopy_seed,
                )
            }
            other => {
                return Err(CliError::Input(format!(
                    "{path}.type: unknown orbit type `{other}`"
                )))
            }
        };
        built.map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

impl ModelDoc {
    fn to_core(&self) -> Result<OrbitSet, CliError> {
        let input = |e| CliError::Input(format!("model: {e}"));
        match self {
            ModelDoc::Ellipsoid { phi1, phi2, action1, action2 } => {
                let spec = EllipsoidSpec::new(
                    parse_rotation(phi1, "model.phi1")?,
                    parse_rotation(phi2, "model.phi2")?,
                    parse_rational(action1, "model.action1")?,
                    parse_rational(action2, "model.action2")?,
                )
                .map_err(input)?;
                models::ellipsoid(&spec).map_err(input)
            }
            ModelDoc::PrequantizedS3 { critical_points } => {
                models::prequantized_s3(&morse(critical_points)?).map_err(input)
            }
            ModelDoc::LensSpace { n, critical_points } => {
                models::lens_space(*n, &morse(critical_points)?).map_err(input)
            }
        }
    }
}

fn morse(points: &Option<Vec<CriticalPointDoc>>) -> Result<MorseData, CliError> {
    match points {
        None => Ok(MorseData::height()),
        Some(ps) => MorseData::new(ps.iter().map(|p| (p.name.clone(), p.index)).collect())
            .map_err(|e| CliError::Input(format!("model.critical_points: {e}"))),
    }
}
