//! Machine-readable reports and their plain-text renderings. Every report
//! round-trips through serde, and all orderings are canonical so repeated
//! runs emit identical bytes.

use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CzReport {
    pub rows: Vec<CzRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CzRow {
    pub orbit: String,
    pub k: u32,
    pub mu: i64,
    pub grading: i64,
    pub parity: String,
    pub good: bool,
    pub action: String,
    pub class: u32,
}

impl CzReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<10} {:>4} {:>6} {:>8} {:>6} {:>5} {:>10} {:>6}",
            "orbit", "k", "mu", "grading", "parity", "good", "action", "class"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:<10} {:>4} {:>6} {:>8} {:>6} {:>5} {:>10} {:>6}",
                r.orbit, r.k, r.mu, r.grading, r.parity, r.good, r.action, r.class
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyReport {
    pub convex: ClassifierDoc,
    pub separated: ClassifierDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierDoc {
    pub passed: bool,
    pub k_cap: u32,
    pub action_cap: String,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub orbit: String,
    pub k: u32,
    pub condition: String,
    pub detail: String,
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (label, part) in
            [("dynamically convex", &self.convex), ("dynamically separated", &self.separated)]
        {
            writeln!(
                out,
                "{label}: {} (k <= {}, action cap {})",
                if part.passed { "PASS" } else { "FAIL" },
                part.k_cap,
                part.action_cap
            )
            .unwrap();
            for v in &part.violations {
                writeln!(out, "  {}^{}: condition {}: {}", v.orbit, v.k, v.condition, v.detail)
                    .unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingsReport {
    pub target_index: i64,
    pub negative_ends: u32,
    pub budgets: BudgetsDoc,
    pub incomplete: bool,
    pub buildings: Vec<BuildingDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetsDoc {
    pub max_levels: u32,
    pub max_cover_degree: u32,
    pub max_branch: u32,
    pub max_components_per_level: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingDoc {
    pub description: String,
    pub total_index: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
}

impl BuildingsReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "target index {} with {} unmatched negative end(s); budgets: levels <= {}, cover degree <= {}, branch <= {}, components per level <= {}",
            self.target_index,
            self.negative_ends,
            self.budgets.max_levels,
            self.budgets.max_cover_degree,
            self.budgets.max_branch,
            self.budgets.max_components_per_level
        )
        .unwrap();
        if self.incomplete {
            writeln!(out, "WARNING: search truncated by budgets; list may be incomplete").unwrap();
        }
        writeln!(out, "{} building(s)", self.buildings.len()).unwrap();
        for b in &self.buildings {
            match &b.classification {
                Some(c) => writeln!(out, "  [{c}] {}", b.description).unwrap(),
                None => writeln!(out, "  {}", b.description).unwrap(),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyReport {
    pub variant: String,
    pub degrees: (i64, i64),
    pub square_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    pub ranks: Vec<RankRow>,
    pub totals: Vec<TotalRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub class: u32,
    pub degree: i64,
    pub from: String,
    pub to: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankRow {
    pub class: u32,
    pub degree: i64,
    pub rank: usize,
    /// Set when the degree sits at the window boundary, where one of the two
    /// adjacent differentials is unknown.
    pub edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TotalRow {
    pub degree: i64,
    pub rank: usize,
}

impl HomologyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.square_zero {
            writeln!(out, "d^2 != 0: the input moduli counts do not form a complex").unwrap();
            if let Some(w) = &self.witness {
                writeln!(
                    out,
                    "  witness: class {}, degree {}, <d^2 {}, {}> = {}",
                    w.class, w.degree, w.from, w.to, w.value
                )
                .unwrap();
            }
            return out;
        }
        writeln!(out, "d^2 = 0 confirmed").unwrap();
        writeln!(
            out,
            "homology ranks ({} differential), degrees {}..{}",
            self.variant, self.degrees.0, self.degrees.1
        )
        .unwrap();
        writeln!(out, "{:<6} {:>7} {:>5}  note", "class", "degree", "rank").unwrap();
        for r in &self.ranks {
            writeln!(
                out,
                "{:<6} {:>7} {:>5}  {}",
                r.class,
                r.degree,
                r.rank,
                if r.edge { "window edge" } else { "" }
            )
            .unwrap();
        }
        writeln!(out, "totals per degree:").unwrap();
        for t in &self.totals {
            writeln!(out, "{:>7} {:>5}", t.degree, t.rank).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobordismDoc {
    pub upper_gradings: Vec<(String, i64)>,
    pub lower_gradings: Vec<(String, i64)>,
    pub matches: Vec<(String, String, i64)>,
    pub base_cylinder_index: i64,
    pub double_cover_index: i64,
}

impl CobordismDoc {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "upper level gradings:").unwrap();
        for (name, g) in &self.upper_gradings {
            writeln!(out, "  |{name}| = {g}").unwrap();
        }
        writeln!(out, "lower level gradings:").unwrap();
        for (name, g) in &self.lower_gradings {
            writeln!(out, "  |{name}| = {g}").unwrap();
        }
        writeln!(out, "grading matches across the cobordism:").unwrap();
        for (a, b, g) in &self.matches {
            writeln!(out, "  {a} <-> {b} at degree {g}").unwrap();
        }
        writeln!(out, "connecting cylinder index: {}", self.base_cylinder_index).unwrap();
        writeln!(out, "its double cover index: {}", self.double_cover_index).unwrap();
        out
    }
}
