//! The four document-driven commands plus the fixed cobordism table. Each
//! returns rendered output and the process exit code.

use cch_core::building::{classify_index2, enumerate_buildings, Budgets};
use cch_core::chain::{build_generators, check_d_squared, differential, homology, Variant};
use cch_core::dynamics::{is_dynamically_convex, is_dynamically_separated, ClassifierReport};
use cch_core::models::cobordism_grading_table;
use cch_core::orbit::Rational;

use crate::doc::{format_rational, Document};
use crate::report::{
    BudgetsDoc, BuildingDoc, BuildingsReport, ClassifierDoc, ClassifyReport, CobordismDoc, CzReport,
    CzRow, HomologyReport, RankRow, TotalRow, ViolationDoc, WitnessDoc,
};
use crate::{CliError, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH_FAILURE: i32 = 4;

pub struct Rendered {
    pub text: String,
    pub exit: i32,
}

fn render<T: serde::Serialize>(report: &T, text: String, format: Format, exit: i32) -> Rendered {
    let text = match format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialization");
            s.push('\n');
            s
        }
    };
    Rendered { text, exit }
}

pub fn cmd_cz(doc: &Document, k_max: u32, format: Format) -> Result<Rendered, CliError> {
    let set = doc.to_orbit_set(None)?;
    let mut rows = Vec::new();
    for orbit in &set.orbits {
        let cap = set.max_in_cap(orbit, k_max, None);
        for k in 1..=cap {
            rows.push(CzRow {
                orbit: orbit.name.clone(),
                k,
                mu: orbit.cz_index(k)?,
                grading: orbit.grading(k, 2)?,
                parity: orbit.parity_z2(k)?.to_string(),
                good: !orbit.is_bad(k)?,
                action: format_rational(&orbit.iterate_action(k)?),
                class: set.class_of(orbit, k)?,
            });
        }
    }
    let report = CzReport { rows };
    let text = report.to_text();
    Ok(render(&report, text, format, EXIT_OK))
}

fn classifier_doc(r: &ClassifierReport) -> ClassifierDoc {
    ClassifierDoc {
        passed: r.passed,
        k_cap: r.k_cap,
        action_cap: r.action_cap_note.clone(),
        violations: r
            .violations
            .iter()
            .map(|v| ViolationDoc {
                orbit: v.orbit.clone(),
                k: v.k,
                condition: v.condition.clone(),
                detail: v.detail.clone(),
            })
            .collect(),
    }
}

pub fn cmd_classify(
    doc: &Document,
    k_max: u32,
    action_cap: Option<&Rational>,
    format: Format,
) -> Result<Rendered, CliError> {
    let set = doc.to_orbit_set(None)?;
    let convex = is_dynamically_convex(&set, k_max)?;
    let separated = is_dynamically_separated(&set, k_max, action_cap)?;
    let report =
        ClassifyReport { convex: classifier_doc(&convex), separated: classifier_doc(&separated) };
    let text = report.to_text();
    Ok(render(&report, text, format, EXIT_OK))
}

pub fn cmd_buildings(
    doc: &Document,
    target_index: i64,
    negative_ends: u32,
    budgets: Budgets,
    action_cap: Option<&Rational>,
    format: Format,
) -> Result<Rendered, CliError> {
    let set = doc.to_orbit_set(action_cap)?;
    let result = enumerate_buildings(&set, target_index, negative_ends as usize, budgets)?;
    let classify = target_index == 2 && negative_ends == 1;
    let mut buildings = Vec::new();
    for b in &result.buildings {
        buildings.push(BuildingDoc {
            description: b.describe(&set),
            total_index: b.total_index,
            classification: if classify { Some(classify_index2(b)?.to_string()) } else { None },
        });
    }
    let report = BuildingsReport {
        target_index,
        negative_ends,
        budgets: BudgetsDoc {
            max_levels: budgets.max_levels,
            max_cover_degree: budgets.max_cover_degree,
            max_branch: budgets.max_branch,
            max_components_per_level: budgets.max_components_per_level,
        },
        incomplete: result.incomplete,
        buildings,
    };
    let text = report.to_text();
    Ok(render(&report, text, format, EXIT_OK))
}

pub fn cmd_homology(
    doc: &Document,
    degrees: (i64, i64),
    variant: Variant,
    action_cap: Option<&Rational>,
    format: Format,
) -> Result<Rendered, CliError> {
    let (lo, hi) = degrees;
    if lo > hi {
        return Err(CliError::Input(format!("degrees: empty window {lo}..{hi}")));
    }
    let set = doc.to_orbit_set(action_cap)?;
    let moduli = doc.to_moduli(&set)?;
    let table = build_generators(&set, None, lo, hi)?;
    let complex = differential(&set, &table, &moduli, variant)?;
    let variant_name = match variant {
        Variant::Minus => "minus",
        Variant::Plus => "plus",
    };
    let (square_zero, witness) = check_d_squared(&complex);
    if !square_zero {
        let report = HomologyReport {
            variant: variant_name.into(),
            degrees,
            square_zero: false,
            witness: witness.map(|w| WitnessDoc {
                class: w.class,
                degree: w.degree,
                from: w.from,
                to: w.to,
                value: format_rational(&w.value),
            }),
            ranks: Vec::new(),
            totals: Vec::new(),
        };
        let text = report.to_text();
        return Ok(render(&report, text, format, EXIT_MATH_FAILURE));
    }
    let ranks = homology(&complex, lo, hi)?;
    let mut rows = Vec::new();
    let mut totals: std::collections::BTreeMap<i64, usize> = (lo..=hi).map(|d| (d, 0)).collect();
    for (&(class, degree), entry) in &ranks.ranks {
        rows.push(RankRow { class, degree, rank: entry.rank, edge: entry.edge });
        *totals.get_mut(&degree).expect("degree in window") += entry.rank;
    }
    let report = HomologyReport {
        variant: variant_name.into(),
        degrees,
        square_zero: true,
        witness: None,
        ranks: rows,
        totals: totals.into_iter().map(|(degree, rank)| TotalRow { degree, rank }).collect(),
    };
    let text = report.to_text();
    Ok(render(&report, text, format, EXIT_OK))
}

pub fn cmd_cobordism(format: Format) -> Result<Rendered, CliError> {
    let r = cobordism_grading_table()?;
    let report = CobordismDoc {
        upper_gradings: r.upper_gradings,
        lower_gradings: r.lower_gradings,
        matches: r.matches,
        base_cylinder_index: r.base_cylinder_index,
        double_cover_index: r.double_cover_index,
    };
    let text = report.to_text();
    Ok(render(&report, text, format, EXIT_OK))
}
