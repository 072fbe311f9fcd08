//! Free homotopy class bookkeeping for iterates and the dynamical
//! classifiers: dynamically convex and dynamically separated (with the
//! up-to-action variant).

use std::collections::BTreeMap;

use num::Signed;

use crate::error::{CchError, Result};
use crate::orbit::{OrbitId, Rational, SimpleOrbit};

/// Free homotopy class label. `0` is the contractible class.
pub type ClassLabel = u32;

/// How the free homotopy class of every iterate is determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeHomotopyModel {
    /// Every iterate of every orbit is contractible.
    Trivial,
    /// class(gamma^k) = (k * homotopy_seed) mod order; residue 0 contractible.
    Cyclic { order: u32 },
    /// Explicit finite table with a declared iterate bound per orbit.
    Table {
        map: BTreeMap<(String, u32), ClassLabel>,
        bound: u32,
    },
}

/// An orbit set: the finite combinatorial stand-in for all Reeb orbits of a
/// contact form up to an action threshold.
#[derive(Debug, Clone)]
pub struct OrbitSet {
    pub orbits: Vec<SimpleOrbit>,
    pub homotopy: FreeHomotopyModel,
    /// `None` means no action threshold.
    pub action_cap: Option<Rational>,
    pub notes: String,
}

impl OrbitSet {
    pub fn new(
        orbits: Vec<SimpleOrbit>,
        homotopy: FreeHomotopyModel,
        action_cap: Option<Rational>,
    ) -> Result<Self> {
        let set = OrbitSet { orbits, homotopy, action_cap, notes: String::new() };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = std::collections::BTreeSet::new();
        for orbit in &self.orbits {
            orbit.validate()?;
            if !names.insert(orbit.name.as_str()) {
                return Err(CchError::InvalidOrbitSet(format!(
                    "duplicate orbit name `{}`",
                    orbit.name
                )));
            }
            match &self.homotopy {
                FreeHomotopyModel::Trivial => {
                    if orbit.homotopy_seed != 0 {
                        return Err(CchError::InvalidOrbitSet(format!(
                            "orbit `{}` has nonzero homotopy seed under the trivial model",
                            orbit.name
                        )));
                    }
                }
                FreeHomotopyModel::Cyclic { order } => {
                    if *order < 2 {
                        return Err(CchError::InvalidOrbitSet("cyclic order must be >= 2".into()));
                    }
                    if orbit.homotopy_seed >= *order {
                        return Err(CchError::InvalidOrbitSet(format!(
                            "orbit `{}` seed {} outside Z/{}",
                            orbit.name, orbit.homotopy_seed, order
                        )));
                    }
                }
                FreeHomotopyModel::Table { map, bound } => {
                    for k in 1..=*bound {
                        if !map.contains_key(&(orbit.name.clone(), k)) {
                            return Err(CchError::InvalidOrbitSet(format!(
                                "homotopy table missing ({}, {})",
                                orbit.name, k
                            )));
                        }
                    }
                }
            }
        }
        if let Some(cap) = &self.action_cap {
            if !cap.is_positive() {
                return Err(CchError::InvalidOrbitSet("action cap must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn orbit(&self, id: OrbitId) -> Result<&SimpleOrbit> {
        self.orbits.get(id.0).ok_or(CchError::UnknownOrbit(id.0))
    }

    pub fn orbit_by_name(&self, name: &str) -> Option<(OrbitId, &SimpleOrbit)> {
        self.orbits
            .iter()
            .enumerate()
            .find(|(_, o)| o.name == name)
            .map(|(i, o)| (OrbitId(i), o))
    }

    /// Free homotopy class of `orbit^k`.
    pub fn class_of(&self, orbit: &SimpleOrbit, k: u32) -> Result<ClassLabel> {
        if k == 0 {
            return Err(CchError::InvalidIterate);
        }
        match &self.homotopy {
            FreeHomotopyModel::Trivial => Ok(0),
            FreeHomotopyModel::Cyclic { order } => {
                Ok(((k as u64 * orbit.homotopy_seed as u64) % *order as u64) as ClassLabel)
            }
            FreeHomotopyModel::Table { map, bound } => {
                if k > *bound {
                    return Err(CchError::HomotopyOutOfDomain { orbit: orbit.name.clone(), k });
                }
                map.get(&(orbit.name.clone(), k)).copied().ok_or(
                    CchError::HomotopyOutOfDomain { orbit: orbit.name.clone(), k },
                )
            }
        }
    }

    /// All iterates `k <= bound` of `orbit` lying in class `c`, increasing.
    pub fn iterate_list(
        &self,
        orbit: &SimpleOrbit,
        c: ClassLabel,
        bound: u32,
    ) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for k in 1..=bound {
            if self.class_of(orbit, k)? == c {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Largest iterate of `orbit` whose action stays within both the set's
    /// action cap and an optional extra cap, additionally clipped at `k_cap`.
    pub fn max_in_cap(&self, orbit: &SimpleOrbit, k_cap: u32, extra_cap: Option<&Rational>) -> u32 {
        let mut k_max = k_cap;
        for cap in [self.action_cap.as_ref(), extra_cap].into_iter().flatten() {
            // k * action <= cap  <=>  k <= cap / action
            let q = (cap / &orbit.action).floor().to_integer();
            let clip = if q.sign() == num::bigint::Sign::Minus {
                0
            } else {
                num::ToPrimitive::to_u32(&q).unwrap_or(u32::MAX)
            };
            k_max = k_max.min(clip);
        }
        k_max
    }
}

/// One classifier violation with enough context to locate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub orbit: String,
    pub k: u32,
    pub condition: String,
    pub detail: String,
}

/// Outcome of a dynamical classifier run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    pub k_cap: u32,
    pub action_cap_note: String,
}

/// Dynamically convex: every contractible iterate within the caps has
/// Conley-Zehnder index at least 3.
pub fn is_dynamically_convex(set: &OrbitSet, k_cap: u32) -> Result<ClassifierReport> {
    let mut violations = Vec::new();
    for orbit in &set.orbits {
        let k_max = set.max_in_cap(orbit, k_cap, None);
        for k in 1..=k_max {
            if set.class_of(orbit, k)? != 0 {
                continue;
            }
            let mu = orbit.cz_index(k)?;
            if mu < 3 {
                violations.push(Violation {
                    orbit: orbit.name.clone(),
                    k,
                    condition: "contractible iterate must have index >= 3".into(),
                    detail: format!("mu = {mu}"),
                });
            }
        }
    }
    Ok(ClassifierReport {
        passed: violations.is_empty(),
        violations,
        k_cap,
        action_cap_note: describe_cap(set.action_cap.as_ref()),
    })
}

/// Dynamically separated, optionally only up to an action threshold.
///
/// Per simple orbit and free homotopy class, with `k_1 < k_2 < ...` the
/// in-cap iterates of that class:
///  - (I.i) contractible class: `3 <= mu(k_1) <= 5`;
///  - (I.ii) noncontractible class: `mu(k_1) >= 1` (the weakest reading of
///    the pinning condition, which only constrains positivity);
///  - (II) `mu(k_{i+1}) = mu(k_i) + 4` between consecutive in-cap entries.
pub fn is_dynamically_separated(
    set: &OrbitSet,
    k_cap: u32,
    action_cap: Option<&Rational>,
) -> Result<ClassifierReport> {
    let mut violations = Vec::new();
    for orbit in &set.orbits {
        let k_max = set.max_in_cap(orbit, k_cap, action_cap);
        let mut by_class: BTreeMap<ClassLabel, Vec<u32>> = BTreeMap::new();
        for k in 1..=k_max {
            by_class.entry(set.class_of(orbit, k)?).or_default().push(k);
        }
        for (c, ks) in by_class {
            let first = ks[0];
            let mu_first = orbit.cz_index(first)?;
            if c == 0 {
                if !(3..=5).contains(&mu_first) {
                    violations.push(Violation {
                        orbit: orbit.name.clone(),
                        k: first,
                        condition: "I.i".into(),
                        detail: format!(
                            "first contractible iterate has mu = {mu_first}, need 3..=5"
                        ),
                    });
                }
            } else if mu_first < 1 {
                violations.push(Violation {
                    orbit: orbit.name.clone(),
                    k: first,
                    condition: "I.ii".into(),
                    detail: format!("first class-{c} iterate has mu = {mu_first}, need >= 1"),
                });
            }
            for pair in ks.windows(2) {
                let (ka, kb) = (pair[0], pair[1]);
                let step = orbit.cz_index(kb)? - orbit.cz_index(ka)?;
                if step != 4 {
                    violations.push(Violation {
                        orbit: orbit.name.clone(),
                        k: kb,
                        condition: "II".into(),
                        detail: format!(
                            "class {c}: mu increment from k={ka} to k={kb} is {step}, need 4"
                        ),
                    });
                }
            }
        }
    }
    Ok(ClassifierReport {
        passed: violations.is_empty(),
        violations,
        k_cap,
        action_cap_note: describe_cap(action_cap.or(set.action_cap.as_ref())),
    })
}

fn describe_cap(cap: Option<&Rational>) -> String {
    match cap {
        Some(c) => format!("action <= {c}"),
        None => "no action cap".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{ratio, RotationNumber};
    use num::One;

    fn cyclic4_seed1() -> OrbitSet {
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(3, 2)),
            Rational::one(),
            1,
        )
        .unwrap();
        OrbitSet::new(vec![g], FreeHomotopyModel::Cyclic { order: 4 }, None).unwrap()
    }

    #[test]
    fn cyclic_classes() {
        let set = cyclic4_seed1();
        let g = &set.orbits[0];
        assert_eq!(set.class_of(g, 4).unwrap(), 0);
        assert_eq!(set.class_of(g, 6).unwrap(), 2);
        assert_eq!(set.iterate_list(g, 0, 12).unwrap(), vec![4, 8, 12]);
        assert_eq!(set.iterate_list(g, 1, 9).unwrap(), vec![1, 5, 9]);
    }

    #[test]
    fn trivial_model_everything_contractible() {
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(3, 2)),
            Rational::one(),
            0,
        )
        .unwrap();
        let set = OrbitSet::new(vec![g], FreeHomotopyModel::Trivial, None).unwrap();
        let g = &set.orbits[0];
        assert_eq!(set.class_of(g, 17).unwrap(), 0);
        assert_eq!(set.iterate_list(g, 0, 3).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn convexity_flags_low_index_contractible_orbit() {
        let p = SimpleOrbit::positive_hyperbolic("p", ratio(1, 1), Rational::one(), 0).unwrap();
        let set = OrbitSet::new(vec![p], FreeHomotopyModel::Trivial, None).unwrap();
        let report = is_dynamically_convex(&set, 5).unwrap();
        assert!(!report.passed);
        assert_eq!(report.violations[0].k, 1);
        assert!(report.violations[0].detail.contains("mu = 2"));
    }

    #[test]
    fn empty_set_is_convex() {
        let set = OrbitSet::new(vec![], FreeHomotopyModel::Trivial, None).unwrap();
        assert!(is_dynamically_convex(&set, 10).unwrap().passed);
    }

    #[test]
    fn separation_needs_increment_four() {
        // theta = 3/2 - eps gives mu(1) = 3 but mu(2) = 5: increment 2.
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(3, 2)),
            Rational::one(),
            0,
        )
        .unwrap();
        let set = OrbitSet::new(vec![g], FreeHomotopyModel::Trivial, None).unwrap();
        let report = is_dynamically_separated(&set, 4, None).unwrap();
        assert!(!report.passed);
        assert!(report.violations.iter().any(|v| v.condition == "II"));
    }

    #[test]
    fn separation_passes_on_increment_four_family() {
        // theta = 2 - eps: mu(k) = 2*floor(2k - eps) + 1 = 4k - 1.
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(2, 1)),
            Rational::one(),
            0,
        )
        .unwrap();
        let set = OrbitSet::new(vec![g], FreeHomotopyModel::Trivial, None).unwrap();
        let report = is_dynamically_separated(&set, 50, None).unwrap();
        assert!(report.passed, "{:?}", report.violations);
    }

    #[test]
    fn action_cap_clips_iterates() {
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(3, 2)),
            ratio(3, 1),
            0,
        )
        .unwrap();
        let set =
            OrbitSet::new(vec![g], FreeHomotopyModel::Trivial, Some(ratio(10, 1))).unwrap();
        let g = &set.orbits[0];
        assert_eq!(set.max_in_cap(g, 100, None), 3);
        assert_eq!(set.max_in_cap(g, 100, Some(&ratio(7, 1))), 2);
        assert_eq!(set.max_in_cap(g, 2, None), 2);
    }

    #[test]
    fn separated_implies_convex() {
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(2, 1)),
            Rational::one(),
            0,
        )
        .unwrap();
        let set = OrbitSet::new(vec![g], FreeHomotopyModel::Trivial, None).unwrap();
        let sep = is_dynamically_separated(&set, 30, None).unwrap();
        let conv = is_dynamically_convex(&set, 30).unwrap();
        assert!(sep.passed);
        assert!(conv.passed);
    }

    #[test]
    fn table_model_rejects_out_of_domain() {
        let g = SimpleOrbit::elliptic(
            "g",
            RotationNumber::minus_eps(ratio(3, 2)),
            Rational::one(),
            0,
        )
        .unwrap();
        let mut map = BTreeMap::new();
        for k in 1..=3 {
            map.insert(("g".to_string(), k), (k % 2) as ClassLabel);
        }
        let set =
            OrbitSet::new(vec![g], FreeHomotopyModel::Table { map, bound: 3 }, None).unwrap();
        let g = &set.orbits[0];
        assert_eq!(set.class_of(g, 2).unwrap(), 0);
        assert!(matches!(
            set.class_of(g, 4),
            Err(CchError::HomotopyOutOfDomain { .. })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let a = SimpleOrbit::elliptic(
            "x",
            RotationNumber::minus_eps(ratio(3, 2)),
            Rational::one(),
            0,
        )
        .unwrap();
        let b = a.clone();
        assert!(OrbitSet::new(vec![a, b], FreeHomotopyModel::Trivial, None).is_err());
    }
}
