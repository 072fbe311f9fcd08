//! Built-in orbit-set generators: irrational ellipsoids, prequantized
//! three-spheres, and lens-space quotients, plus the cobordism grading table
//! that exhibits the failure of the naive invariance argument.

use num::Signed;

use crate::dynamics::{FreeHomotopyModel, OrbitSet};
use crate::error::{CchError, Result};
use crate::orbit::{ratio, CzModel, Offset, OrbitType, Rational, RotationNumber, SimpleOrbit};

/// An irrational ellipsoid with axis rotation numbers `phi1 = a/b` and
/// `phi2 = b/a`, carried as exact rationals with infinitesimal offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipsoidSpec {
    pub phi1: RotationNumber,
    pub phi2: RotationNumber,
    pub action1: Rational,
    pub action2: Rational,
}

impl EllipsoidSpec {
    pub fn new(
        phi1: RotationNumber,
        phi2: RotationNumber,
        action1: Rational,
        action2: Rational,
    ) -> Result<Self> {
        let spec = EllipsoidSpec { phi1, phi2, action1, action2 };
        spec.validate()?;
        Ok(spec)
    }

    /// Reciprocity: phi2 must be the reciprocal of phi1 with the offset
    /// negated, since (r + s*eps)^-1 = 1/r - s*eps to first order.
    pub fn validate(&self) -> Result<()> {
        let recip = self.phi1.reciprocal().ok_or_else(|| {
            CchError::InvalidArgument("ellipsoid axis ratio must be nonzero".into())
        })?;
        if recip != self.phi2 {
            return Err(CchError::InvalidArgument(format!(
                "axis rotation numbers are not reciprocal: ({}) vs ({})",
                self.phi1, self.phi2
            )));
        }
        if self.phi1.offset() == Offset::Exact {
            return Err(CchError::InvalidArgument(
                "ellipsoid rotation numbers must carry an infinitesimal offset".into(),
            ));
        }
        if !self.action1.is_positive() || !self.action2.is_positive() {
            return Err(CchError::InvalidArgument("ellipsoid actions must be positive".into()));
        }
        Ok(())
    }
}

fn shift_by_one(phi: &RotationNumber) -> RotationNumber {
    RotationNumber::new(phi.rational_part() + ratio(1, 1), phi.offset())
}

/// Two elliptic orbits with rotation numbers `1 + phi1` and `1 + phi2`,
/// every iterate contractible.
pub fn ellipsoid(spec: &EllipsoidSpec) -> Result<OrbitSet> {
    spec.validate()?;
    let g1 = SimpleOrbit::elliptic("g1", shift_by_one(&spec.phi1), spec.action1.clone(), 0)?;
    let g2 = SimpleOrbit::elliptic("g2", shift_by_one(&spec.phi2), spec.action2.clone(), 0)?;
    OrbitSet::new(vec![g1, g2], FreeHomotopyModel::Trivial, None)
}

/// Critical points of the perturbing function on the two-sphere base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseData {
    /// (name, morse index in {0, 1, 2})
    pub points: Vec<(String, u8)>,
}

impl MorseData {
    pub fn new(points: Vec<(String, u8)>) -> Result<Self> {
        let data = MorseData { points };
        data.validate()?;
        Ok(data)
    }

    /// A minimum and a maximum, named south and north.
    pub fn height() -> Self {
        MorseData { points: vec![("south".into(), 0), ("north".into(), 2)] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(CchError::InvalidArgument("need at least one critical point".into()));
        }
        let mut counts = [0i64; 3];
        for (name, idx) in &self.points {
            if *idx > 2 {
                return Err(CchError::InvalidArgument(format!(
                    "critical point `{name}` has morse index {idx}, need 0..=2"
                )));
            }
            counts[*idx as usize] += 1;
        }
        // Euler characteristic of the two-sphere
        if counts[0] - counts[1] + counts[2] != 2 {
            return Err(CchError::InvalidArgument(format!(
                "critical point counts ({}, {}, {}) violate min - saddle + max = 2",
                counts[0], counts[1], counts[2]
            )));
        }
        Ok(())
    }
}

/// Surviving simple orbits sit over critical points, with per-point action
/// slightly increasing in the morse index so that cylinders flow strictly
/// downward in action.
fn critical_point_action(morse_index: u8) -> Rational {
    ratio(100 + morse_index as i64, 100)
}

/// Prequantization model over the two-sphere: one simple orbit per critical
/// point, with index iteration `4k - 1 + morse_index`, every iterate
/// contractible.
pub fn prequantized_s3(h: &MorseData) -> Result<OrbitSet> {
    h.validate()?;
    let mut orbits = Vec::new();
    for (name, idx) in &h.points {
        let (orbit_type, rotation) = match idx {
            0 => (OrbitType::Elliptic, RotationNumber::minus_eps(ratio(2, 1))),
            1 => (OrbitType::PositiveHyperbolic, RotationNumber::exact(ratio(2, 1))),
            2 => (OrbitType::Elliptic, RotationNumber::plus_eps(ratio(2, 1))),
            _ => unreachable!(),
        };
        orbits.push(SimpleOrbit::new(
            name.clone(),
            orbit_type,
            CzModel::Rotation(rotation),
            critical_point_action(*idx),
            0,
        )?);
    }
    OrbitSet::new(orbits, FreeHomotopyModel::Trivial, None)
}

/// Quotient lens-space model with cyclic fundamental group of order n + 1:
/// one simple orbit per critical point, with period-(n + 1) index tables
/// `mu = 4l - 1 + morse_index` on contractible iterates `k = l(n + 1)` and
/// `mu = 4l + 1 + morse_index` on the others.
pub fn lens_space(n: u32, h: &MorseData) -> Result<OrbitSet> {
    if n < 1 {
        return Err(CchError::InvalidArgument("lens order parameter must be >= 1".into()));
    }
    h.validate()?;
    let period = n + 1;
    let mut orbits = Vec::new();
    for (name, idx) in &h.points {
        let base = *idx as i64;
        let mut residues = vec![base + 1; period as usize];
        residues[0] = base - 1;
        orbits.push(SimpleOrbit::new(
            name.clone(),
            OrbitType::Explicit,
            CzModel::PeriodicAffine { period, residues, increment: 4 },
            critical_point_action(*idx),
            1,
        )?);
    }
    OrbitSet::new(orbits, FreeHomotopyModel::Cyclic { order: period }, None)
}

/// The grading comparison between the two contactomorphic irrational
/// ellipsoids whose cobordism breaks the naive invariance argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobordismReport {
    /// Gradings of the first four generators on the fatter ellipsoid.
    pub upper_gradings: Vec<(String, i64)>,
    /// Gradings of the first four generators on the rounder ellipsoid.
    pub lower_gradings: Vec<(String, i64)>,
    /// The unique grading matches at degrees 2 and 6.
    pub matches: Vec<(String, String, i64)>,
    /// Cobordism index of the degree-2 match cylinder: mu_+ - mu_-.
    pub base_cylinder_index: i64,
    /// Cobordism index of its double unbranched cover.
    pub double_cover_index: i64,
}

/// E(1 - eps, 2 + eps) against E(1 - eps, 1 + eps): emits both grading
/// lists, the unique matches at degrees 2 and 6, and the index of the
/// double cover of the degree-2 cylinder, which is negative.
pub fn cobordism_grading_table() -> Result<CobordismReport> {
    let upper_spec = EllipsoidSpec::new(
        RotationNumber::minus_eps(ratio(1, 2)),
        RotationNumber::plus_eps(ratio(2, 1)),
        ratio(1, 1),
        ratio(2, 1),
    )?;
    let lower_spec = EllipsoidSpec::new(
        RotationNumber::minus_eps(ratio(1, 1)),
        RotationNumber::plus_eps(ratio(1, 1)),
        ratio(1, 1),
        ratio(1, 1),
    )?;
    let upper = ellipsoid(&upper_spec)?;
    let lower = ellipsoid(&lower_spec)?;

    let d1 = &upper.orbits[0];
    let d2 = &upper.orbits[1];
    let g1 = &lower.orbits[0];
    let g2 = &lower.orbits[1];

    let upper_gradings = vec![
        ("d1".to_string(), d1.grading(1, 2)?),
        ("d1^2".to_string(), d1.grading(2, 2)?),
        ("d2".to_string(), d2.grading(1, 2)?),
        ("d1^3".to_string(), d1.grading(3, 2)?),
    ];
    let lower_gradings = vec![
        ("g1".to_string(), g1.grading(1, 2)?),
        ("g2".to_string(), g2.grading(1, 2)?),
        ("g1^2".to_string(), g1.grading(2, 2)?),
        ("g2^2".to_string(), g2.grading(2, 2)?),
    ];

    let mut matches = Vec::new();
    for degree in [2, 6] {
        let ups: Vec<&(String, i64)> =
            upper_gradings.iter().filter(|(_, g)| *g == degree).collect();
        let downs: Vec<&(String, i64)> =
            lower_gradings.iter().filter(|(_, g)| *g == degree).collect();
        if ups.len() != 1 || downs.len() != 1 {
            return Err(CchError::InternalAssertion(format!(
                "grading match at degree {degree} is not unique"
            )));
        }
        matches.push((ups[0].0.clone(), downs[0].0.clone(), degree));
    }

    // index convention in a cobordism: mu of the top end minus mu of the
    // bottom end, with no puncture correction for cylinders
    let base_cylinder_index = d1.cz_index(1)? - g1.cz_index(1)?;
    let double_cover_index = d1.cz_index(2)? - g1.cz_index(2)?;

    Ok(CobordismReport {
        upper_gradings,
        lower_gradings,
        matches,
        base_cylinder_index,
        double_cover_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fat_ellipsoid_gradings() {
        let spec = EllipsoidSpec::new(
            RotationNumber::minus_eps(ratio(1, 2)),
            RotationNumber::plus_eps(ratio(2, 1)),
            ratio(1, 1),
            ratio(2, 1),
        )
        .unwrap();
        let set = ellipsoid(&spec).unwrap();
        let g1 = &set.orbits[0];
        let g2 = &set.orbits[1];
        assert_eq!(g1.grading(1, 2).unwrap(), 2);
        assert_eq!(g1.grading(2, 2).unwrap(), 4);
        assert_eq!(g2.grading(1, 2).unwrap(), 6);
        assert_eq!(g1.grading(3, 2).unwrap(), 8);
    }

    #[test]
    fn round_ellipsoid_gradings() {
        let spec = EllipsoidSpec::new(
            RotationNumber::minus_eps(ratio(1, 1)),
            RotationNumber::plus_eps(ratio(1, 1)),
            ratio(1, 1),
            ratio(1, 1),
        )
        .unwrap();
        let set = ellipsoid(&spec).unwrap();
        let g1 = &set.orbits[0];
        let g2 = &set.orbits[1];
        assert_eq!(g1.grading(1, 2).unwrap(), 2);
        assert_eq!(g2.grading(1, 2).unwrap(), 4);
        assert_eq!(g1.grading(2, 2).unwrap(), 6);
        assert_eq!(g2.grading(2, 2).unwrap(), 8);
    }

    #[test]
    fn reciprocity_enforced() {
        assert!(EllipsoidSpec::new(
            RotationNumber::minus_eps(ratio(1, 2)),
            RotationNumber::plus_eps(ratio(3, 1)),
            ratio(1, 1),
            ratio(1, 1),
        )
        .is_err());
        assert!(EllipsoidSpec::new(
            RotationNumber::minus_eps(ratio(1, 2)),
            RotationNumber::minus_eps(ratio(2, 1)),
            ratio(1, 1),
            ratio(1, 1),
        )
        .is_err());
    }

    #[test]
    fn thin_ellipsoid_first_indices() {
        // a/b = 1/3 < 1/2: mu(g1) = 3, mu(g1^2) = 5
        let spec = EllipsoidSpec::new(
            RotationNumber::plus_eps(ratio(1, 3)),
            RotationNumber::minus_eps(ratio(3, 1)),
            ratio(1, 1),
            ratio(3, 1),
        )
        .unwrap();
        let set = ellipsoid(&spec).unwrap();
        let g1 = &set.orbits[0];
        assert_eq!(g1.cz_index(1).unwrap(), 3);
        assert_eq!(g1.cz_index(2).unwrap(), 5);
    }

    #[test]
    fn prequantization_height_indices() {
        let set = prequantized_s3(&MorseData::height()).unwrap();
        let south = set.orbit_by_name("south").unwrap().1;
        let north = set.orbit_by_name("north").unwrap().1;
        for k in 1..=20 {
            assert_eq!(south.cz_index(k).unwrap(), 4 * k as i64 - 1);
            assert_eq!(north.cz_index(k).unwrap(), 4 * k as i64 + 1);
        }
    }

    #[test]
    fn prequantization_saddle_is_even() {
        let h = MorseData::new(vec![
            ("a".into(), 0),
            ("b".into(), 0),
            ("s".into(), 1),
            ("n".into(), 2),
        ])
        .unwrap();
        let set = prequantized_s3(&h).unwrap();
        let saddle = set.orbit_by_name("s").unwrap().1;
        for k in 1..=10 {
            assert_eq!(saddle.cz_index(k).unwrap(), 4 * k as i64);
        }
    }

    #[test]
    fn morse_euler_check() {
        assert!(MorseData::new(vec![("only".into(), 0)]).is_err());
        assert!(MorseData::new(vec![("a".into(), 0), ("b".into(), 2), ("c".into(), 2)]).is_err());
    }

    #[test]
    fn prequantization_is_dynamically_separated() {
        let set = prequantized_s3(&MorseData::height()).unwrap();
        let report = crate::dynamics::is_dynamically_separated(&set, 30, None).unwrap();
        assert!(report.passed, "{:?}", report.violations);
        assert!(crate::dynamics::is_dynamically_convex(&set, 30).unwrap().passed);
    }

    #[test]
    fn lens_index_tables() {
        let set = lens_space(1, &MorseData::height()).unwrap();
        let south = set.orbit_by_name("south").unwrap().1;
        // contractible iterates k = 2l: mu = 4l - 1
        for l in 1..=10u32 {
            assert_eq!(south.cz_index(2 * l).unwrap(), 4 * l as i64 - 1);
            assert_eq!(set.class_of(south, 2 * l).unwrap(), 0);
        }
        // noncontractible iterates k = 2l + 1: mu = 4l + 1
        for l in 0..=10u32 {
            assert_eq!(south.cz_index(2 * l + 1).unwrap(), 4 * l as i64 + 1);
            assert_eq!(set.class_of(south, 2 * l + 1).unwrap(), 1);
        }
        // n = 3, class c = 2, l = 0, morse index 2: mu = 3
        let set = lens_space(3, &MorseData::height()).unwrap();
        let north = set.orbit_by_name("north").unwrap().1;
        assert_eq!(north.cz_index(2).unwrap(), 3);
        assert_eq!(set.class_of(north, 2).unwrap(), 2);
    }

    #[test]
    fn lens_sets_are_dynamically_convex_and_good() {
        for n in 1..=5 {
            let set = lens_space(n, &MorseData::height()).unwrap();
            assert!(crate::dynamics::is_dynamically_convex(&set, 40).unwrap().passed);
            for orbit in &set.orbits {
                for k in 1..=40 {
                    assert!(!orbit.is_bad(k).unwrap());
                }
            }
        }
    }

    #[test]
    fn cobordism_table_matches_and_cover_index() {
        let report = cobordism_grading_table().unwrap();
        assert_eq!(
            report.matches,
            vec![
                ("d1".to_string(), "g1".to_string(), 2),
                ("d2".to_string(), "g1^2".to_string(), 6),
            ]
        );
        assert_eq!(report.base_cylinder_index, 0);
        assert_eq!(report.double_cover_index, -2);
        assert_eq!(
            report.upper_gradings.iter().map(|(_, g)| *g).collect::<Vec<_>>(),
            vec![2, 4, 6, 8]
        );
        assert_eq!(
            report.lower_gradings.iter().map(|(_, g)| *g).collect::<Vec<_>>(),
            vec![2, 4, 6, 8]
        );
    }
}
