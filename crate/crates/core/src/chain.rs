//! Graded chain groups over the rationals generated by good orbits, the
//! weighted differentials, and homology computation per free homotopy class.
//!
//! The two differentials are built from the operators kappa (multiplication
//! by the orbit multiplicity) and delta (the sign-over-multiplicity count of
//! rigid cylinders): the "minus" variant is kappa followed by delta applied
//! first (kappa o delta), the "plus" variant is delta o kappa. When every
//! cylinder record joins ends of equal multiplicity the two coincide.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::Zero;

use crate::dynamics::OrbitSet;
use crate::error::{CchError, Result};
use crate::linalg::QMatrix;
use crate::orbit::{OrbitIterate, Rational};

/// One chain-group generator: a good orbit iterate with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub iterate: OrbitIterate,
    pub name: String,
    pub mu: i64,
    pub grading: i64,
    pub action: Rational,
    pub class: u32,
}

impl Generator {
    pub fn multiplicity(&self) -> u32 {
        self.iterate.k
    }

    pub fn label(&self) -> String {
        if self.iterate.k == 1 {
            self.name.clone()
        } else {
            format!("{}^{}", self.name, self.iterate.k)
        }
    }
}

/// All generators within the action and degree windows, grouped by free
/// homotopy class and degree, canonically ordered (action, name, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    pub deg_min: i64,
    pub deg_max: i64,
    pub classes: BTreeMap<u32, BTreeMap<i64, Vec<Generator>>>,
}

impl GeneratorTable {
    pub fn generators_at(&self, class: u32, degree: i64) -> &[Generator] {
        self.classes
            .get(&class)
            .and_then(|m| m.get(&degree))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn position(&self, class: u32, degree: i64, iterate: &OrbitIterate) -> Option<usize> {
        self.generators_at(class, degree).iter().position(|g| &g.iterate == iterate)
    }

    pub fn all(&self) -> impl Iterator<Item = &Generator> {
        self.classes.values().flat_map(|m| m.values().flatten())
    }

    pub fn len(&self) -> usize {
        self.all().count()
    }

    pub fn is_empty(&self) -> bool {
        self.all().next().is_none()
    }
}

/// Builds the generator table: every good iterate with action within the
/// caps and grading within `[deg_min, deg_max]`.
pub fn build_generators(
    set: &OrbitSet,
    extra_action_cap: Option<&Rational>,
    deg_min: i64,
    deg_max: i64,
) -> Result<GeneratorTable> {
    if set.action_cap.is_none() && extra_action_cap.is_none() {
        return Err(CchError::InfiniteActionCap);
    }
    if deg_min > deg_max {
        return Err(CchError::InvalidArgument("empty degree range".into()));
    }
    let mut classes: BTreeMap<u32, BTreeMap<i64, Vec<Generator>>> = BTreeMap::new();
    for orbit in &set.orbits {
        let k_max = set.max_in_cap(orbit, u32::MAX, extra_action_cap);
        for k in 1..=k_max {
            if orbit.is_bad(k)? {
                continue;
            }
            let grading = orbit.grading(k, 2)?;
            if grading < deg_min || grading > deg_max {
                continue;
            }
            let class = set.class_of(orbit, k)?;
            let (id, _) = set
                .orbit_by_name(&orbit.name)
                .ok_or(CchError::UnknownOrbit(usize::MAX))?;
            classes.entry(class).or_default().entry(grading).or_default().push(Generator {
                iterate: OrbitIterate::new(id, k),
                name: orbit.name.clone(),
                mu: orbit.cz_index(k)?,
                grading,
                action: orbit.iterate_action(k)?,
                class,
            });
        }
    }
    for degrees in classes.values_mut() {
        for gens in degrees.values_mut() {
            gens.sort_by(|a, b| {
                a.action
                    .cmp(&b.action)
                    .then_with(|| a.name.cmp(&b.name))
                    .then_with(|| a.iterate.k.cmp(&b.iterate.k))
            });
        }
    }
    Ok(GeneratorTable { deg_min, deg_max, classes })
}

/// One rigid cylinder: a curve from `x` down to `y` with orientation sign
/// and curve multiplicity `m_u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliRecord {
    pub x: OrbitIterate,
    pub y: OrbitIterate,
    pub sign: i8,
    pub m_u: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuliInput {
    pub records: Vec<ModuliRecord>,
}

impl ModuliInput {
    pub fn validate(&self, set: &OrbitSet) -> Result<()> {
        for rec in &self.records {
            if rec.sign != 1 && rec.sign != -1 {
                return Err(CchError::InvalidModuli("sign must be +1 or -1".into()));
            }
            if rec.m_u == 0 {
                return Err(CchError::InvalidModuli("curve multiplicity must be >= 1".into()));
            }
            let g = rec.x.k.gcd(&rec.y.k);
            if g % rec.m_u != 0 {
                return Err(CchError::InvalidModuli(format!(
                    "curve multiplicity {} does not divide gcd({}, {})",
                    rec.m_u, rec.x.k, rec.y.k
                )));
            }
            let ox = set.orbit(rec.x.orbit)?;
            let oy = set.orbit(rec.y.orbit)?;
            if ox.cz_index(rec.x.k)? - oy.cz_index(rec.y.k)? != 1 {
                return Err(CchError::InvalidModuli(format!(
                    "record {} -> {} is not a rigid cylinder (index gap != 1)",
                    ox.name, oy.name
                )));
            }
            if set.class_of(ox, rec.x.k)? != set.class_of(oy, rec.y.k)? {
                return Err(CchError::InvalidModuli(format!(
                    "record {} -> {} crosses homotopy classes",
                    ox.name, oy.name
                )));
            }
        }
        Ok(())
    }
}

/// Diagonal multiplicity operator at one (class, degree): `x -> m(x) x`.
pub fn kappa_matrix(table: &GeneratorTable, class: u32, degree: i64) -> QMatrix {
    let diag: Vec<Rational> = table
        .generators_at(class, degree)
        .iter()
        .map(|g| Rational::from_integer(BigInt::from(g.multiplicity())))
        .collect();
    QMatrix::identity_scaled(&diag)
}

/// The sign-over-multiplicity count `delta` from degree `d` to `d - 1` in
/// one class: entry (y, x) sums sign / m_u over matching records. Records
/// with a bad endpoint contribute nothing (the signed end counts cancel);
/// records whose good endpoint is missing from the table indicate an
/// action or degree cap mismatch and are an error.
pub fn delta_matrix(
    set: &OrbitSet,
    table: &GeneratorTable,
    moduli: &ModuliInput,
    class: u32,
    degree: i64,
) -> Result<QMatrix> {
    let sources = table.generators_at(class, degree);
    let targets = table.generators_at(class, degree - 1);
    let mut m = QMatrix::zeros(targets.len(), sources.len());
    for rec in &moduli.records {
        let ox = set.orbit(rec.x.orbit)?;
        let oy = set.orbit(rec.y.orbit)?;
        if ox.is_bad(rec.x.k)? || oy.is_bad(rec.y.k)? {
            continue;
        }
        if set.class_of(ox, rec.x.k)? != class || ox.grading(rec.x.k, 2)? != degree {
            continue;
        }
        let col = table.position(class, degree, &rec.x).ok_or_else(|| {
            CchError::GeneratorMissing {
                orbit: ox.name.clone(),
                k: rec.x.k,
                reason: "record source not in generator table (cap mismatch)".into(),
            }
        })?;
        let row = table.position(class, degree - 1, &rec.y).ok_or_else(|| {
            CchError::GeneratorMissing {
                orbit: oy.name.clone(),
                k: rec.y.k,
                reason: "record target not in generator table (cap mismatch)".into(),
            }
        })?;
        let w = Rational::new(BigInt::from(rec.sign as i64), BigInt::from(rec.m_u));
        m.add_to(row, col, &w);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Minus,
    Plus,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Minus => "minus",
            Variant::Plus => "plus",
        })
    }
}

/// The assembled degree -1 maps per class and per degree.
#[derive(Debug, Clone)]
pub struct GradedMatrixComplex {
    pub table: GeneratorTable,
    pub variant: Variant,
    /// Map from degree d to d - 1 in each class, for deg_min < d <= deg_max.
    pub maps: BTreeMap<(u32, i64), QMatrix>,
}

/// Assembles the chosen differential. Every entry is checked to be an
/// integer (the curve-multiplicity weight always divides out), and when all
/// records join ends of equal multiplicity the two variants are checked to
/// coincide.
pub fn differential(
    set: &OrbitSet,
    table: &GeneratorTable,
    moduli: &ModuliInput,
    variant: Variant,
) -> Result<GradedMatrixComplex> {
    moduli.validate(set)?;
    let mut maps = BTreeMap::new();
    let uniform_multiplicity = moduli.records.iter().all(|r| r.x.k == r.y.k);
    for (&class, degrees) in &table.classes {
        let all_degrees: Vec<i64> = degrees.keys().copied().collect();
        for &d in &all_degrees {
            if d <= table.deg_min {
                continue;
            }
            let delta = delta_matrix(set, table, moduli, class, d)?;
            let minus = kappa_matrix(table, class, d - 1).mul(&delta);
            let plus = delta.mul(&kappa_matrix(table, class, d));
            for (r, c, v) in minus.entries().chain(plus.entries()) {
                if !v.is_integer() {
                    return Err(CchError::InternalAssertion(format!(
                        "non-integral differential entry {v} at ({r}, {c}), class {class}, degree {d}"
                    )));
                }
            }
            if uniform_multiplicity && minus != plus {
                return Err(CchError::InternalAssertion(
                    "variants disagree despite uniform end multiplicities".into(),
                ));
            }
            let chosen = match variant {
                Variant::Minus => minus,
                Variant::Plus => plus,
            };
            maps.insert((class, d), chosen);
        }
    }
    Ok(GradedMatrixComplex { table: table.clone(), variant, maps })
}

/// Location of a nonzero entry of a squared differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareWitness {
    pub class: u32,
    pub degree: i64,
    pub from: String,
    pub to: String,
    pub value: Rational,
}

/// Checks that consecutive maps compose to zero.
pub fn check_d_squared(complex: &GradedMatrixComplex) -> (bool, Option<SquareWitness>) {
    for ((class, d), upper) in &complex.maps {
        let Some(lower) = complex.maps.get(&(*class, d - 1)) else { continue };
        let square = lower.mul(upper);
        if let Some((r, c, v)) = square.first_nonzero() {
            let from = complex.table.generators_at(*class, *d)[c].label();
            let to = complex.table.generators_at(*class, d - 2)[r].label();
            return (false, Some(SquareWitness { class: *class, degree: *d, from, to, value: v }));
        }
    }
    (true, None)
}

/// Homology rank at one class and degree, with a flag for window-edge
/// degrees where one of the adjacent maps is truncated away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankEntry {
    pub rank: usize,
    pub edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyRanks {
    pub deg_min: i64,
    pub deg_max: i64,
    /// (class, degree) -> rank; degrees with no generators are omitted.
    pub ranks: BTreeMap<(u32, i64), RankEntry>,
}

/// Computes homology ranks over the window. Requires the differential to
/// square to zero.
pub fn homology(complex: &GradedMatrixComplex, deg_min: i64, deg_max: i64) -> Result<HomologyRanks> {
    let (ok, witness) = check_d_squared(complex);
    if !ok {
        let _ = witness;
        return Err(CchError::NotAComplex);
    }
    let mut ranks = BTreeMap::new();
    for (&class, degrees) in &complex.table.classes {
        for (&d, gens) in degrees {
            if d < deg_min || d > deg_max || gens.is_empty() {
                continue;
            }
            let dim = gens.len();
            let out_rank = if d > complex.table.deg_min {
                complex.maps.get(&(class, d)).map(|m| m.rank()).unwrap_or(0)
            } else {
                0
            };
            let in_rank = if d < complex.table.deg_max {
                complex.maps.get(&(class, d + 1)).map(|m| m.rank()).unwrap_or(0)
            } else {
                0
            };
            let rank = dim - out_rank - in_rank;
            let edge = d == complex.table.deg_min || d == complex.table.deg_max;
            ranks.insert((class, d), RankEntry { rank, edge });
        }
    }
    Ok(HomologyRanks { deg_min, deg_max, ranks })
}

/// End count of the gluing of two cylinders of multiplicities `m_u`, `m_v`
/// along an orbit of multiplicity `m_y`: the glued configuration has
/// `m_y / lcm(m_u, m_v)` ends, each of multiplicity `gcd(m_u, m_v)`.
pub fn gluing_end_count(m_y: u32, m_u: u32, m_v: u32) -> Result<(u32, u32)> {
    if m_u == 0 || m_v == 0 || m_y % m_u != 0 || m_y % m_v != 0 {
        return Err(CchError::InvalidArgument(format!(
            "multiplicities {m_u}, {m_v} must divide {m_y}"
        )));
    }
    Ok((m_y / m_u.lcm(&m_v), m_u.gcd(&m_v)))
}

/// Checks the boundary-point count between `x` and `z` (index gap 2): the
/// weighted sum over broken pairs through good intermediate orbits equals
/// the (z, x) entry of delta kappa delta, and the constructed signed end
/// counts through bad intermediates cancel to zero exactly.
pub fn boundary_count_identity(
    set: &OrbitSet,
    table: &GeneratorTable,
    moduli: &ModuliInput,
    x: &OrbitIterate,
    z: &OrbitIterate,
) -> Result<bool> {
    let ox = set.orbit(x.orbit)?;
    let oz = set.orbit(z.orbit)?;
    let mu_x = ox.cz_index(x.k)?;
    if mu_x - oz.cz_index(z.k)? != 2 {
        return Err(CchError::InvalidArgument("endpoints must have index gap 2".into()));
    }
    let class = set.class_of(ox, x.k)?;
    if class != set.class_of(oz, z.k)? {
        return Err(CchError::InvalidArgument("endpoints must share a homotopy class".into()));
    }
    let degree = ox.grading(x.k, 2)?;

    let mut pair_sum = Rational::zero();
    for u in &moduli.records {
        if u.x != *x {
            continue;
        }
        for v in &moduli.records {
            if v.x != u.y || v.y != *z {
                continue;
            }
            let oy = set.orbit(u.y.orbit)?;
            let m_y = u.y.k;
            let sign_pair = (u.sign as i64) * (v.sign as i64);
            if oy.is_bad(m_y)? {
                // a bad orbit is an even cover; the m_y glued ends come in
                // sign-canceling halves, so this pair contributes nothing
                if m_y % 2 != 0 {
                    return Err(CchError::InternalAssertion(format!(
                        "bad orbit {} has odd multiplicity {}",
                        oy.name, m_y
                    )));
                }
                let mut signed_ends = 0i64;
                for e in 0..m_y {
                    signed_ends += if e < m_y / 2 { sign_pair } else { -sign_pair };
                }
                if signed_ends != 0 {
                    return Err(CchError::InternalAssertion(
                        "signed end count through a bad orbit did not cancel".into(),
                    ));
                }
                continue;
            }
            let w = Rational::new(
                BigInt::from(sign_pair * m_y as i64),
                BigInt::from(u.m_u as i64 * v.m_u as i64),
            );
            pair_sum += w;
        }
    }

    let delta_top = delta_matrix(set, table, moduli, class, degree)?;
    let kappa_mid = kappa_matrix(table, class, degree - 1);
    let delta_bot = delta_matrix(set, table, moduli, class, degree - 1)?;
    let composite = delta_bot.mul(&kappa_mid.mul(&delta_top));
    let col = table.position(class, degree, x).ok_or_else(|| CchError::GeneratorMissing {
        orbit: ox.name.clone(),
        k: x.k,
        reason: "source not in generator table".into(),
    })?;
    let row = table.position(class, degree - 2, z).ok_or_else(|| CchError::GeneratorMissing {
        orbit: oz.name.clone(),
        k: z.k,
        reason: "target not in generator table".into(),
    })?;
    Ok(composite.get(row, col) == &pair_sum)
}

/// Verifies the multiplicity operator intertwines the two differentials:
/// kappa composed with the plus variant equals the minus variant composed
/// with kappa, degree by degree.
pub fn kappa_chain_map_check(
    set: &OrbitSet,
    table: &GeneratorTable,
    moduli: &ModuliInput,
) -> Result<bool> {
    let minus = differential(set, table, moduli, Variant::Minus)?;
    let plus = differential(set, table, moduli, Variant::Plus)?;
    for ((class, d), plus_map) in &plus.maps {
        let minus_map = &minus.maps[&(*class, *d)];
        let lhs = kappa_matrix(table, *class, d - 1).mul(plus_map);
        let rhs = minus_map.mul(&kappa_matrix(table, *class, *d));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scalar weight of one record in the chosen differential: sign times
/// m(y) / m(u) for the minus variant, sign times m(x) / m(u) for plus.
pub fn record_weight(rec: &ModuliRecord, variant: Variant) -> Rational {
    let m = match variant {
        Variant::Minus => rec.y.k,
        Variant::Plus => rec.x.k,
    };
    Rational::new(BigInt::from(rec.sign as i64 * m as i64), BigInt::from(rec.m_u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::FreeHomotopyModel;
    use crate::orbit::{ratio, OrbitId, RotationNumber, SimpleOrbit};

    /// mu ladder: t (mu 5), m (mu 4, positive hyperbolic), z (mu 3).
    fn ladder_set() -> OrbitSet {
        let t = SimpleOrbit::elliptic("t", RotationNumber::minus_eps(ratio(3, 1)), ratio(3, 1), 0)
            .unwrap();
        let m = SimpleOrbit::positive_hyperbolic("m", ratio(2, 1), ratio(2, 1), 0).unwrap();
        let z = SimpleOrbit::elliptic("z", RotationNumber::minus_eps(ratio(2, 1)), ratio(1, 1), 0)
            .unwrap();
        OrbitSet::new(vec![t, m, z], FreeHomotopyModel::Trivial, Some(ratio(3, 1))).unwrap()
    }

    fn it(orbit: usize, k: u32) -> OrbitIterate {
        OrbitIterate::new(OrbitId(orbit), k)
    }

    #[test]
    fn generator_table_excludes_bad_orbits() {
        let n = SimpleOrbit::negative_hyperbolic("n", ratio(1, 2), ratio(1, 1), 0).unwrap();
        let set = OrbitSet::new(vec![n], FreeHomotopyModel::Trivial, Some(ratio(10, 1))).unwrap();
        let table = build_generators(&set, None, 0, 10).unwrap();
        // mu(n^k) = k, grading k - 1; even k are bad
        let ks: Vec<u32> = table.all().map(|g| g.iterate.k).collect();
        assert_eq!(ks, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn empty_set_empty_table() {
        let set = OrbitSet::new(vec![], FreeHomotopyModel::Trivial, Some(ratio(1, 1))).unwrap();
        let table = build_generators(&set, None, 0, 10).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn delta_entries_accumulate_and_cancel() {
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let x = it(0, 1);
        let y = it(1, 1);
        let one = ModuliInput { records: vec![ModuliRecord { x, y, sign: 1, m_u: 1 }] };
        let d = delta_matrix(&set, &table, &one, 0, 4).unwrap();
        let col = table.position(0, 4, &x).unwrap();
        let row = table.position(0, 3, &y).unwrap();
        assert_eq!(d.get(row, col), &ratio(1, 1));

        let cancel = ModuliInput {
            records: vec![
                ModuliRecord { x, y, sign: 1, m_u: 1 },
                ModuliRecord { x, y, sign: -1, m_u: 1 },
            ],
        };
        let d = delta_matrix(&set, &table, &cancel, 0, 4).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn differential_weights() {
        // x = t^1 (mu 5) -> y = m^1 (mu 4), multiplicities 1 and 1
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let moduli = ModuliInput {
            records: vec![ModuliRecord { x: it(0, 1), y: it(1, 1), sign: 1, m_u: 1 }],
        };
        let minus = differential(&set, &table, &moduli, Variant::Minus).unwrap();
        let plus = differential(&set, &table, &moduli, Variant::Plus).unwrap();
        let col = table.position(0, 4, &it(0, 1)).unwrap();
        let row = table.position(0, 3, &it(1, 1)).unwrap();
        assert_eq!(minus.maps[&(0, 4)].get(row, col), &ratio(1, 1));
        assert_eq!(plus.maps[&(0, 4)].get(row, col), &ratio(1, 1));
        assert_eq!(record_weight(&moduli.records[0], Variant::Minus), ratio(1, 1));
    }

    #[test]
    fn unbalanced_breaking_fails_d_squared() {
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let moduli = ModuliInput {
            records: vec![
                ModuliRecord { x: it(0, 1), y: it(1, 1), sign: 1, m_u: 1 },
                ModuliRecord { x: it(1, 1), y: it(2, 1), sign: 1, m_u: 1 },
            ],
        };
        let complex = differential(&set, &table, &moduli, Variant::Minus).unwrap();
        let (ok, witness) = check_d_squared(&complex);
        assert!(!ok);
        let w = witness.unwrap();
        assert_eq!(w.from, "t");
        assert_eq!(w.to, "z");
        assert!(matches!(homology(&complex, 0, 10), Err(CchError::NotAComplex)));
    }

    #[test]
    fn balanced_breaking_passes_and_has_expected_homology() {
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let moduli = ModuliInput {
            records: vec![
                ModuliRecord { x: it(0, 1), y: it(1, 1), sign: 1, m_u: 1 },
                ModuliRecord { x: it(1, 1), y: it(2, 1), sign: 1, m_u: 1 },
                ModuliRecord { x: it(1, 1), y: it(2, 1), sign: -1, m_u: 1 },
            ],
        };
        let complex = differential(&set, &table, &moduli, Variant::Minus).unwrap();
        assert!(check_d_squared(&complex).0);
        let ranks = homology(&complex, 0, 10).unwrap();
        // d(t) = m kills the degree-4/degree-3 pair; z survives at degree 2
        assert_eq!(ranks.ranks[&(0, 2)].rank, 1);
        assert_eq!(ranks.ranks[&(0, 3)].rank, 0);
        assert_eq!(ranks.ranks[&(0, 4)].rank, 0);
    }

    #[test]
    fn zero_differential_homology_counts_generators() {
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let complex =
            differential(&set, &table, &ModuliInput::default(), Variant::Minus).unwrap();
        let ranks = homology(&complex, 0, 10).unwrap();
        assert_eq!(ranks.ranks[&(0, 4)].rank, 1);
        assert!(!ranks.ranks[&(0, 4)].edge);
    }

    #[test]
    fn gluing_end_counts() {
        assert_eq!(gluing_end_count(6, 2, 3).unwrap(), (1, 1));
        assert_eq!(gluing_end_count(4, 2, 2).unwrap(), (2, 2));
        assert_eq!(gluing_end_count(1, 1, 1).unwrap(), (1, 1));
        assert!(gluing_end_count(4, 3, 2).is_err());
    }

    #[test]
    fn boundary_identity_simple_pair() {
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let moduli = ModuliInput {
            records: vec![
                ModuliRecord { x: it(0, 1), y: it(1, 1), sign: 1, m_u: 1 },
                ModuliRecord { x: it(1, 1), y: it(2, 1), sign: 1, m_u: 1 },
            ],
        };
        assert!(boundary_count_identity(&set, &table, &moduli, &it(0, 1), &it(2, 1)).unwrap());
    }

    #[test]
    fn boundary_identity_through_bad_orbit() {
        // ladder 7 -> 6 -> 5 with the middle orbit the bad double cover of
        // a negative hyperbolic orbit
        let t = SimpleOrbit::elliptic("t", RotationNumber::minus_eps(ratio(4, 1)), ratio(5, 1), 0)
            .unwrap();
        let m = SimpleOrbit::negative_hyperbolic("m", ratio(3, 2), ratio(2, 1), 0).unwrap();
        let z = SimpleOrbit::elliptic("z", RotationNumber::minus_eps(ratio(3, 1)), ratio(1, 1), 0)
            .unwrap();
        let set =
            OrbitSet::new(vec![t, m, z], FreeHomotopyModel::Trivial, Some(ratio(5, 1))).unwrap();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let moduli = ModuliInput {
            records: vec![
                ModuliRecord { x: it(0, 1), y: it(1, 2), sign: 1, m_u: 1 },
                ModuliRecord { x: it(1, 2), y: it(2, 1), sign: 1, m_u: 1 },
            ],
        };
        // both sides are zero: delta skips the bad orbit, and the signed
        // end construction cancels
        assert!(boundary_count_identity(&set, &table, &moduli, &it(0, 1), &it(2, 1)).unwrap());
        let complex = differential(&set, &table, &moduli, Variant::Minus).unwrap();
        assert!(check_d_squared(&complex).0);
    }

    #[test]
    fn kappa_intertwines_variants() {
        let set = ladder_set();
        let table = build_generators(&set, None, 0, 10).unwrap();
        let moduli = ModuliInput {
            records: vec![
                ModuliRecord { x: it(0, 1), y: it(1, 1), sign: 1, m_u: 1 },
                ModuliRecord { x: it(1, 1), y: it(2, 1), sign: -1, m_u: 1 },
            ],
        };
        assert!(kappa_chain_map_check(&set, &table, &moduli).unwrap());
    }

    #[test]
    fn moduli_validation_rejects_nonsense() {
        let set = ladder_set();
        // index gap 2, not a rigid cylinder
        let bad_gap = ModuliInput {
            records: vec![ModuliRecord { x: it(0, 1), y: it(2, 1), sign: 1, m_u: 1 }],
        };
        assert!(bad_gap.validate(&set).is_err());
        // multiplicity does not divide the ends
        let bad_mult = ModuliInput {
            records: vec![ModuliRecord { x: it(0, 1), y: it(1, 1), sign: 1, m_u: 2 }],
        };
        assert!(bad_mult.validate(&set).is_err());
    }
}
