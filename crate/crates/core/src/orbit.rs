//! Conley-Zehnder index machinery for simple Reeb orbits and their iterates.
//!
//! Rotation numbers are stored as an exact rational together with an optional
//! infinitesimal offset `s * eps` with `s` in `{-1, 0, +1}`. This makes the
//! floor and ceiling of every integer multiple exactly computable, which is
//! all the index formulas ever need. No floating point is used anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

use crate::error::{CchError, Result};

/// Shared exact rational type.
pub type Rational = BigRational;

/// Build a rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Infinitesimal offset attached to a rotation number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Offset {
    /// theta = r - eps
    MinusEps,
    /// theta = r exactly
    Exact,
    /// theta = r + eps
    PlusEps,
}

/// Rotation number `theta = r + s*eps` with `r` rational and `eps` an
/// infinitesimal positive quantity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationNumber {
    r: Rational,
    offset: Offset,
}

impl RotationNumber {
    pub fn exact(r: Rational) -> Self {
        RotationNumber { r, offset: Offset::Exact }
    }

    pub fn plus_eps(r: Rational) -> Self {
        RotationNumber { r, offset: Offset::PlusEps }
    }

    pub fn minus_eps(r: Rational) -> Self {
        RotationNumber { r, offset: Offset::MinusEps }
    }

    pub fn new(r: Rational, offset: Offset) -> Self {
        RotationNumber { r, offset }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.r
    }

    pub fn offset(&self) -> Offset {
        self.offset
    }

    /// Exact `floor(k * theta)` for a positive integer `k`.
    pub fn floor_mul(&self, k: u32) -> BigInt {
        let kr = &self.r * BigInt::from(k);
        let fl = kr.floor().to_integer();
        match self.offset {
            Offset::Exact | Offset::PlusEps => fl,
            Offset::MinusEps => {
                if kr.is_integer() {
                    fl - 1
                } else {
                    fl
                }
            }
        }
    }

    /// Exact `ceil(k * theta)` for a positive integer `k`.
    pub fn ceil_mul(&self, k: u32) -> BigInt {
        let kr = &self.r * BigInt::from(k);
        let ce = kr.ceil().to_integer();
        match self.offset {
            Offset::Exact | Offset::MinusEps => ce,
            Offset::PlusEps => {
                if kr.is_integer() {
                    ce + 1
                } else {
                    ce
                }
            }
        }
    }

    /// `k * theta` is an exact integer (only possible with no offset).
    pub fn is_integer_multiple(&self, k: u32) -> bool {
        self.offset == Offset::Exact && (&self.r * BigInt::from(k)).is_integer()
    }

    /// Reciprocal of the rational part with the offset negated; used for the
    /// ellipsoid reciprocity check `phi2 = 1/phi1 - s*eps`.
    pub fn reciprocal(&self) -> Option<RotationNumber> {
        if self.r.is_zero() {
            return None;
        }
        let offset = match self.offset {
            Offset::MinusEps => Offset::PlusEps,
            Offset::Exact => Offset::Exact,
            Offset::PlusEps => Offset::MinusEps,
        };
        Some(RotationNumber { r: self.r.recip(), offset })
    }
}

impl std::fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.offset {
            Offset::MinusEps => write!(f, "{}-eps", self.r),
            Offset::Exact => write!(f, "{}", self.r),
            Offset::PlusEps => write!(f, "{}+eps", self.r),
        }
    }
}

/// Trichotomy of nondegenerate Reeb orbits in dimension 3, plus `Explicit`
/// for orbits whose index iteration is given by a periodic affine table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitType {
    Elliptic,
    PositiveHyperbolic,
    NegativeHyperbolic,
    Explicit,
}

impl std::fmt::Display for OrbitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OrbitType::Elliptic => "elliptic",
            OrbitType::PositiveHyperbolic => "positive_hyperbolic",
            OrbitType::NegativeHyperbolic => "negative_hyperbolic",
            OrbitType::Explicit => "explicit",
        };
        f.write_str(s)
    }
}

/// How the Conley-Zehnder index of the iterates is computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CzModel {
    /// `mu(gamma^k) = floor(k*theta) + ceil(k*theta)`.
    Rotation(RotationNumber),
    /// `mu(gamma^{l*N + c}) = residues[c] + increment * l`; the `c = 0` entry
    /// is used with `l >= 1`. `increment` must be even so the parity within a
    /// residue class is constant.
    PeriodicAffine {
        period: u32,
        residues: Vec<i64>,
        increment: i64,
    },
}

/// A simple (embedded) Reeb orbit germ: everything the index, grading and
/// action computations need, with no geometry attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleOrbit {
    pub name: String,
    pub orbit_type: OrbitType,
    pub cz: CzModel,
    pub action: Rational,
    pub homotopy_seed: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl SimpleOrbit {
    pub fn new(
        name: impl Into<String>,
        orbit_type: OrbitType,
        cz: CzModel,
        action: Rational,
        homotopy_seed: u32,
    ) -> Result<Self> {
        let orbit = SimpleOrbit { name: name.into(), orbit_type, cz, action, homotopy_seed };
        orbit.validate()?;
        Ok(orbit)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| {
            Err(CchError::InvalidOrbit { name: self.name.clone(), reason: reason.to_string() })
        };
        if !self.action.is_positive() {
            return fail("action must be positive");
        }
        match (&self.orbit_type, &self.cz) {
            (OrbitType::Elliptic, CzModel::Rotation(rot)) => {
                if rot.offset() == Offset::Exact {
                    return fail("elliptic rotation numbers need a nonzero infinitesimal offset");
                }
            }
            (OrbitType::PositiveHyperbolic, CzModel::Rotation(rot)) => {
                if rot.offset() != Offset::Exact || !rot.rational_part().is_integer() {
                    return fail("positive hyperbolic requires an exact integer rotation number");
                }
            }
            (OrbitType::NegativeHyperbolic, CzModel::Rotation(rot)) => {
                let twice = rot.rational_part() * BigInt::from(2);
                let odd_half = twice.is_integer()
                    && (twice.to_integer() % 2i32) != BigInt::zero()
                    && !rot.rational_part().is_integer();
                if rot.offset() != Offset::Exact || !odd_half {
                    return fail("negative hyperbolic requires an exact half-integer rotation number");
                }
            }
            (OrbitType::Explicit, CzModel::PeriodicAffine { period, residues, increment }) => {
                if *period == 0 {
                    return fail("periodic table needs period >= 1");
                }
                if residues.len() != *period as usize {
                    return fail("periodic table must have one residue entry per residue class");
                }
                if increment % 2 != 0 {
                    return fail("periodic table increment must be even");
                }
            }
            _ => return fail("orbit type does not match the index model"),
        }
        Ok(())
    }

    /// Conley-Zehnder index of the `k`-fold iterate.
    pub fn cz_index(&self, k: u32) -> Result<i64> {
        if k == 0 {
            return Err(CchError::InvalidIterate);
        }
        match &self.cz {
            CzModel::Rotation(rot) => {
                if self.orbit_type == OrbitType::Elliptic && rot.offset() == Offset::Exact {
                    return Err(CchError::IllPosedElliptic(self.name.clone()));
                }
                let mu = rot.floor_mul(k) + rot.ceil_mul(k);
                mu.to_i64().ok_or_else(|| {
                    CchError::InternalAssertion(format!("index overflow for {}^{}", self.name, k))
                })
            }
            CzModel::PeriodicAffine { period, residues, increment } => {
                let n = *period;
                let c = k % n;
                let l = (k / n) as i64;
                Ok(residues[c as usize] + increment * l)
            }
        }
    }

    /// SFT grading `mu + n - 3`; `n = 2` for contact 3-manifolds.
    pub fn grading(&self, k: u32, n: i64) -> Result<i64> {
        if n < 2 {
            return Err(CchError::UnsupportedDimension(n));
        }
        Ok(self.cz_index(k)? + n - 3)
    }

    /// Z/2 grading: parity of the Conley-Zehnder index, cross-checked on
    /// rotation models against the orbit-type rule (even iff the iterate is
    /// positive hyperbolic).
    pub fn parity_z2(&self, k: u32) -> Result<Parity> {
        let mu = self.cz_index(k)?;
        let from_index = if mu % 2 == 0 { Parity::Even } else { Parity::Odd };
        if let CzModel::Rotation(_) = &self.cz {
            let iterate_pos_hyp = match self.orbit_type {
                OrbitType::PositiveHyperbolic => true,
                OrbitType::NegativeHyperbolic => k % 2 == 0,
                _ => false,
            };
            let from_type = if iterate_pos_hyp { Parity::Even } else { Parity::Odd };
            if from_type != from_index {
                return Err(CchError::InternalAssertion(format!(
                    "parity mismatch for {}^{}: index gives {from_index}, type gives {from_type}",
                    self.name, k
                )));
            }
        }
        Ok(from_index)
    }

    /// Bad iff the index parity of the iterate differs from the simple orbit.
    /// In dimension 3 these are exactly the even covers of negative hyperbolic
    /// simple orbits; both characterizations are checked for rotation models.
    pub fn is_bad(&self, k: u32) -> Result<bool> {
        let diff = self.cz_index(k)? - self.cz_index(1)?;
        let by_parity = diff % 2 != 0;
        if let CzModel::Rotation(_) = &self.cz {
            let by_type = self.orbit_type == OrbitType::NegativeHyperbolic && k % 2 == 0;
            if by_parity != by_type {
                return Err(CchError::InternalAssertion(format!(
                    "bad-orbit characterizations disagree for {}^{}",
                    self.name, k
                )));
            }
        }
        Ok(by_parity)
    }

    /// Almost-linear growth window `(k*mu - k + 1, k*mu + k - 1)` around the
    /// iterated index; containment is asserted, and equality with `k*mu` is
    /// asserted for hyperbolic orbits.
    pub fn almost_linear_bounds(&self, k: u32) -> Result<(i64, i64)> {
        if !matches!(self.cz, CzModel::Rotation(_)) {
            return Err(CchError::InvalidArgument(
                "almost-linear bounds apply to rotation-model orbits only".into(),
            ));
        }
        let mu1 = self.cz_index(1)?;
        let muk = self.cz_index(k)?;
        let k = k as i64;
        let lower = k * mu1 - k + 1;
        let upper = k * mu1 + k - 1;
        if muk < lower || muk > upper {
            return Err(CchError::InternalAssertion(format!(
                "iterated index {} of {} escapes [{}, {}]",
                muk, self.name, lower, upper
            )));
        }
        if matches!(self.orbit_type, OrbitType::PositiveHyperbolic | OrbitType::NegativeHyperbolic)
            && muk != k * mu1
        {
            return Err(CchError::InternalAssertion(format!(
                "hyperbolic iteration of {} is not linear",
                self.name
            )));
        }
        Ok((lower, upper))
    }

    /// Symplectic action of the `k`-fold iterate.
    pub fn iterate_action(&self, k: u32) -> Result<Rational> {
        if k == 0 {
            return Err(CchError::InvalidIterate);
        }
        Ok(&self.action * BigInt::from(k))
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self.orbit_type, OrbitType::PositiveHyperbolic | OrbitType::NegativeHyperbolic)
    }
}

/// Convenience constructors for the three rotation-model orbit types.
impl SimpleOrbit {
    pub fn elliptic(
        name: impl Into<String>,
        theta: RotationNumber,
        action: Rational,
        seed: u32,
    ) -> Result<Self> {
        SimpleOrbit::new(name, OrbitType::Elliptic, CzModel::Rotation(theta), action, seed)
    }

    pub fn positive_hyperbolic(
        name: impl Into<String>,
        theta: Rational,
        action: Rational,
        seed: u32,
    ) -> Result<Self> {
        SimpleOrbit::new(
            name,
            OrbitType::PositiveHyperbolic,
            CzModel::Rotation(RotationNumber::exact(theta)),
            action,
            seed,
        )
    }

    pub fn negative_hyperbolic(
        name: impl Into<String>,
        theta: Rational,
        action: Rational,
        seed: u32,
    ) -> Result<Self> {
        SimpleOrbit::new(
            name,
            OrbitType::NegativeHyperbolic,
            CzModel::Rotation(RotationNumber::exact(theta)),
            action,
            seed,
        )
    }
}

/// Identifies a simple orbit inside an orbit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitId(pub usize);

/// A pair (simple orbit, cover multiplicity). The orbit multiplicity of the
/// iterate is `m(gamma^k) = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitIterate {
    pub orbit: OrbitId,
    pub k: u32,
}

impl OrbitIterate {
    pub fn new(orbit: OrbitId, k: u32) -> Self {
        OrbitIterate { orbit, k }
    }

    pub fn multiplicity(&self) -> u32 {
        self.k
    }
}
