//! Property tests for the index iteration machinery: almost-linear growth,
//! parity, good/bad classification, and trivial-cylinder cover indices.

use num::One;
use proptest::prelude::*;

use cch_core::building::partitions;
use cch_core::index::trivial_cover_index;
use cch_core::orbit::{ratio, Offset, Rational, RotationNumber, SimpleOrbit};

fn arb_elliptic() -> impl Strategy<Value = SimpleOrbit> {
    (-320i64..=320, 1i64..=64, prop::bool::ANY).prop_map(|(num, den, plus)| {
        let offset = if plus { Offset::PlusEps } else { Offset::MinusEps };
        SimpleOrbit::elliptic(
            "e",
            RotationNumber::new(ratio(num, den), offset),
            Rational::one(),
            0,
        )
        .unwrap()
    })
}

fn arb_positive_hyperbolic() -> impl Strategy<Value = SimpleOrbit> {
    (-5i64..=5).prop_map(|theta| {
        SimpleOrbit::positive_hyperbolic("p", ratio(theta, 1), Rational::one(), 0).unwrap()
    })
}

fn arb_negative_hyperbolic() -> impl Strategy<Value = SimpleOrbit> {
    (-5i64..=5).prop_map(|m| {
        SimpleOrbit::negative_hyperbolic("n", ratio(2 * m + 1, 2), Rational::one(), 0).unwrap()
    })
}

fn arb_orbit() -> impl Strategy<Value = SimpleOrbit> {
    prop_oneof![arb_elliptic(), arb_positive_hyperbolic(), arb_negative_hyperbolic()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn almost_linear_containment(orbit in arb_orbit()) {
        let mu1 = orbit.cz_index(1).unwrap();
        for k in 1..=100u32 {
            let (lo, hi) = orbit.almost_linear_bounds(k).unwrap();
            let mu = orbit.cz_index(k).unwrap();
            prop_assert!(lo <= mu && mu <= hi);
            prop_assert_eq!(lo, k as i64 * mu1 - k as i64 + 1);
            prop_assert_eq!(hi, k as i64 * mu1 + k as i64 - 1);
            if orbit.is_hyperbolic() {
                prop_assert_eq!(mu, k as i64 * mu1);
            }
        }
    }

    #[test]
    fn parity_and_badness_agree_with_type_rules(orbit in arb_orbit()) {
        for k in 1..=50u32 {
            // both calls cross-check two computations internally
            orbit.parity_z2(k).unwrap();
            orbit.is_bad(k).unwrap();
            prop_assert_eq!(orbit.grading(k, 2).unwrap(), orbit.cz_index(k).unwrap() - 1);
        }
    }

    #[test]
    fn elliptic_index_is_monotone_for_positive_rotation(
        num in 1i64..=320, den in 1i64..=64, plus in prop::bool::ANY
    ) {
        let offset = if plus { Offset::PlusEps } else { Offset::MinusEps };
        let orbit = SimpleOrbit::elliptic(
            "e",
            RotationNumber::new(ratio(num, den), offset),
            Rational::one(),
            0,
        )
        .unwrap();
        let mut prev = orbit.cz_index(1).unwrap();
        for k in 2..=60u32 {
            let mu = orbit.cz_index(k).unwrap();
            prop_assert!(mu >= prev);
            prev = mu;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trivial_cylinder_covers_have_nonnegative_index(orbit in arb_orbit()) {
        for k in 1..=12u32 {
            for parts in partitions(k, k as usize) {
                let n = parts.len() as i64;
                let ind = trivial_cover_index(&orbit, &parts).unwrap();
                prop_assert!(ind >= 0);
                if orbit.is_hyperbolic() {
                    prop_assert_eq!(ind, n - 1);
                }
            }
        }
    }
}

#[test]
fn unbranched_covers_of_positive_index_cylinders_keep_positive_index() {
    // mu(top^k) - mu(bottom^k) >= 1 whenever mu(top) - mu(bottom) >= 1,
    // exhaustively over a grid of rotation orbits and k <= 10
    let mut orbits = Vec::new();
    for num in -12i64..=12 {
        for den in 1i64..=4 {
            for offset in [Offset::MinusEps, Offset::PlusEps] {
                orbits.push(
                    SimpleOrbit::elliptic(
                        "e",
                        RotationNumber::new(ratio(num, den), offset),
                        Rational::one(),
                        0,
                    )
                    .unwrap(),
                );
            }
        }
    }
    for theta in -5i64..=5 {
        orbits.push(
            SimpleOrbit::positive_hyperbolic("p", ratio(theta, 1), Rational::one(), 0).unwrap(),
        );
        orbits.push(
            SimpleOrbit::negative_hyperbolic("n", ratio(2 * theta + 1, 2), Rational::one(), 0)
                .unwrap(),
        );
    }
    let mut checked = 0u64;
    for top in &orbits {
        for bottom in &orbits {
            let d = top.cz_index(1).unwrap() - bottom.cz_index(1).unwrap();
            if d < 1 {
                continue;
            }
            for k in 1..=10u32 {
                let dk = top.cz_index(k).unwrap() - bottom.cz_index(k).unwrap();
                assert!(
                    dk >= 1,
                    "cover of an index-{d} cylinder dropped to index {dk} at degree {k}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
}
