//! Randomized invariants over the object pools and the algebra layer.
//!
//! Each property asserts a law that must hold for every object, sampled
//! over pools of exhaustively enumerated small objects or over randomly
//! generated polynomials and series.

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;
use qtcatalan::affine::{
    from_affine_composition, semistandardize, standardize, standardize_via_bijection,
    to_affine_composition,
};
use qtcatalan::lattice::GridParams;
use qtcatalan::parking::{
    cyclic_shift, enumerate_frequency_tuples, enumerate_sspf, maxima_profile, FrequencyTuple,
    SemistandardParkingFunction,
};
use qtcatalan::polyring::{gessel_truncated, q_binomial, MultiPoly};
use qtcatalan::series::{exp_series, log_series, RationalSeries};
use qtcatalan::statistics::{codinv_inversions, codinv_laser, dinv, dinv_parking};
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Small coprime grids whose labeled-path enumerations stay tiny.
const GRIDS: &[(i64, i64)] = &[
    (1, 2),
    (2, 1),
    (2, 3),
    (3, 2),
    (3, 4),
    (4, 3),
    (2, 5),
    (5, 2),
    (3, 5),
    (5, 3),
    (4, 5),
    (2, 7),
];

fn sspf_pool() -> &'static Vec<SemistandardParkingFunction> {
    static POOL: OnceLock<Vec<SemistandardParkingFunction>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for &(m, n) in GRIDS {
            let grid = GridParams::new(m, n).unwrap();
            for r in 1..=3 {
                pool.extend(enumerate_sspf(&grid, r, None).unwrap());
            }
        }
        pool
    })
}

fn tuple_pool() -> &'static Vec<FrequencyTuple> {
    static POOL: OnceLock<Vec<FrequencyTuple>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for (m, n, r) in [
            (2, 3, 1),
            (3, 2, 2),
            (2, 3, 2),
            (3, 4, 1),
            (2, 5, 2),
            (4, 3, 2),
        ] {
            pool.extend(enumerate_frequency_tuples(m, n, r).unwrap());
        }
        pool
    })
}

/// A random polynomial with offset 0: a handful of terms with bounded
/// exponents and small signed coefficients.
fn arb_poly(rank: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (
            0i64..5,
            0i64..5,
            prop::collection::vec(0i64..4, rank),
            -9i64..=9,
        ),
        0..6,
    )
    .prop_map(move |terms| {
        let mut p = MultiPoly::zero(rank);
        for (eq, et, ex, c) in terms {
            p.add_term(eq, et, &ex, BigInt::from(c));
        }
        p
    })
}

/// A random truncated series of fixed order with zero constant term.
fn arb_series(order: usize) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec((-20i64..=20, 1i64..=9), order).prop_map(|pairs| {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(
            pairs
                .into_iter()
                .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))),
        );
        RationalSeries::from_coeffs(coeffs).unwrap()
    })
}

/// Independent oracle for the Gessel truncation: enumerate every word
/// over `[1, r]` directly and keep the weakly increasing ones whose
/// strict ascents cover `s`.
fn gessel_by_words(s: &BTreeSet<i64>, m: i64, r: i64) -> MultiPoly {
    let rank = r as usize;
    let len = m as usize;
    let mut total = MultiPoly::zero(rank);
    let mut word = vec![1i64; len];
    loop {
        if word.windows(2).all(|p| p[0] <= p[1])
            && s.iter().all(|&i| word[i as usize] > word[i as usize - 1])
        {
            let mut wt = vec![0i64; rank];
            for &v in &word {
                wt[(v - 1) as usize] += 1;
            }
            total.add_term(0, 0, &wt, BigInt::from(1));
        }
        let mut j = 0;
        loop {
            if j == len {
                return total;
            }
            if word[j] < r {
                word[j] += 1;
                for slot in word.iter_mut().take(j) {
                    *slot = 1;
                }
                break;
            }
            j += 1;
        }
    }
}

fn binomial(a: i64, b: i64) -> BigInt {
    let mut out = BigInt::from(1);
    for i in 0..b {
        out = out * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    out
}

proptest! {
    /// Window round trip: every labeled path maps to a stable window and
    /// back to itself.
    #[test]
    fn sspf_bijection_round_trips(idx in any::<prop::sample::Index>()) {
        let s = idx.get(sspf_pool());
        let f = to_affine_composition(s).unwrap();
        prop_assert!(f.is_n_stable(s.n()));
        let back = from_affine_composition(&f, s.n()).unwrap();
        prop_assert_eq!(&back, s);
    }

    /// The window inversion count and the laser count always agree, and
    /// dinv is its complement within `[0, (m-1)(n-1)/2]`.
    #[test]
    fn sspf_codinv_routes_agree(idx in any::<prop::sample::Index>()) {
        let s = idx.get(sspf_pool());
        let by_inversions = codinv_inversions(s).unwrap();
        let by_laser = codinv_laser(s).unwrap();
        prop_assert_eq!(by_inversions, by_laser);
        let max_area = s.path().grid().max_area();
        prop_assert!((0..=max_area).contains(&by_inversions));
        prop_assert_eq!(dinv(s).unwrap(), max_area - by_inversions);
    }

    /// Standardization by sorting and through the window factorization
    /// agree, semistandardizing back at the original weight restores the
    /// object, and dinv is blind to the labels' multiplicities.
    #[test]
    fn sspf_standardization_round_trips(idx in any::<prop::sample::Index>()) {
        let s = idx.get(sspf_pool());
        let p = standardize(s).unwrap();
        prop_assert_eq!(&standardize_via_bijection(s).unwrap(), &p);
        let back = semistandardize(&p, &s.weight()).unwrap();
        prop_assert_eq!(&back, s);
        prop_assert_eq!(dinv_parking(&p).unwrap(), dinv(s).unwrap());
    }

    /// Area boxes and path boxes cut the region under the diagonal into
    /// complementary halves.
    #[test]
    fn path_area_splits(idx in any::<prop::sample::Index>()) {
        let s = idx.get(sspf_pool());
        let stats = s.path().area_stats();
        prop_assert_eq!(stats.area, stats.area_boxes.len() as i64);
        prop_assert_eq!(stats.area + stats.coarea, s.path().grid().max_area());
        prop_assert_eq!(stats.area, s.area());
    }

    /// The cyclic shift acts with order dividing `n`, preserves the total
    /// size, and preserves the number of maxima.
    #[test]
    fn tuple_shift_invariants(idx in any::<prop::sample::Index>(), power in 1i64..6) {
        let t = idx.get(tuple_pool());
        let n = t.n();
        let mut full = t.clone();
        for _ in 0..n {
            full = cyclic_shift(&full, 1);
        }
        prop_assert_eq!(&full, t);
        prop_assert_eq!(&cyclic_shift(t, power), &cyclic_shift(&cyclic_shift(t, power - 1), 1));
        let shifted = cyclic_shift(t, power);
        let total: i64 = t.block_sums().iter().sum();
        prop_assert_eq!(shifted.block_sums().iter().sum::<i64>(), total);
        prop_assert_eq!(maxima_profile(&shifted).1.len(), maxima_profile(t).1.len());
    }

    /// Ring laws: associativity, commutativity, distributivity, additive
    /// inverse, and evaluation at all-ones as a ring homomorphism.
    #[test]
    fn poly_ring_laws(
        (a, b, c) in (0usize..3).prop_flat_map(|rank| {
            (arb_poly(rank), arb_poly(rank), arb_poly(rank))
        }),
    ) {
        prop_assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(
            (&a * &b).evaluate_all_ones(),
            a.evaluate_all_ones() * b.evaluate_all_ones()
        );
        prop_assert_eq!(
            (&a + &b).evaluate_all_ones(),
            a.evaluate_all_ones() + b.evaluate_all_ones()
        );
    }

    /// Exchanging q and t twice is the identity, the exchange respects
    /// products, and a monomial shift moves every coefficient in lockstep.
    #[test]
    fn poly_involutions_and_shifts(
        (a, b) in (0usize..3).prop_flat_map(|rank| (arb_poly(rank), arb_poly(rank))),
        dq in 0i64..4,
        dt in 0i64..4,
    ) {
        prop_assert_eq!(&a.swap_qt().swap_qt(), &a);
        prop_assert_eq!(&(&a * &b).swap_qt(), &(&a.swap_qt() * &b.swap_qt()));
        let moved = a.shifted(dq, dt);
        prop_assert_eq!(moved.num_terms(), a.num_terms());
        for (e, coeff) in a.terms() {
            let ex = e.exponents();
            prop_assert_eq!(
                &moved.coefficient(ex[0] + dq, ex[1] + dt, &ex[2..]),
                coeff
            );
        }
    }

    /// Serialization round trip through the JSON form.
    #[test]
    fn poly_json_round_trips(a in (0usize..3).prop_flat_map(arb_poly)) {
        let json = a.to_json().unwrap();
        prop_assert_eq!(&MultiPoly::from_json(&json).unwrap(), &a);
    }

    /// `log` undoes `exp` and `exp` undoes `log` on truncated series.
    #[test]
    fn series_exp_log_round_trips(s in arb_series(8)) {
        let e = exp_series(&s).unwrap();
        prop_assert_eq!(&log_series(&e).unwrap(), &s);
        let mut g = s.clone();
        g.set_coeff(0, BigRational::from_integer(BigInt::from(1)));
        prop_assert_eq!(&exp_series(&log_series(&g).unwrap()).unwrap(), &g);
    }

    /// The composition-based Gessel truncation matches a direct word
    /// enumeration, including vanishing whenever the descent set needs
    /// more strict steps than the variable count allows.
    #[test]
    fn gessel_matches_word_enumeration(m in 1i64..=8, r in 1i64..=3, bits in any::<u16>()) {
        let s: BTreeSet<i64> = (1..m).filter(|&i| bits >> (i - 1) & 1 == 1).collect();
        let fast = gessel_truncated(&s, m, r).unwrap();
        prop_assert_eq!(&fast, &gessel_by_words(&s, m, r));
        if s.len() >= r as usize {
            prop_assert!(fast.is_zero());
        }
    }

    /// q-binomials are symmetric and count subsets at q = 1.
    #[test]
    fn qbinomial_symmetry_and_count(a in 0i64..=10, cut in 0.0f64..=1.0) {
        let b = ((a as f64) * cut).round() as i64;
        let left = q_binomial(a, b).unwrap();
        prop_assert_eq!(&left, &q_binomial(a, a - b).unwrap());
        prop_assert_eq!(left.evaluate_all_ones(), binomial(a, b));
    }
}
