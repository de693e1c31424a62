use std::collections::BTreeSet;

use elliptic_helix::classify::{
    classify_theta, dual_shares_theta, degree_construct, rank_solutions, realizable, theta_decompose, Realizability,
};
use elliptic_helix::hilbert::{euler_form, hilbert_table};
use elliptic_helix::ops::{normal_rank_pair, twist_between};
use elliptic_helix::spectral::SpectralData;
use elliptic_helix::{same_numerical_class, ExtendVerdict, QuadNum, Rat, Seed, Theta};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=24).prop_map(|(p, q)| Rat::new(p, q).unwrap())
}

fn quad_over(n: u64) -> impl Strategy<Value = QuadNum> {
    (rat(), rat()).prop_map(move |(a, c)| QuadNum::new(a, c, n))
}

fn quad_triple() -> impl Strategy<Value = (QuadNum, QuadNum, QuadNum)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(6), Just(21), Just(77)]
        .prop_flat_map(|n| (quad_over(n), quad_over(n), quad_over(n)))
}

fn any_seed() -> impl Strategy<Value = Seed> {
    (1i64..=15, 1i64..=15, -25i64..=25, -25i64..=25).prop_map(|(a, c, x, y)| Seed::new(a, c, x, y).unwrap())
}

fn generic_seed() -> impl Strategy<Value = Seed> {
    any_seed().prop_filter("extends with d > 2", |s| s.extendable() == ExtendVerdict::YesGeneric)
}

/// Generic seeds whose two bundles have coprime rank and degree.
fn simple_seed() -> impl Strategy<Value = Seed> {
    generic_seed().prop_filter("coprime entries", |s| {
        s.r_m1().gcd(s.d_m1()).is_one() && s.r_0().gcd(s.d_0()).is_one()
    })
}

fn theta_of(s: &Seed) -> QuadNum {
    s.theta().unwrap().finite().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quad_field_laws((x, y, z) in quad_triple()) {
        prop_assert_eq!(x.checked_add(&y).unwrap(), y.checked_add(&x).unwrap());
        prop_assert_eq!(x.checked_mul(&y).unwrap(), y.checked_mul(&x).unwrap());
        prop_assert_eq!(
            x.checked_add(&y).unwrap().checked_add(&z).unwrap(),
            x.checked_add(&y.checked_add(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.checked_mul(&y).unwrap().checked_mul(&z).unwrap(),
            x.checked_mul(&y.checked_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.checked_mul(&y.checked_add(&z).unwrap()).unwrap(),
            x.checked_mul(&y).unwrap().checked_add(&x.checked_mul(&z).unwrap()).unwrap()
        );
        prop_assert!(x.checked_sub(&x).unwrap().is_zero());
        if !x.is_zero() {
            prop_assert_eq!(x.checked_mul(&x.inv().unwrap()).unwrap(), QuadNum::from_int(1));
            prop_assert_eq!(y.checked_div(&x).unwrap().checked_mul(&x).unwrap(), y.clone());
        }
    }

    #[test]
    fn quad_sign_matches_float((x, y, _) in quad_triple()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!(x.neg().signum(), -x.signum());
        prop_assert_eq!(x.checked_mul(&y).unwrap().signum(), x.signum() * y.signum());
        let ord = x.cmp_value(&y).unwrap();
        prop_assert_eq!(y.cmp_value(&x).unwrap(), ord.reverse());
        prop_assert_eq!(ord == std::cmp::Ordering::Equal, x == y);
    }

    #[test]
    fn quad_text_round_trip((x, _, _) in quad_triple()) {
        let back: QuadNum = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn closed_form_matches_recurrence(s in generic_seed()) {
        let sp = SpectralData::of(&s).unwrap();
        for t in s.rank_deg_window(-6, 6).unwrap() {
            prop_assert_eq!(sp.rank_at(t.index).unwrap(), QuadNum::from_int(t.rank.clone()));
            prop_assert_eq!(sp.degree_at(t.index).unwrap(), QuadNum::from_int(t.degree.clone()));
        }
    }

    #[test]
    fn helix_terms_stay_ordered(s in generic_seed()) {
        let (d, big_d) = (s.det(), s.big_d());
        let theta = theta_of(&s);
        let terms = s.rank_deg_window(-30, 30).unwrap();
        for t in &terms {
            prop_assert!(t.rank.is_positive());
            // μ_n > θ.
            let slope = QuadNum::rational(Rat::from_int(t.degree.clone()) / Rat::from_int(t.rank.clone()));
            prop_assert_eq!(slope.checked_sub(&theta).unwrap().signum(), 1);
        }
        for w in terms.windows(2) {
            let next = Seed::new(w[0].rank.clone(), w[1].rank.clone(), w[0].degree.clone(), w[1].degree.clone()).unwrap();
            prop_assert_eq!(next.det(), d.clone());
            prop_assert_eq!(next.big_d(), big_d.clone());
        }
    }

    #[test]
    fn coprimality_propagates(s in simple_seed()) {
        for t in s.rank_deg_window(-15, 15).unwrap() {
            prop_assert!(t.rank.gcd(&t.degree).is_one(), "term {} of {:?}", t.index, s);
        }
    }

    #[test]
    fn operation_laws(s in generic_seed(), m in -6i64..=6, n in -6i64..=6, a in -30i64..=30, c in -30i64..=30) {
        prop_assert_eq!(s.shift(m).unwrap().shift(n).unwrap(), s.shift(m + n).unwrap());
        prop_assert_eq!(s.twist(&b(a)).twist(&b(c)), s.twist(&b(a + c)));
        prop_assert_eq!(s.shift(m).unwrap().twist(&b(a)), s.twist(&b(a)).shift(m).unwrap());
        prop_assert_eq!(s.dual().dual(), s.clone());
        prop_assert_eq!(s.shift(0).unwrap(), s.clone());
        prop_assert_eq!(s.dual().big_d(), s.big_d());
        prop_assert_eq!(s.dual().det(), s.det());
    }

    #[test]
    fn normalize_finds_the_minimum(s in generic_seed()) {
        let n = s.normalize().unwrap();
        prop_assert_eq!(s.shift(n.shift).unwrap(), n.seed.clone());
        prop_assert_eq!(n.seed.normalize().unwrap().seed, n.seed.clone());
        let (r_m1, r_0) = n.seed.ranks();
        let d = s.det();
        prop_assert!(r_0 <= r_m1 && r_m1 <= &((&d - 1) * r_0));
        for t in s.rank_deg_window(-25, 25).unwrap() {
            prop_assert!(&t.rank >= r_0);
        }
    }

    #[test]
    fn equivalence_is_decided(s in generic_seed(), n in -5i64..=5, a in -20i64..=20) {
        let t = s.shift(n).unwrap().twist(&b(a));
        let w = same_numerical_class(&s, &t, false).unwrap();
        let w = w.witness().expect("constructed in the same class");
        prop_assert_eq!(w.apply(&s).unwrap(), t.clone());
        let back = same_numerical_class(&t, &s, false).unwrap();
        prop_assert_eq!(back.witness().unwrap().apply(&t).unwrap(), s.clone());
        prop_assert!(same_numerical_class(&s, &s, false).unwrap().witness().is_some());
        prop_assert_eq!(twist_between(&s, &s.twist(&b(a))), Some(Rat::from_int(a)));
        let dw = same_numerical_class(&s, &s.dual(), true).unwrap();
        prop_assert_eq!(dw.witness().unwrap().apply(&s).unwrap(), s.dual());
    }

    #[test]
    fn half_twisted_theta_misses_the_class(s in generic_seed(), half in -20i64..=20) {
        let theta = theta_of(&s);
        let shifted = theta.add_rat(&Rat::new(2 * half + 1, 2).unwrap());
        let report = classify_theta(&s.det(), &Theta::Finite(shifted)).unwrap();
        for class in &report.classes {
            prop_assert!(same_numerical_class(&s, &class.seed, false).unwrap().witness().is_none());
        }
    }

    #[test]
    fn classify_finds_the_class_of_a_helix(s in simple_seed()) {
        let theta = s.theta().unwrap();
        let report = classify_theta(&s.det(), &theta).unwrap();
        prop_assert_eq!(report.big_d.clone(), s.big_d());
        let hits = report
            .classes
            .iter()
            .filter(|c| same_numerical_class(&s, &c.seed, false).unwrap().witness().is_some())
            .count();
        prop_assert_eq!(hits, 1);
        for c in &report.classes {
            prop_assert_eq!(c.seed.theta().unwrap(), theta.clone());
        }
    }

    #[test]
    fn dual_coincidence_is_half_integrality(s in generic_seed()) {
        let theta = theta_of(&s);
        let parts = theta_decompose(&Theta::Finite(theta.clone()), &s.det()).unwrap();
        let gap = theta_of(&s.dual()).checked_sub(&theta).unwrap();
        let integral = gap.is_rational() && gap.rational_part().is_integer();
        prop_assert_eq!(dual_shares_theta(&parts), integral);
    }

    #[test]
    fn degree_construct_meets_its_contract(d in 3i64..=40, r_m1 in 1i64..=60, r_0 in 1i64..=60) {
        let (d, r_m1, r_0) = (b(d), b(r_m1), b(r_0));
        match realizable(&d, &r_m1, &r_0) {
            Realizability::Yes => {
                let s = degree_construct(&d, &r_m1, &r_0).unwrap();
                prop_assert_eq!(s.ranks(), (&r_m1, &r_0));
                prop_assert_eq!(s.det(), d.clone());
                prop_assert!(s.r_m1().gcd(s.d_m1()).is_one() && s.r_0().gcd(s.d_0()).is_one());
            }
            _ => prop_assert!(degree_construct(&d, &r_m1, &r_0).is_err()),
        }
    }

    #[test]
    fn euler_form_is_antisymmetric(s in generic_seed(), i in -8i64..=8, j in -8i64..=8) {
        prop_assert_eq!(euler_form(&s, i, j).unwrap(), -euler_form(&s, j, i).unwrap());
        if j > i {
            prop_assert!(euler_form(&s, i, j).unwrap().is_positive());
        }
    }

    #[test]
    fn hilbert_rows_recur_and_grow(s in generic_seed()) {
        let t = hilbert_table(&s, 12).unwrap();
        let d = s.det();
        for i in 0..=12usize {
            for j in (i + 1)..12 {
                let (prev, cur, next) = (t.get(i, j - 1).unwrap(), t.get(i, j).unwrap(), t.get(i, j + 1).unwrap());
                prop_assert_eq!(next.clone(), &d * &cur - &prev);
                prop_assert!(next > cur);
            }
        }
    }

    #[test]
    fn seed_json_round_trip(s in any_seed()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: Seed = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}

/// Pairs in the minimality window, with the tie `((d−1)r, r) ~ (r, r)` folded.
fn brute_orbits(d: i64, big_d: i64) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for r_0 in 1..=20i64 {
        for r_m1 in r_0..=(d - 1) * r_0 {
            if d * r_m1 * r_0 - r_m1 * r_m1 - r_0 * r_0 == big_d && !(r_m1 == (d - 1) * r_0 && r_m1 != r_0) {
                out.insert((r_m1, r_0));
            }
        }
    }
    out
}

#[test]
fn rank_solutions_are_complete() {
    for d in 3..=12i64 {
        for big_d in 1..=200i64 {
            let orbits = rank_solutions(&b(d), &b(big_d)).unwrap();
            let got: BTreeSet<(i64, i64)> =
                orbits.iter().map(|o| (o.rep.0.clone().try_into().unwrap(), o.rep.1.clone().try_into().unwrap())).collect();
            assert_eq!(got.len(), orbits.len(), "duplicates at d = {d}, D = {big_d}");
            assert_eq!(got, brute_orbits(d, big_d), "d = {d}, D = {big_d}");
            for (k, o) in orbits.iter().enumerate() {
                let partner = &orbits[o.dual_partner];
                assert_eq!(orbits[o.dual_partner].dual_partner, k);
                assert_eq!(normal_rank_pair(&b(d), &o.rep.1, &o.rep.0).unwrap(), partner.rep);
                assert_eq!(o.gcd_bar, o.rep.0.gcd(&o.rep.1));
            }
        }
    }
}
