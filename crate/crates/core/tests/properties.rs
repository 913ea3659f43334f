use num::{BigInt, BigRational};
use proptest::prelude::*;

use sgf_core::factor::evaluate;
use sgf_core::invariants::{
    apery_set, catenary_degree, catenary_of_set, distance, length_set, max_length, min_length, omega, omega_bounded,
    scan, Column, ScanDomain, ScanOptions,
};
use sgf_core::oracles::{bullet_oracle, catenary_oracle, closing_cap, naive_factorizations};
use sgf_core::parallel::Execution;
use sgf_core::quasipoly::{cone_coordinates, fit_fixed, fit_search, Samples, TranslatedCone};
use sgf_core::{denumerant_table, factorizations, Element, Factorization, SemigroupPresentation};

/// Small numerical semigroups with minimal generators and gcd 1.
fn numerical() -> impl Strategy<Value = SemigroupPresentation> {
    prop::collection::btree_set(2u64..=16, 2..=4).prop_filter_map("not minimal or gcd > 1", |set| {
        let gens: Vec<u64> = set.into_iter().collect();
        SemigroupPresentation::numerical(&gens).ok().filter(|s| s.validate().is_empty())
    })
}

fn q(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorizations_evaluate_to_element(s in numerical(), n in 0u64..120) {
        let alpha = Element::numerical(n);
        let z = factorizations(&s, &alpha).unwrap();
        for f in z.iter() {
            prop_assert_eq!(evaluate(&s, f.exponents()).unwrap(), alpha.clone());
        }
        let mut sorted: Vec<_> = z.iter().cloned().collect();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), z.len());
    }

    #[test]
    fn production_matches_naive(s in numerical(), n in 0u64..120) {
        let alpha = Element::numerical(n);
        let mut a: Vec<Factorization> = factorizations(&s, &alpha).unwrap().iter().cloned().collect();
        let mut b: Vec<Factorization> = naive_factorizations(&s, &alpha).iter().cloned().collect();
        a.sort();
        b.sort();
        prop_assert_eq!(&a, &b);
        if !a.is_empty() {
            prop_assert_eq!(catenary_degree(&s, &alpha).unwrap(), catenary_oracle(&s, &alpha).unwrap());
        }
    }

    #[test]
    fn denumerants_match_counts(s in numerical()) {
        let table = denumerant_table(&s, 150).unwrap();
        for (n, d) in table.iter().enumerate() {
            let z = factorizations(&s, &Element::numerical(n as u64)).unwrap();
            prop_assert_eq!(d.clone(), num::BigUint::from(z.len()));
        }
    }

    #[test]
    fn omega_matches_bullets(s in numerical(), n in 0u64..60) {
        let alpha = Element::numerical(n);
        if let Ok(w) = omega(&s, &alpha) {
            let cap = closing_cap(&s, n).unwrap();
            if sgf_core::oracles::bullet_search_size(s.rank(), cap) <= 200_000 {
                prop_assert_eq!(w, bullet_oracle(&s, &alpha, cap).unwrap());
            }
        }
    }

    #[test]
    fn max_super_and_min_subadditive(s in numerical(), a in 0u64..90, b in 0u64..90) {
        let (x, y, xy) = (Element::numerical(a), Element::numerical(b), Element::numerical(a + b));
        if let (Ok(mx), Ok(my)) = (max_length(&s, &x), max_length(&s, &y)) {
            prop_assert!(max_length(&s, &xy).unwrap() >= mx + my);
            prop_assert!(min_length(&s, &xy).unwrap() <= min_length(&s, &x).unwrap() + min_length(&s, &y).unwrap());
        }
    }

    #[test]
    fn delta_gaps_sum_to_spread(s in numerical(), n in 0u64..150) {
        if let Ok(l) = length_set(&s, &Element::numerical(n)) {
            let sum: u64 = l.as_slice().windows(2).map(|w| w[1] - w[0]).sum();
            prop_assert_eq!(sum, l.max().unwrap() - l.min().unwrap());
            prop_assert!(l.delta().as_slice().iter().all(|&g| g > 0));
        }
    }

    #[test]
    fn translation_injects(s in numerical(), a in 0u64..100, b in 0u64..100) {
        let za = factorizations(&s, &Element::numerical(a)).unwrap();
        let zb = factorizations(&s, &Element::numerical(b)).unwrap();
        if !zb.is_empty() {
            prop_assert!(factorizations(&s, &Element::numerical(a + b)).unwrap().len() >= za.len());
        }
    }

    #[test]
    fn apery_of_a_generator_has_its_size(s in numerical()) {
        let gens = s.numerical_generators().unwrap();
        for (i, &g) in gens.iter().enumerate() {
            let ap = apery_set(&s, &[i]).unwrap();
            prop_assert_eq!(ap.len() as u64, g);
            let mut residues: Vec<u64> = ap.iter().map(|a| a % g).collect();
            residues.sort_unstable();
            prop_assert_eq!(residues, (0..g).collect::<Vec<_>>());
        }
    }

    #[test]
    fn distance_is_translation_invariant(
        a in prop::collection::vec(0u64..6, 3),
        b in prop::collection::vec(0u64..6, 3),
        c in prop::collection::vec(0u64..6, 3),
    ) {
        let shift = |x: &[u64]| Factorization::new(x.iter().zip(&c).map(|(p, q)| p + q).collect());
        let (fa, fb) = (Factorization::new(a.clone()), Factorization::new(b.clone()));
        prop_assert_eq!(distance(&fa, &fb).unwrap(), distance(&shift(&a), &shift(&b)).unwrap());
        prop_assert_eq!(distance(&fa, &fb).unwrap(), distance(&fb, &fa).unwrap());
    }

    #[test]
    fn sequential_and_parallel_scans_agree(s in numerical()) {
        let cols = [Column::ZCount, Column::Lengths, Column::Delta, Column::Catenary, Column::Omega];
        let dom = ScanDomain::Range { lo: 0, hi: 60 };
        let seq = scan(&s, &dom, &cols, ScanOptions { execution: Execution::Sequential, ..Default::default() }).unwrap();
        let par = scan(&s, &dom, &cols, ScanOptions { execution: Execution::Parallel, ..Default::default() }).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn fitted_quasipolynomials_are_minimal(
        slope in 1u64..5,
        residues in prop::collection::vec(0u64..7, 1..=6),
        onset in 0u64..10,
        noise in 1u64..50,
    ) {
        // f(n) = slope n + r(n mod p) for n >= onset, perturbed just before it
        let p = residues.len() as u64;
        let samples: Samples = (0..=onset + 12 * p)
            .map(|n| {
                let v = slope * n + residues[(n % p) as usize];
                (n, q(if n + 1 == onset { v + noise } else { v }))
            })
            .collect();
        let r = fit_search(&samples, 1, p).unwrap();
        prop_assert_eq!(r.onset, onset);
        prop_assert!(p.is_multiple_of(r.qp.period()));
        prop_assert_eq!(r.qp.constant_leading().cloned(), Some(q(slope)));
        // the reported period is least: no proper divisor fits from the onset
        for d in (1..r.qp.period()).filter(|d| r.qp.period().is_multiple_of(*d)) {
            prop_assert!(fit_fixed(&samples, 1, d, onset).is_err());
        }
        if onset > 0 {
            prop_assert!(fit_fixed(&samples, 1, r.qp.period(), onset - 1).is_err());
        }
    }

    #[test]
    fn cone_coordinates_round_trip(
        base in prop::collection::vec(0u64..5, 2),
        c in prop::collection::vec(0u64..8, 2),
    ) {
        let cone = TranslatedCone::free(&base, &[&[2, 1], &[1, 3]]).unwrap();
        let p = cone.point(&c);
        prop_assert_eq!(cone_coordinates(&cone, &p), Some(c));
    }
}

#[test]
fn catenary_of_set_is_deterministic() {
    let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
    for n in [60u64, 120, 181] {
        let z = factorizations(&s, &Element::numerical(n)).unwrap();
        assert_eq!(catenary_of_set(&z), catenary_of_set(&z.clone()));
        assert_eq!(catenary_of_set(&z), catenary_oracle(&s, &Element::numerical(n)).unwrap());
    }
}

#[test]
fn bounded_omega_matches_apery_on_numerical() {
    for gens in [&[6u64, 9, 20][..], &[2, 3]] {
        let s = SemigroupPresentation::numerical(gens).unwrap();
        for n in 0..=200u64 {
            let alpha = Element::numerical(n);
            let Ok(w) = omega(&s, &alpha) else { continue };
            let cap = closing_cap(&s, n).unwrap();
            assert_eq!(omega_bounded(&s, &alpha, cap).unwrap(), w, "n = {n}, gens {gens:?}");
        }
    }
}

#[test]
fn bounded_omega_matches_bullets_on_affine() {
    let s = SemigroupPresentation::affine(&[&[2, 1], &[1, 1], &[1, 2]]).unwrap();
    for x in 0..=4u64 {
        for y in 0..=4u64 {
            let alpha = Element::free(vec![x, y]);
            match omega_bounded(&s, &alpha, 8) {
                Ok(w) => assert_eq!(w, bullet_oracle(&s, &alpha, 8).unwrap(), "{alpha}"),
                Err(_) => assert!(naive_factorizations(&s, &alpha).is_empty()),
            }
        }
    }
}
