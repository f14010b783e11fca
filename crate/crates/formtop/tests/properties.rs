use std::sync::Arc;

use proptest::prelude::*;

use formtop::core::{brute_force_way_below, classify, interpolate, sort_canonical, FinSubset, FiniteSite};
use formtop::examples::{birkhoff, random_site, spectral_site, Poset};
use formtop::located::{classify_subset, cut_to_located, enumerate_located, enumerate_points, located_to_cut};
use formtop::subtop::{closed_sub, kfit, open_sub, sub_cover_eq, sub_join, sub_leq, sub_meet, SubTopology};
use formtop::theory::{enumerate_models, present, presented_elem, GeometricTheory, LazySite, PRESENT_BOUND};

fn mask_set(site: &FiniteSite, m: u64) -> FinSubset {
    FinSubset::from_mask(m & ((1u64 << site.size()) - 1))
}

fn random_theory(seed: &[u64]) -> GeometricTheory {
    let n = 2 + (seed[0] % 3) as usize;
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut t = GeometricTheory::plain("random", &refs).unwrap();
    let full = (1u64 << n) - 1;
    for (i, &s) in seed[1..].iter().enumerate() {
        let ante = FinSubset::from_mask(s & full);
        let k = (s >> 32) % 3;
        let disj: Vec<FinSubset> = (0..k).map(|j| FinSubset::from_mask((s >> (8 + 6 * j)) & full)).collect();
        t.push_axiom(&format!("ax{i}"), ante.iter(), disj).unwrap();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn saturation_is_a_closure(seed: u64, u: u64, v: u64) {
        let s = random_site(seed, 6);
        let (u, v) = (mask_set(&s, u), mask_set(&s, v));
        let su = s.saturate(&u);
        prop_assert!(u.is_subset(&su));
        prop_assert_eq!(s.saturate(&su), su.clone());
        let uv = u.union(&v);
        prop_assert!(su.is_subset(&s.saturate(&uv)));
    }

    #[test]
    fn localisation_law(seed: u64, u: u64, v: u64) {
        let s = random_site(seed, 6);
        let (u, v) = (mask_set(&s, u), mask_set(&s, v));
        let both = s.saturate(&u).intersection(&s.saturate(&v));
        prop_assert_eq!(s.saturate(&s.down(&u, &v)), both);
    }

    #[test]
    fn way_below_matches_brute_force(seed: u64) {
        let s = random_site(seed, 6);
        for a in s.elems() {
            for b in s.elems() {
                prop_assert_eq!(s.way_below(a, b), brute_force_way_below(&s, a, b, 6).unwrap());
            }
        }
    }

    #[test]
    fn interpolation_and_bottom(seed: u64, u: u64, v: u64) {
        let s = random_site(seed, 6);
        let (u, v) = (mask_set(&s, u), mask_set(&s, v));
        if s.way_below_set(&u, &v) {
            let w = interpolate(&s, &u, &v).unwrap();
            prop_assert!(s.way_below_set(&u, &w) && s.way_below_set(&w, &v));
        } else {
            prop_assert!(interpolate(&s, &u, &v).is_err());
        }
        for a in s.elems() {
            if s.covers(a, &FinSubset::empty()) {
                prop_assert!(s.covers(a, &u));
            }
        }
    }

    #[test]
    fn located_cut_roundtrip(seed: u64) {
        let s = random_site(seed, 5);
        for v in enumerate_located(&s, 12).unwrap() {
            let flags = classify_subset(&s, &v).unwrap();
            prop_assert!(flags.located && flags.splitting);
            let cut = located_to_cut(&s, &v).unwrap();
            prop_assert_eq!(cut_to_located(&cut), v.clone());
            prop_assert_eq!(located_to_cut(&s, &cut_to_located(&cut)).unwrap(), cut);
        }
    }

    #[test]
    fn birkhoff_sites_are_spectral(k in 1usize..=4, pick: usize) {
        let posets = Poset::all_up_to_iso(k).unwrap();
        let p = &posets[pick % posets.len()];
        let s = spectral_site(&birkhoff(p).unwrap()).unwrap();
        let c = classify(&s);
        prop_assert_eq!(c.spectral, Some(true));
        prop_assert!(c.stably_compact());
        if c.stone == Some(true) {
            prop_assert!(c.compact && c.regular);
        }
        prop_assert_eq!(enumerate_points(&s, 16).unwrap().len(), k);
    }

    #[test]
    fn models_are_presented_points(seed in proptest::collection::vec(any::<u64>(), 2..6)) {
        let t = random_theory(&seed);
        let site = present(&t, PRESENT_BOUND).unwrap();
        let models = enumerate_models(&t, 22).unwrap();
        let mut from_points: Vec<FinSubset> = enumerate_points(&site, 16)
            .unwrap()
            .iter()
            .map(|p| p.iter().fold(FinSubset::empty(), |acc, a| acc.union(&FinSubset::from_mask(a as u64))))
            .collect();
        sort_canonical(&mut from_points);
        prop_assert_eq!(from_points, models);
    }

    #[test]
    fn lazy_agrees_with_presented(seed in proptest::collection::vec(any::<u64>(), 2..6), x: u64, goal in proptest::collection::vec(any::<u64>(), 0..3)) {
        let t = random_theory(&seed);
        let full = (1u64 << t.generator_count()) - 1;
        let site = present(&t, PRESENT_BOUND).unwrap();
        let lazy = LazySite::from_theory(Arc::new(t));
        let x = FinSubset::from_mask(x & full);
        let goal: Vec<FinSubset> = goal.iter().map(|g| FinSubset::from_mask(g & full)).collect();
        let gs = FinSubset::new(goal.iter().map(presented_elem));
        prop_assert_eq!(lazy.covers(&x, &goal), site.covers(presented_elem(&x), &gs));
    }

    #[test]
    fn subtopology_lattice_laws(seed: u64, picks in proptest::collection::vec(any::<u64>(), 3)) {
        let s = Arc::new(random_site(seed, 4));
        let make = |m: u64| -> SubTopology {
            let set = mask_set(&s, m >> 2);
            match m % 4 {
                0 => closed_sub(&s, &set).unwrap(),
                1 => open_sub(&s, &set).unwrap(),
                2 => kfit(&s, &set).unwrap(),
                _ => SubTopology::least(&s),
            }
        };
        let (x, y, z) = (make(picks[0]), make(picks[1]), make(picks[2]));
        prop_assert!(sub_leq(&x, &x).unwrap());
        if sub_leq(&x, &y).unwrap() && sub_leq(&y, &z).unwrap() {
            prop_assert!(sub_leq(&x, &z).unwrap());
        }
        let m = sub_meet(&[x.clone(), y.clone()]).unwrap();
        let j = sub_join(&x, &y).unwrap();
        prop_assert!(sub_leq(&m, &x).unwrap() && sub_leq(&m, &y).unwrap());
        prop_assert!(sub_leq(&x, &j).unwrap() && sub_leq(&y, &j).unwrap());
        if sub_leq(&z, &x).unwrap() && sub_leq(&z, &y).unwrap() {
            prop_assert!(sub_leq(&z, &m).unwrap());
        }
        if sub_leq(&x, &z).unwrap() && sub_leq(&y, &z).unwrap() {
            prop_assert!(sub_leq(&j, &z).unwrap());
        }
        let lhs = sub_join(&z, &m).unwrap();
        let rhs = sub_meet(&[sub_join(&z, &x).unwrap(), sub_join(&z, &y).unwrap()]).unwrap();
        prop_assert!(sub_cover_eq(&lhs, &rhs).unwrap());
    }
}
