use super::*;
use crate::core::{classify, OracleSite};

#[test]
fn poset_counts_up_to_iso() {
    let counts: Vec<usize> = (0..=4).map(|n| Poset::all_up_to_iso(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 16]);
}

#[test]
fn birkhoff_examples() {
    let d = birkhoff(&Poset::chain(2)).unwrap();
    assert_eq!(d.size(), 3);
    assert_eq!(prime_filters(&d).len(), 2);
    let b = birkhoff(&Poset::antichain(2)).unwrap();
    assert_eq!(b.size(), 4);
    assert_eq!(prime_filters(&b).len(), 2);
    let b8 = birkhoff(&Poset::antichain(3)).unwrap();
    assert_eq!(b8.size(), 8);
    assert_eq!(prime_filters(&b8).len(), 3);
    for p in (0..=3).flat_map(|n| Poset::all_up_to_iso(n).unwrap()) {
        let l = birkhoff(&p).unwrap();
        assert_eq!(prime_filters(&l), prime_filters_exhaustive(&l).unwrap());
        assert_eq!(prime_filters(&l).len(), p.size());
    }
}

#[test]
fn birkhoff_chain_matches_dl3() {
    let d = spectral_site(&birkhoff(&Poset::chain(2)).unwrap()).unwrap();
    let fixture = dl3();
    assert_eq!(d.size(), fixture.size());
    assert_eq!(d.axioms().len(), fixture.axioms().len());
    assert_eq!(d.order_pairs(), fixture.order_pairs());
}

#[test]
fn non_distributive_rejected() {
    let n5: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
    let err = DistLattice::from_order(n5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap_err();
    assert!(matches!(err, Error::Order(_)));
    let two_tops: Vec<String> = ["0", "x", "y"].iter().map(|s| s.to_string()).collect();
    assert!(DistLattice::from_order(two_tops, &[(0, 1), (0, 2)]).is_err());
}

#[test]
fn reduced_join_axioms_match_all_pairs() {
    for p in (0..=4).flat_map(|n| Poset::all_up_to_iso(n).unwrap()) {
        let l = birkhoff(&p).unwrap();
        let reduced = spectral_site(&l).unwrap();
        let full = spectral_site_all_pairs(&l).unwrap();
        for a in reduced.elems() {
            for b in reduced.elems() {
                let u = FinSubset::new([a, b]);
                assert_eq!(reduced.saturate(&u), full.saturate(&u));
            }
        }
        assert_eq!(reduced.saturate(&FinSubset::empty()), full.saturate(&FinSubset::empty()));
    }
}

#[test]
fn spectral_sites_classify() {
    for p in (0..=4).flat_map(|n| Poset::all_up_to_iso(n).unwrap()) {
        let site = spectral_site(&birkhoff(&p).unwrap()).unwrap();
        let c = classify(&site);
        assert_eq!(c.spectral, Some(true));
        assert!(c.stably_compact());
    }
    for n in 0..=3 {
        let anti = classify(&spectral_site(&birkhoff(&Poset::antichain(n)).unwrap()).unwrap());
        assert_eq!(anti.stone, Some(true));
    }
    for n in 2..=4 {
        let chain = classify(&spectral_site(&birkhoff(&Poset::chain(n)).unwrap()).unwrap());
        assert_eq!(chain.stone, Some(false));
    }
}

#[test]
fn pomega_truncation() {
    let p = pomega3();
    assert_eq!(p.size(), 8);
    assert_eq!(pomega_trunc(3).unwrap().names(), p.names());
    assert!(pomega_trunc(5).is_err());
    let top = p.elem("{}").unwrap();
    assert!(p.elems().all(|a| p.le(a, top)));
}

#[test]
fn oracle_examples() {
    let c = cantor_oracle();
    let e = c.parse("").unwrap();
    assert!(c.cover_fin(&e, &["0".into(), "1".into()]));
    assert!(!c.cover_fin(&e, &["0".into(), "10".into()]));
    assert!(c.cover_fin(&e, &["0".into(), "10".into(), "11".into()]));
    assert!(c.parse("012").is_err());
    let u = upper_reals_oracle();
    let one = u.parse("1").unwrap();
    assert!(!u.cover_fin(&one, &[u.parse("1/2").unwrap(), u.parse("3/4").unwrap()]));
    assert!(u.cover_fin(&one, &[u.parse("2/2").unwrap()]));
    assert!(!u.cover_fin(&one, &[]));
    assert!(u.parse("1/0").is_err());
    let q = u.parse("1/3").unwrap();
    for n in 0..6 {
        let small = u.wb_stage(&q, n);
        let big = u.wb_stage(&q, n + 1);
        assert!(small.iter().all(|x| big.contains(x)));
        assert!(big.iter().all(|x| *x < q && u.way_below_staged(x, &q, n + 1)));
    }
    assert!(u.way_below_staged(&u.parse("1/4").unwrap(), &q, 12));
}

#[test]
fn canonical_points() {
    let v = rational_located(parse_rational("1/3").unwrap());
    assert!(v(&parse_rational("1/2").unwrap()));
    assert!(!v(&parse_rational("1/4").unwrap()));
    assert!(full_spread()(&"0101".to_string()));
    let zeros = stream_point(|_| false);
    assert!(zeros(&"000".to_string()));
    assert!(!zeros(&"001".to_string()));
}
