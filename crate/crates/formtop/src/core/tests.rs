use super::*;
use crate::examples::{bool4, chain2, dl3, pomega3, tri};

fn s(site: &FiniteSite, xs: &[&str]) -> FinSubset {
    site.subset(xs).unwrap()
}

#[test]
fn localize_examples() {
    let t = tri();
    assert_eq!(t.axioms(), &[Axiom::new(0, FinSubset::new([1, 2]))]);
    // a ↓ {b, c} is empty in the discrete order
    assert_eq!(localize(&t, t.axioms()).unwrap(), vec![Axiom::new(0, FinSubset::empty())]);
    assert!(!t.is_localized());
    let b = bool4();
    let p = b.elem("p").unwrap();
    let loc = localize(&b, &[Axiom::new(b.elem("1").unwrap(), s(&b, &["p", "q"]))]).unwrap();
    assert!(loc.contains(&Axiom::new(p, s(&b, &["0", "p"]))));
    assert!(localize(&chain2(), &[]).unwrap().is_empty());
    assert!(b.check_localized());
    assert!(localize(&b, &[Axiom::new(9, FinSubset::empty())]).is_err());
}

#[test]
fn saturate_examples() {
    let c = chain2();
    assert_eq!(c.saturate(&s(&c, &["1"])), s(&c, &["0", "1"]));
    let t = tri();
    assert_eq!(t.saturate(&s(&t, &["b", "c"])), t.base());
    let b = bool4();
    assert_eq!(b.saturate(&s(&b, &["p", "q"])), b.base());
}

#[test]
fn covers_examples() {
    let c = chain2();
    assert!(c.covers(0, &s(&c, &["1"])));
    let d = dl3();
    assert!(!d.covers(d.elem("1").unwrap(), &s(&d, &["m"])));
    assert_eq!(d.saturate(&s(&d, &["m"])), s(&d, &["0", "m"]));
    let b = bool4();
    assert!(b.cover_eq(&s(&b, &["1"]), &s(&b, &["p", "q"])));
}

#[test]
fn down_examples() {
    let b = bool4();
    assert_eq!(b.down(&s(&b, &["p"]), &s(&b, &["q"])), s(&b, &["0"]));
    let c = chain2();
    assert_eq!(c.down(&s(&c, &["1"]), &s(&c, &["1"])), c.base());
    let d = dl3();
    assert!(d.down(&s(&d, &["m"]), &FinSubset::empty()).is_empty());
}

#[test]
fn way_below_examples() {
    let c = chain2();
    assert!(c.way_below(0, 1));
    assert!(!c.way_below(1, 0));
    assert!(brute_force_way_below(&c, 0, 1, BRUTE_FORCE_BOUND).unwrap());
    let t = tri();
    assert!(!brute_force_way_below(&t, 0, 1, BRUTE_FORCE_BOUND).unwrap());
    let d = dl3();
    let (m, one) = (d.elem("m").unwrap(), d.elem("1").unwrap());
    assert!(brute_force_way_below(&d, m, one, BRUTE_FORCE_BOUND).unwrap());
    let p = pomega3();
    assert!(p.elems().all(|a| p.way_below(a, a)));
    assert!(brute_force_way_below(&p, 0, 0, BRUTE_FORCE_BOUND).is_err());
}

#[test]
fn star_and_well_inside() {
    let b = bool4();
    assert_eq!(b.star(&s(&b, &["p"])), s(&b, &["0", "q"]));
    let p = b.elem("p").unwrap();
    assert!(b.well_inside(p, p));
    let d = dl3();
    let m = d.elem("m").unwrap();
    assert_eq!(d.star(&s(&d, &["m"])), s(&d, &["0"]));
    assert!(!d.well_inside(m, m));
    assert_eq!(d.star(&FinSubset::empty()), d.base());
}

#[test]
fn classify_examples() {
    let b = classify(&bool4());
    assert!(b.compact && b.regular && b.stably_locally_compact && b.finitary);
    assert_eq!(b.spectral, Some(true));
    assert_eq!(b.stone, Some(true));
    let d = classify(&dl3());
    assert!(d.compact && !d.regular);
    assert_eq!((d.spectral, d.stone), (Some(true), Some(false)));
    let p = classify(&pomega3());
    assert!(p.finitary);
    assert_eq!(p.spectral, None);
    assert_eq!(is_spectral(&chain2()), Err(crate::Error::NoMeetStructure));
}

#[test]
fn interpolate_examples() {
    let c = chain2();
    assert_eq!(interpolate(&c, &s(&c, &["0"]), &s(&c, &["1"])).unwrap(), s(&c, &["1"]));
    let d = dl3();
    assert_eq!(interpolate(&d, &s(&d, &["m"]), &s(&d, &["1"])).unwrap(), s(&d, &["1"]));
    let p = pomega3();
    let a0 = s(&p, &["{0}"]);
    assert_eq!(interpolate(&p, &a0, &a0).unwrap(), a0);
    assert!(interpolate(&d, &s(&d, &["1"]), &s(&d, &["m"])).is_err());
}

#[test]
fn preorder_closure_reported() {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let site = FiniteSite::new(names.clone(), &[(0, 1), (1, 2)], vec![], Localization::Apply).unwrap();
    assert!(site.closure_added());
    assert!(site.le(0, 2));
    let closed = FiniteSite::new(names, &[(0, 1), (1, 2), (0, 2)], vec![], Localization::Apply).unwrap();
    assert!(!closed.closure_added());
}

#[test]
fn meet_structure_validated() {
    assert!(chain2().with_meet(0, &[(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)]).is_err());
    assert!(chain2().with_meet(1, &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)]).is_err());
}

#[test]
fn json_roundtrip() {
    for site in [chain2(), tri(), dl3(), bool4(), pomega3()] {
        let text = site_to_json(&site);
        let back = site_from_json(&text).unwrap();
        assert_eq!(site_to_json(&back), text);
        for u in site.base().subsets() {
            assert_eq!(site.saturate(&u), back.saturate(&u));
        }
    }
    assert!(site_from_json(r#"{"base":["a"],"axioms":[{"head":"b","cover":[]}]}"#).is_err());
}
