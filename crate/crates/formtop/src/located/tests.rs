use super::*;
use crate::examples::{bool4, chain2, cantor_oracle, dl3, full_spread, parse_rational, pomega3, rational_located, stream_point, tri, upper_reals_oracle};

fn s(site: &FiniteSite, xs: &[&str]) -> FinSubset {
    site.subset(xs).unwrap()
}

#[test]
fn splitting_examples() {
    let b = bool4();
    assert!(is_splitting(&b, &s(&b, &["p", "1"])).unwrap());
    assert!(!is_splitting(&b, &s(&b, &["p"])).unwrap());
    let p = pomega3();
    // down-closed families under ⊆: {∅, {0}} and {∅}
    let fam = s(&p, &["{}", "{0}"]);
    assert!(is_splitting(&p, &fam).unwrap());
    assert!(!is_splitting(&p, &s(&p, &["{0}"])).unwrap());
}

#[test]
fn classify_subset_examples() {
    let d = dl3();
    let f = classify_subset(&d, &s(&d, &["m", "1"])).unwrap();
    assert_eq!(f, SubsetFlags { splitting: true, point: true, located: true, located_point: true });
    let b = bool4();
    let f = classify_subset(&b, &s(&b, &["p", "q", "1"])).unwrap();
    assert!(f.splitting && !f.point);
    let c = chain2();
    let f = classify_subset(&c, &FinSubset::empty()).unwrap();
    assert!(f.splitting && !f.point && f.located);
}

#[test]
fn lower_set_examples() {
    let d = dl3();
    assert_eq!(lower_of(&d, &s(&d, &["1"])), s(&d, &["0", "m"]));
    assert_eq!(lower_of(&d, &FinSubset::empty()), d.base());
    // literal definition: a ≪ A for some A missing V
    for v in enumerate_located(&d, 12).unwrap() {
        let literal: FinSubset = d
            .elems()
            .filter(|&a| d.base().subsets().iter().any(|aa| !aa.meets(&v) && d.covers(a, aa)))
            .collect();
        assert_eq!(literal, lower_of(&d, &v));
    }
}

#[test]
fn cut_examples() {
    let d = dl3();
    let cut = Cut { lower: s(&d, &["0", "m"]), upper: s(&d, &["1"]) };
    assert_eq!(cut_check(&d, &cut), Ok(()));
    let bad = Cut { lower: d.base(), upper: s(&d, &["1"]) };
    assert_eq!(cut_check(&d, &bad), Err(6));
    assert_eq!(located_to_cut(&d, &s(&d, &["1"])).unwrap(), cut);
    assert_eq!(located_to_cut(&d, &s(&d, &["m"])), Err(Error::NotLocated));
}

#[test]
fn located_enumeration_examples() {
    let d = dl3();
    assert_eq!(
        enumerate_located(&d, 12).unwrap(),
        vec![FinSubset::empty(), s(&d, &["1"]), s(&d, &["m", "1"])]
    );
    let b = bool4();
    assert_eq!(
        enumerate_located(&b, 12).unwrap(),
        vec![FinSubset::empty(), s(&b, &["p", "1"]), s(&b, &["q", "1"]), s(&b, &["p", "q", "1"])]
    );
    assert_eq!(enumerate_points(&b, 12).unwrap(), vec![s(&b, &["p", "1"]), s(&b, &["q", "1"])]);
    assert!(enumerate_located(&pomega3(), 2).is_err());
}

#[test]
fn roundtrips_on_bool4() {
    let b = bool4();
    for v in enumerate_located(&b, 12).unwrap() {
        let cut = located_to_cut(&b, &v).unwrap();
        assert_eq!(cut_to_located(&cut), v);
        let pr = cut_to_pair(&cut);
        assert_eq!(pair_rep_check(&b, &pr).unwrap(), Ok(()));
        assert_eq!(pair_to_cut(&pr), cut);
    }
}

#[test]
fn cut_bijection_small_fixtures() {
    for site in [chain2(), tri(), dl3(), bool4()] {
        let located = enumerate_located(&site, 12).unwrap();
        let cuts = enumerate_cuts(&site, 12).unwrap();
        let all = enumerate_cuts_all_pairs(&site, 7).unwrap();
        assert_eq!(located.len(), cuts.len());
        assert_eq!(cuts.len(), all.len());
        for cut in &all {
            assert_eq!(located_to_cut(&site, &cut_to_located(cut)).unwrap(), *cut);
        }
    }
}

#[test]
fn located_points_match_cut_extra_conditions() {
    for site in [chain2(), dl3(), bool4()] {
        let points = enumerate_located_points(&site, 12).unwrap();
        let from_cuts: Vec<FinSubset> = enumerate_cuts(&site, 12)
            .unwrap()
            .into_iter()
            .filter(|c| cut_point_check(&site, c).is_ok())
            .map(|c| c.upper)
            .collect();
        let mut from_cuts = from_cuts;
        crate::core::sort_canonical(&mut from_cuts);
        assert_eq!(points, from_cuts);
    }
}

#[test]
fn reduced_cut_check_agrees_with_literal() {
    for site in [chain2(), tri(), dl3(), bool4()] {
        let n = site.size();
        let t = SatTable::new(&site).unwrap();
        for u in 0u64..1 << n {
            for l in 0u64..1 << n {
                let cut = Cut { lower: FinSubset::from_mask(l), upper: FinSubset::from_mask(u) };
                assert_eq!(
                    cut_check_literal(&site, &t, &cut).is_ok(),
                    cut_check_reduced(&site, &cut).is_ok()
                );
            }
        }
    }
}

#[test]
fn pair_rep_rejections() {
    let d = dl3();
    let mut pr = cut_to_pair(&located_to_cut(&d, &s(&d, &["1"])).unwrap());
    pr.lower.remove(&FinSubset::empty());
    assert_eq!(pair_rep_check(&d, &pr).unwrap(), Err(3));
    let pr = PairRep { lower: [FinSubset::empty(), s(&d, &["1"])].into_iter().collect(), upper: s(&d, &["1"]) };
    assert!(pair_rep_check(&d, &pr).unwrap().is_err());
}

fn grid() -> Vec<String> {
    (-12..=24).map(|k| format!("{k}/12")).collect()
}

#[test]
fn upper_real_evidence() {
    let u = upper_reals_oracle();
    for q in ["0", "1/3", "1/2"] {
        let v = rational_located(parse_rational(q).unwrap());
        let g = grid();
        let mut pairs = Vec::new();
        for a in &g {
            for b in &g {
                if parse_rational(a).unwrap() < parse_rational(b).unwrap() {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        let covers: Vec<(String, Vec<String>)> = g.windows(3).map(|w| (w[1].clone(), vec![w[0].clone(), w[2].clone()])).collect();
        let report = bounded_located_check(&u, &v, &pairs, &covers, 24);
        assert!(report.all_passed(), "{q}: {:?}", report.failures().next());
        assert!(report.evidence_only);
    }
    let closed = |p: &crate::examples::Rational| *p >= parse_rational("0").unwrap();
    let report = bounded_located_check(&u, closed, &[], &[("0".into(), vec!["0".into()])], 24);
    assert!(!report.all_passed());
    assert!(report.failures().any(|t| t.kind == "rounded" && t.input == "0"));
}

#[test]
fn cantor_evidence() {
    let c = cantor_oracle();
    let strings: Vec<String> = (0..4u32)
        .flat_map(|len| (0..1u32 << len).map(move |m| (0..len).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect()))
        .collect();
    let pairs: Vec<(String, String)> = strings
        .iter()
        .flat_map(|s| strings.iter().filter(|t| s.starts_with(t.as_str())).map(move |t| (s.clone(), t.clone())))
        .collect();
    let covers: Vec<(String, Vec<String>)> = strings.iter().map(|s| (s.clone(), vec![format!("{s}0"), format!("{s}1")])).collect();
    assert!(bounded_located_check(&c, full_spread(), &pairs, &covers, 1).all_passed());
    assert!(bounded_located_check(&c, stream_point(|_| false), &pairs, &covers, 1).all_passed());
    let report = bounded_located_check(&c, |s: &String| s.len() < 2, &pairs, &covers, 1);
    assert!(!report.all_passed());
    let bad = bounded_located_check(&c, full_spread(), &[("2".into(), "".into())], &[], 1);
    assert!(!bad.all_passed());
}
