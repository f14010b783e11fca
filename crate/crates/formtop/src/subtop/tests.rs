use std::sync::Arc;

use super::*;
use crate::core::{Axiom, FinSubset, FiniteSite, Localization};
use crate::examples::{bool4, chain2, chain2_spectral, dl3};
use crate::theory::CoverSpace;

fn arc(s: FiniteSite) -> Arc<FiniteSite> {
    Arc::new(s)
}

fn all_subsets(n: usize) -> Vec<FinSubset> {
    (0u64..1 << n).map(FinSubset::from_mask).collect()
}

/// A spread of subtopologies over `site`: closed, open, kfit and their generators.
fn family(site: &Arc<FiniteSite>) -> Vec<SubTopology> {
    let mut out = vec![SubTopology::whole(site), SubTopology::least(site)];
    for a in site.elems() {
        out.push(closed_sub(site, &FinSubset::singleton(a)).unwrap());
        out.push(open_sub(site, &FinSubset::singleton(a)).unwrap());
        out.push(kfit(site, &FinSubset::singleton(a)).unwrap());
    }
    out
}

#[test]
fn closed_p_collapses_p_side() {
    let s = arc(bool4());
    let c = closed_sub(&s, &s.subset(&["p"]).unwrap()).unwrap();
    assert_eq!(c.saturate(&s.subset(&["q"]).unwrap()), s.base());
    assert!(!s.covers_set(&s.base(), &s.subset(&["q"]).unwrap()));
}

#[test]
fn kfit_empty_is_least() {
    let s = arc(dl3());
    let k = kfit(&s, &FinSubset::empty()).unwrap();
    assert!(sub_cover_eq(&k, &SubTopology::least(&s)).unwrap());
}

#[test]
fn open_sub_on_covering_set_is_whole() {
    let s = arc(chain2());
    let o = open_sub(&s, &s.subset(&["1"]).unwrap()).unwrap();
    assert!(sub_cover_eq(&o, &SubTopology::whole(&s)).unwrap());
    let o0 = open_sub(&s, &s.subset(&["0"]).unwrap()).unwrap();
    assert!(!sub_cover_eq(&o0, &SubTopology::whole(&s)).unwrap());
}

#[test]
fn meet_of_all_closed_is_least() {
    let s = arc(bool4());
    let closed: Vec<SubTopology> = s.elems().map(|a| closed_sub(&s, &FinSubset::singleton(a)).unwrap()).collect();
    assert!(sub_cover_eq(&sub_meet(&closed).unwrap(), &SubTopology::least(&s)).unwrap());
    assert!(sub_meet(&[]).is_err());
}

#[test]
fn join_of_closed() {
    let s = arc(bool4());
    let p = s.elem("p").unwrap();
    let q = s.elem("q").unwrap();
    let j = sub_join(
        &closed_sub(&s, &FinSubset::singleton(p)).unwrap(),
        &closed_sub(&s, &FinSubset::singleton(q)).unwrap(),
    )
    .unwrap();
    let below_both: Vec<SubTopology> = s
        .elems()
        .filter(|&c| s.le(c, p) && s.le(c, q))
        .map(|c| closed_sub(&s, &FinSubset::singleton(c)).unwrap())
        .collect();
    assert_eq!(below_both.len(), 1);
    assert!(sub_cover_eq(&j, &sub_meet(&below_both).unwrap()).unwrap());
}

#[test]
fn join_of_kfit_is_kfit_of_union() {
    let s = arc(dl3());
    for a in all_subsets(3) {
        let ka = kfit(&s, &a).unwrap();
        for b in all_subsets(3) {
            let j = sub_join(&ka, &kfit(&s, &b).unwrap()).unwrap();
            assert!(sub_cover_eq(&j, &kfit(&s, &a.union(&b)).unwrap()).unwrap(), "{a:?} {b:?}");
        }
    }
}

#[test]
fn leq_examples() {
    let s = arc(bool4());
    let least = SubTopology::least(&s);
    for t in family(&s) {
        assert!(sub_leq(&least, &t).unwrap());
        assert!(sub_leq(&t, &SubTopology::whole(&s)).unwrap());
    }
    let c = closed_sub(&s, &s.subset(&["p"]).unwrap()).unwrap();
    assert!(sub_leq(&c, &SubTopology::whole(&s)).unwrap());
    assert!(!sub_leq(&SubTopology::whole(&s), &c).unwrap());
}

#[test]
fn leq_is_a_preorder_and_lattice_ops_are_bounds() {
    for s in [arc(dl3()), arc(bool4())] {
        let fam = family(&s);
        for x in &fam {
            assert!(sub_leq(x, x).unwrap());
            for y in &fam {
                let m = sub_meet(&[x.clone(), y.clone()]).unwrap();
                let j = sub_join(x, y).unwrap();
                assert!(sub_leq(&m, x).unwrap() && sub_leq(&m, y).unwrap());
                assert!(sub_leq(x, &j).unwrap() && sub_leq(y, &j).unwrap());
                for z in &fam {
                    if sub_leq(x, y).unwrap() && sub_leq(y, z).unwrap() {
                        assert!(sub_leq(x, z).unwrap());
                    }
                    if sub_leq(z, x).unwrap() && sub_leq(z, y).unwrap() {
                        assert!(sub_leq(z, &m).unwrap());
                    }
                    if sub_leq(x, z).unwrap() && sub_leq(y, z).unwrap() {
                        assert!(sub_leq(&j, z).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn join_distributes_over_meets() {
    let s = arc(bool4());
    let fam = family(&s);
    for x in &fam {
        for (i, y) in fam.iter().enumerate() {
            let ts = [y.clone(), fam[(i + 3) % fam.len()].clone(), fam[(i + 7) % fam.len()].clone()];
            let lhs = sub_join(x, &sub_meet(&ts).unwrap()).unwrap();
            let parts: Vec<SubTopology> = ts.iter().map(|t| sub_join(x, t).unwrap()).collect();
            assert!(sub_cover_eq(&lhs, &sub_meet(&parts).unwrap()).unwrap());
        }
    }
}

#[test]
fn parent_mismatch_is_an_error() {
    let a = arc(bool4());
    let b = arc(dl3());
    let x = SubTopology::whole(&a);
    let y = SubTopology::whole(&b);
    assert_eq!(sub_leq(&x, &y).unwrap_err(), crate::Error::ParentMismatch);
    assert!(sub_join(&x, &y).is_err());
    assert!(sub_meet(&[x, y]).is_err());
    // a structurally equal parent is accepted
    assert!(sub_leq(&SubTopology::whole(&a), &SubTopology::whole(&arc(bool4()))).unwrap());
}

#[test]
fn generators_and_their_meets_are_perfect() {
    let s = arc(bool4());
    let p = s.elem("p").unwrap();
    let g = closed_kfit(&s, p, &s.subset(&["q"]).unwrap()).unwrap();
    assert!(is_perfect_sub(&g));
    let mut gens = Vec::new();
    for a in s.elems() {
        for m in all_subsets(4).into_iter().step_by(3) {
            let g = closed_kfit(&s, a, &m).unwrap();
            assert!(is_perfect_sub(&g));
            gens.push(g);
        }
    }
    for w in gens.windows(3) {
        assert!(is_perfect_sub(&sub_meet(w).unwrap()));
    }
}

// On a finite base ≪ is ◁, so every subtopology keeps the parent's ≪:
// the search for a non-perfect open subtopology of dl3 comes back empty.
#[test]
fn no_open_subtopology_of_dl3_breaks_way_below() {
    let s = arc(dl3());
    for v in all_subsets(3) {
        assert!(is_perfect_sub(&open_sub(&s, &v).unwrap()), "{v:?}");
    }
    let m = s.elem("m").unwrap();
    let one = s.elem("1").unwrap();
    assert!(s.way_below(m, one));
}

#[test]
fn cover_tables_on_a_point() {
    let pt = arc(FiniteSite::new(vec!["x".into()], &[], vec![], Localization::Apply).unwrap());
    let ts = cover_tables(&pt).unwrap();
    assert_eq!(ts.len(), 2);
    let free2 = FiniteSite::new(vec!["x".into(), "y".into()], &[], vec![], Localization::Apply).unwrap();
    for t in cover_tables(&free2).unwrap() {
        assert!(t.closed_sets().contains(&0b11));
    }
    // with an axiom, tables must contain only saturated sets
    let ax = FiniteSite::new(
        vec!["x".into(), "y".into()],
        &[(0, 1)],
        vec![Axiom::new(1, FinSubset::singleton(0))],
        Localization::Apply,
    )
    .unwrap();
    for t in cover_tables(&ax).unwrap() {
        assert!(t.covers(1, 0b01));
    }
}

#[test]
fn perfect_subtopologies_are_meets_of_generators() {
    for s in [chain2(), chain2_spectral(), crate::examples::fixture("chain2").unwrap()] {
        let r = perfect_search(&s).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.perfect, r.covers);
        assert!(r.covers >= 2);
    }
    assert!(perfect_search(&bool4()).is_err());
}

#[test]
fn psub_order_examples() {
    let s = arc(bool4());
    let ps = psub_site(&s).unwrap();
    assert_eq!(ps.size(), 64);
    for x in 0..64 {
        assert!(ps.le(x, x));
    }
    let p = s.elem("p").unwrap();
    let pp = ps.elem(p, &FinSubset::singleton(p));
    assert!(sub_cover_eq(ps.generator(pp), &SubTopology::whole(&s)).unwrap());
    // (p, ∅) is Closed_p
    let p0 = ps.elem(p, &FinSubset::empty());
    assert!(sub_cover_eq(ps.generator(p0), &closed_sub(&s, &FinSubset::singleton(p)).unwrap()).unwrap());
    // (c, ∅) for c ∈ p ↓ q covers the meet of (p, ∅) and (q, ∅)
    let q0 = ps.elem(s.elem("q").unwrap(), &FinSubset::empty());
    let z0 = ps.elem(s.elem("0").unwrap(), &FinSubset::empty());
    let m = ps.meet(&[p0], &[q0]);
    assert!(ps.cover_eq(&m, &[z0]));
    assert!(psub_site(&arc(crate::examples::bool8())).is_err());
}

#[test]
fn psub_is_patch() {
    for (name, s) in [("chain2-spectral", chain2_spectral()), ("dl3", dl3()), ("bool4", bool4())] {
        let r = psub_patch_iso(&s, name).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.failures());
        assert_eq!(r.patch_generators, (1 << s.size()) + s.size());
    }
}

#[test]
fn subtopology_doc_names_axioms() {
    let s = arc(bool4());
    let d = closed_sub(&s, &s.subset(&["p"]).unwrap()).unwrap().to_doc();
    assert_eq!(d.extra_axioms.len(), 1);
    assert_eq!(d.extra_axioms[0].head, "p");
    assert!(d.extra_axioms[0].cover.is_empty());
}
