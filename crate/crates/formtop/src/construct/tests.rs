use std::sync::Arc;

use super::*;
use crate::core::{FinSubset, FiniteSite};
use crate::examples::{self, bool4, chain2, chain2_spectral, dl3, tri};
use crate::located::{enumerate_located, enumerate_located_points, enumerate_splitting};
use crate::theory::{enumerate_models, is_model, model_check, present, CoverSpace, Generator, ModelOracle, PRESENT_BOUND};

fn fs(v: &[u32]) -> FinSubset {
    FinSubset::new(v.iter().copied())
}

fn family_count(t: &crate::theory::GeometricTheory, fam: &str) -> usize {
    t.axioms().filter(|a| a.family == fam).count()
}

#[test]
fn patch_dl3_expansion_counts() {
    let t = patch_theory(&dl3()).unwrap();
    assert_eq!(t.generator_count(), 11);
    assert_eq!(family_count(&t, "D"), 3);
    // 0 ≪ everything, m ≪ m, m ≪ 1, 1 ≪ 1
    assert_eq!(family_count(&t, "Loc"), 6);
    assert_eq!(t.stats().expansions["R1"], 1);
}

#[test]
fn patch_models_match_located_points() {
    for (site, expect) in [(dl3(), 2), (bool4(), 2)] {
        let t = patch_theory(&site).unwrap();
        let direct = enumerate_models(&t, 22).unwrap();
        let via_points = patch_models(&site, 12).unwrap();
        assert_eq!(direct.len(), expect);
        assert_eq!(direct, via_points);
    }
}

#[test]
fn lawson_models_match_located_subsets() {
    for (site, expect) in [(dl3(), 3), (bool4(), 4)] {
        let t = lawson_theory(&site).unwrap();
        assert!(t.families().iter().all(|f| f != "R1" && f != "R2"));
        let direct = enumerate_models(&t, 22).unwrap();
        assert_eq!(direct.len(), expect);
        assert_eq!(direct, lawson_models(&site, 12).unwrap());
    }
    let p = examples::pomega3();
    let t = lawson_theory(&p).unwrap();
    let located = enumerate_located(&p, 12).unwrap();
    for v in &located {
        assert!(is_model(&t, &located_to_model(&p, v)));
        assert_eq!(&model_to_located(&p, &located_to_model(&p, v)), v);
    }
}

#[test]
fn lawson_model_check_examples() {
    let s = dl3();
    let t = lawson_theory(&s).unwrap();
    let v = s.subset(&["m", "1"]).unwrap();
    assert!(model_check(&t, &ModelOracle::from_indices(&t, &located_to_model(&s, &v))));
    let bad = located_to_model(&s, &v).with(PatchLayout { n: 3 }.r(0));
    assert!(!model_check(&t, &ModelOracle::from_indices(&t, &bad)));
}

#[test]
fn lazy_patch_disjointness() {
    let s = dl3();
    let p = patch_lazy(&s).unwrap();
    let lay = PatchLayout { n: 3 };
    let m = s.elem("m").unwrap();
    assert!(p.covers(&fs(&[lay.l(&FinSubset::singleton(m)), lay.r(m)]), &[]));
}

#[test]
fn schema_agrees_with_materialized_patch() {
    for kind in [PatchKind::Patch, PatchKind::Lawson] {
        let s = dl3();
        let t = construction_theory(&s, kind).unwrap();
        let site = present(&t, PRESENT_BOUND).unwrap();
        let lazy = crate::theory::LazySite::new(Arc::new(PatchSchema::new(&s, kind).unwrap()));
        let mut rng = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for _ in 0..300 {
            let x = next() & 0x7ff & next();
            let goal: Vec<FinSubset> = (0..(next() % 4)).map(|_| FinSubset::from_mask(next() & 0x7ff & next() & next())).collect();
            let su = FinSubset::new(goal.iter().map(|g| g.to_mask() as u32));
            assert_eq!(
                lazy.covers(&FinSubset::from_mask(x), &goal),
                site.covers(x as u32, &su),
                "{kind:?} {x} {goal:?}"
            );
        }
    }
}

#[test]
fn lemma_little_fact_on_dl3() {
    let s = dl3();
    let p = patch_lazy(&s).unwrap();
    let lay = PatchLayout { n: 3 };
    for a in 0u64..8 {
        for b in 0u64..8 {
            let (sa, sb) = (FinSubset::from_mask(a), FinSubset::from_mask(b));
            if s.way_below_set(&sa, &sb) {
                let mut goal = vec![FinSubset::singleton(lay.l(&sa))];
                goal.extend(sb.iter().map(|x| FinSubset::singleton(lay.r(x))));
                assert!(p.covers(&FinSubset::empty(), &goal), "{a} {b}");
            }
        }
    }
}

#[test]
fn vietoris_models_and_translations() {
    let s = bool4();
    let tr = model_translations(&s).unwrap();
    let direct = enumerate_models(tr.vietoris(), 22).unwrap();
    assert_eq!(direct.len(), 4);
    assert_eq!(direct, tr.vietoris_models(12).unwrap());
    for v in enumerate_located(&s, 12).unwrap() {
        assert_eq!(tr.v_to_loc(&tr.loc_to_v(&v).unwrap()).unwrap(), v);
    }
    for m in tr.lawson_models(12).unwrap() {
        assert_eq!(tr.v_to_l(&tr.l_to_v(&m).unwrap()).unwrap(), m);
    }
    assert!(matches!(vietoris_theory(&dl3()), Err(crate::Error::Classification(_))));
}

#[test]
fn vietoris_model_of_p1() {
    let s = bool4();
    let tr = model_translations(&s).unwrap();
    let v = s.subset(&["p", "1"]).unwrap();
    let m = tr.loc_to_v(&v).unwrap();
    let lay = VietorisLayout { n: 4 };
    for x in ["p", "1"] {
        assert!(m.contains(lay.diamond(s.elem(x).unwrap())));
    }
    let not_v = s.subset(&["0", "q"]).unwrap();
    for a in 0u64..16 {
        let sa = FinSubset::from_mask(a);
        assert_eq!(m.contains(lay.boxed(&sa)), s.covers_set(&s.base(), &not_v.union(&sa)));
    }
    let oracle = tr.loc_to_v_oracle(&v).unwrap();
    assert!(oracle.contains(&Generator::Diamond(s.elem("p").unwrap())));
    assert!(tr.v_to_loc(&fs(&[0])).is_err());
}

#[test]
fn lower_theory_examples() {
    let t = lower_theory(&tri(), LowerForm::Axioms).unwrap();
    assert_eq!(t.axiom_count(), 1);
    assert_eq!(t.describe(0), t.describe(0));
    let ax = t.axiom(0);
    assert_eq!(ax.ante, &[0]);
    assert_eq!(ax.disjuncts().collect::<Vec<_>>(), vec![&[1u32][..], &[2u32][..]]);

    for site in [bool4(), chain2(), dl3(), tri()] {
        let splitting = enumerate_splitting(&site, 12).unwrap();
        let axioms = enumerate_models(&lower_theory(&site, LowerForm::Axioms).unwrap(), 22).unwrap();
        assert_eq!(axioms, splitting);
        let cont = enumerate_models(&lower_theory(&site, LowerForm::Continuous).unwrap(), 22).unwrap();
        assert_eq!(cont, splitting);
    }
    let chain = enumerate_models(&lower_theory(&chain2(), LowerForm::Axioms).unwrap(), 22).unwrap();
    assert_eq!(chain, vec![fs(&[]), fs(&[1]), fs(&[0, 1])]);
    assert_eq!(enumerate_splitting(&bool4(), 12).unwrap().len(), 4);
}

#[test]
fn sigma_l_is_basic() {
    let m = sigma_l(&tri()).unwrap();
    assert!(m.check_basic().is_ok());
    assert!(m.relates(&fs(&[0]), &0));
}

#[test]
fn up_arrows_on_dl3() {
    let s = dl3();
    let m = s.subset(&["m"]).unwrap();
    let up = up_arrow(&s, &m).unwrap();
    assert_eq!(up.len(), 6);
    assert!(up.iter().all(|b| FinSubset::from_mask(b as u64).iter().any(|x| x == 1 || x == 2)));
    assert_eq!(up_arrow(&s, &FinSubset::empty()).unwrap().len(), 8);
    assert_eq!(up_arrow(&s, &s.subset(&["0"]).unwrap()).unwrap().len(), 8);
}

#[test]
fn scott_site_matches_literal_cover() {
    for s in [chain2(), tri()] {
        let sigma = scott_site(&s).unwrap();
        let size = 1u64 << s.size();
        for a in 0..size {
            for fam in 0u64..1 << size {
                let family: Vec<FinSubset> = (0..size).filter(|b| fam >> b & 1 == 1).map(FinSubset::from_mask).collect();
                let lit = scott_covers_literal(&s, &FinSubset::from_mask(a), &family).unwrap();
                let got = sigma.covers(a as u32, &FinSubset::new((0..size as u32).filter(|b| fam >> b & 1 == 1)));
                assert_eq!(lit, got, "{a} {fam}");
            }
        }
        assert!(sigma.check_localized());
    }
}

#[test]
fn finite_joins_match_literal() {
    for s in [chain2_spectral(), dl3()] {
        let all: Vec<FinSubset> = (0u64..1 << s.size()).map(FinSubset::from_mask).collect();
        assert_eq!(join_f(&s, &[]).unwrap(), join_f_literal(&s, &[]).unwrap());
        for a in &all {
            assert_eq!(join_f(&s, std::slice::from_ref(a)).unwrap(), join_f_literal(&s, std::slice::from_ref(a)).unwrap());
            for b in &all {
                let fam = [a.clone(), b.clone()];
                assert_eq!(join_f(&s, &fam).unwrap(), join_f_literal(&s, &fam).unwrap());
            }
        }
    }
}

/// Filters of `Sat(S)` counted from the lattice of saturated subsets.
fn sof_count(site: &FiniteSite) -> usize {
    scott_open_filters(&saturated_subsets(site, 16).unwrap()).unwrap().len()
}

#[test]
fn degroot_examples() {
    let s = bool4();
    let d = degroot(&s).unwrap();
    let full = (1u32 << 4) - 1;
    // n = 0 instances: l(A) ⊢ ⊥ exactly when S ◁ A
    for ax in d.theory.axioms().filter(|a| a.family == "d4" && a.disjunct_count() == 0) {
        let a = FinSubset::new(ax.ante.iter().copied());
        assert_eq!(a.len(), 1);
        assert!(s.covers_set(&s.base(), &FinSubset::from_mask(a.as_slice()[0] as u64)));
    }
    let zero_count = d.theory.axioms().filter(|a| a.family == "d4" && a.disjunct_count() == 0).count();
    let expect = (0..=full).filter(|&m| s.covers_set(&s.base(), &FinSubset::from_mask(m as u64))).count();
    assert_eq!(zero_count, expect);
    assert_eq!(saturated_subsets(&d.site, 16).unwrap().len(), sof_count(&s));
    assert_eq!(
        enumerate_located_points(&d.site, 16).unwrap().len(),
        enumerate_located_points(&s, 12).unwrap().len()
    );
}

#[test]
fn degroot_small_counts() {
    for s in [chain2_spectral(), dl3()] {
        let d = degroot(&s).unwrap();
        assert_eq!(saturated_subsets(&d.site, 16).unwrap().len(), sof_count(&s));
        assert_eq!(
            enumerate_located_points(&d.site, 16).unwrap().len(),
            enumerate_located_points(&s, 12).unwrap().len()
        );
    }
}

#[test]
fn star_family_examples() {
    assert_eq!(star_family(&[]), vec![FinSubset::empty()]);
    assert_eq!(star_family(&[fs(&[0, 1])]), vec![fs(&[0]), fs(&[1]), fs(&[0, 1])]);
    assert_eq!(star_family(&[fs(&[0]), fs(&[1])]), vec![fs(&[0, 1])]);
}

#[test]
fn scott_dual_chain2_and_tri() {
    let r = scott_dual_check(&chain2(), 3).unwrap();
    assert_eq!(r.path, DualPath::FullFrame);
    assert!(r.passed(), "{r:?}");
    let r = scott_dual_check(&tri(), 3).unwrap();
    assert_eq!(r.path, DualPath::FilterCount);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn synthetic_wb_examples() {
    let s = bool4();
    assert_eq!(synthetic_wb(&s, PatchKind::Lawson, &FinSubset::empty()).unwrap(), vec![FinSubset::empty()]);
    let lay = PatchLayout { n: 4 };
    let wb0 = synthetic_wb(&s, PatchKind::Patch, &FinSubset::empty()).unwrap();
    assert_eq!(wb0, (0..4).map(|a| FinSubset::singleton(lay.r(a))).collect::<Vec<_>>());
    let a = s.subset(&["p"]).unwrap();
    for b in synthetic_wb(&s, PatchKind::Patch, &FinSubset::singleton(lay.l(&a))).unwrap() {
        let (ls, _) = lay.split(&b);
        assert!(ls.iter().any(|&m| s.way_below_set(&a, &FinSubset::from_mask(m as u64))));
    }
}

#[test]
fn synthetic_wb_laws() {
    for kind in [PatchKind::Patch, PatchKind::Lawson] {
        let s = dl3();
        let lazy = construction_lazy(&s, kind).unwrap();
        let lay = PatchLayout { n: 3 };
        let samples = [
            FinSubset::empty(),
            fs(&[lay.r(1)]),
            fs(&[lay.l(&fs(&[1]))]),
            fs(&[lay.l(&fs(&[0])), lay.r(2)]),
        ];
        for a in &samples {
            let wb = synthetic_wb(&s, kind, a).unwrap();
            for b in &wb {
                assert!(lazy.covers(b, std::slice::from_ref(a)), "{kind:?}");
            }
            assert!(lazy.covers(a, &wb), "{kind:?} {a:?}");
        }
    }
}

#[test]
fn canonical_maps_on_bool4() {
    let s = bool4();
    let maps = canonical_maps(&s).unwrap();
    let lay = PatchLayout { n: 4 };
    let p = s.elem("p").unwrap();
    assert!(maps.eps_p.relates(&FinSubset::singleton(lay.r(p)), &p));
    for m in [&maps.eps_p, &maps.eps_l] {
        assert!(m.check_basic().is_ok());
        assert!(m.check_perfect().is_ok());
    }
    assert!(maps.eps_p.check_ftm1().is_ok());
    assert!(maps.eps_p.check_ftm2().is_ok());
    let ed = maps.eps_d.as_ref().unwrap();
    let la = FinSubset::singleton(lay.l(&fs(&[1, 2])));
    assert!(ed.relates(&la, &la));
    assert!(maps.sigma_l.check_basic().is_ok());
}

#[test]
fn extend_identity_and_points() {
    let s = Arc::new(bool4());
    let id = crate::theory::SiteMap::new("id", s.clone(), s.clone(), |a: &u32| vec![*a]);
    let ext = extend_perfect(&id, PatchKind::Patch).unwrap();
    assert!(ext.check_ftm1().is_ok());
    assert!(ext.check_ftm2().is_ok());

    let x = s.subset(&["p", "1"]).unwrap();
    let pm = point_map(&s, &x);
    let ext = extend_perfect(&pm, PatchKind::Patch).unwrap();
    assert_eq!(point_of_map(&ext), located_to_model(&s, &x));

    let d = Arc::new(dl3());
    let id = crate::theory::SiteMap::new("id", d.clone(), d.clone(), |a: &u32| vec![*a]);
    assert!(matches!(extend_perfect(&id, PatchKind::Patch), Err(crate::Error::Classification(_))));
}

#[test]
fn eps_p_separates_distinct_extensions() {
    let s = dl3();
    let pts = enumerate_located_points(&s, 12).unwrap();
    assert_eq!(pts.len(), 2);
    let e0 = extend_perfect(&point_map(&s, &pts[0]), PatchKind::Patch).unwrap();
    let e1 = extend_perfect(&point_map(&s, &pts[1]), PatchKind::Patch).unwrap();
    let diff = e0.first_difference(&e1).expect("distinct points give distinct maps");
    assert!(!e0.target().show(&diff).is_empty());
    let eps = eps_p(&s).unwrap();
    assert!(!e0.compose(&eps).map_eq(&e1.compose(&eps)));
}

#[test]
fn monad_left_unit_bool4() {
    let r = left_unit_check(&bool4(), "bool4").unwrap();
    assert_eq!(r.models, 4);
    assert_eq!(r.generators, 20);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn spectral_patch_generators_complemented() {
    let s = bool4();
    let p = patch_lazy(&s).unwrap();
    let lay = PatchLayout { n: 4 };
    for a in s.elems() {
        let l = FinSubset::singleton(lay.l(&FinSubset::singleton(a)));
        let r = FinSubset::singleton(lay.r(a));
        assert!(p.covers(&l.union(&r), &[]));
        assert!(p.covers(&FinSubset::empty(), &[l, r]));
    }
}

#[test]
fn lawson_site_compact_regular_small() {
    let s = chain2();
    let site = present(&lawson_theory(&s).unwrap(), PRESENT_BOUND).unwrap();
    let top = crate::theory::presented_elem(&FinSubset::empty());
    assert!(site.way_below(top, top));
    for g in 0..6u32 {
        let e = crate::theory::presented_elem(&FinSubset::singleton(g));
        let inside: FinSubset = site.elems().filter(|&b| site.well_inside(b, e)).collect();
        assert!(site.covers(e, &inside), "{g}");
    }
}
