//! The acceptance suites. Each suite runs a family of exhaustive checks and
//! returns a report; `run_all` runs every suite.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{
    degroot, lawson_theory, left_unit_check, located_to_model, model_translations, patch_lazy, patch_theory,
    saturated_subsets, scott_dual_check, scott_open_filters, PatchLayout,
};
use crate::core::{brute_force_way_below, classify, sort_canonical, FinSubset, FiniteSite};
use crate::error::{Error, Result};
use crate::examples::{
    self, birkhoff, cantor_oracle, full_spread, parse_rational, random_site, rational_located, spectral_site,
    stream_point, upper_reals_oracle, Poset,
};
use crate::located::{
    bounded_located_check, cut_check, cut_to_located, enumerate_cuts, enumerate_located, enumerate_located_points,
    located_to_cut,
};
use crate::subtop::psub_patch_iso;
use crate::theory::{is_model, present, presented_elem, PRESENT_BOUND};

/// Number of suites.
pub const SUITE_COUNT: usize = 13;

pub const SUITE_NAMES: [&str; SUITE_COUNT] = [
    "way-below oracle equivalence",
    "cut bijection",
    "patch model correspondence",
    "lawson model correspondence",
    "spectral/boolean law",
    "little-fact derivability",
    "lawson/vietoris model isomorphism",
    "de groot instance",
    "psub/patch isomorphism",
    "lawson site properties",
    "scott as dual",
    "oracle evidence",
    "monad left unit",
];

/// Knobs shared by all suites.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyOptions {
    /// Caps the sizes that vary within a suite: random sites and Birkhoff posets.
    pub max_base: Option<usize>,
    pub seed: u64,
    pub random_sites: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_base: None,
            seed: 0x5eed,
            random_sites: 200,
        }
    }
}

impl VerifyOptions {
    fn cap(&self, default: usize) -> usize {
        self.max_base.map_or(default, |m| m.min(default))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub evidence_only: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let ev = if self.evidence_only { " [evidence only]" } else { "" };
        format!("{tag} {:>2} {}{ev} ({} checks)", self.id, self.name, self.checks)
    }
}

/// Collects checks for one suite.
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        let ok = got == want;
        self.check(ok, || format!("{what}: got {got:?}, expected {want:?}"));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn fixture_corpus() -> Vec<(&'static str, FiniteSite)> {
    examples::FIXTURES
        .iter()
        .map(|&name| (name, examples::fixture(name).expect("named fixture")))
        .collect()
}

fn birkhoff_sites(max: usize) -> Result<Vec<(String, usize, FiniteSite)>> {
    let mut out = Vec::new();
    for k in 1..=max {
        for (i, p) in Poset::all_up_to_iso(k)?.iter().enumerate() {
            out.push((format!("birkhoff(P{k}.{i})"), k, spectral_site(&birkhoff(p)?)?));
        }
    }
    Ok(out)
}

fn suite1(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let mut sites: Vec<(String, FiniteSite)> = fixture_corpus().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    let cap = o.cap(5);
    sites.extend((0..o.random_sites as u64).map(|i| (format!("random#{i}"), random_site(o.seed.wrapping_add(i), cap))));
    let results: Vec<Result<Vec<String>>> = sites
        .par_iter()
        .map(|(name, s)| {
            let mut bad = Vec::new();
            for a in s.elems() {
                for b in s.elems() {
                    if s.way_below(a, b) != brute_force_way_below(s, a, b, 8)? {
                        bad.push(format!("{name}: ({}, {})", s.name(a), s.name(b)));
                    }
                }
            }
            Ok(bad)
        })
        .collect();
    for (r, (_, s)) in results.into_iter().zip(&sites) {
        let bad = r?;
        t.checks += s.size() * s.size();
        t.failures.extend(bad);
    }
    t.note(format!("{} sites, random bases ≤ {cap}", sites.len()));
    Ok(())
}

fn suite2(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let mut sites: Vec<(String, FiniteSite)> = fixture_corpus()
        .into_iter()
        .filter(|(_, s)| s.size() <= 5 && classify(s).locally_compact)
        .map(|(n, s)| (n.to_string(), s))
        .collect();
    let cap = o.cap(5);
    sites.extend((0..o.random_sites as u64 / 4).map(|i| (format!("random#{i}"), random_site(o.seed ^ 0xc0de ^ i, cap))));
    for (name, s) in &sites {
        let located = enumerate_located(s, 12)?;
        let cuts = enumerate_cuts(s, 12)?;
        t.eq(located.len(), cuts.len(), &format!("{name}: located vs cuts"));
        for v in &located {
            let cut = located_to_cut(s, v)?;
            t.check(cut_check(s, &cut).is_ok(), || format!("{name}: cut of {v:?} invalid"));
            t.check(&cut_to_located(&cut) == v, || format!("{name}: located roundtrip at {v:?}"));
        }
        for c in &cuts {
            let back = located_to_cut(s, &cut_to_located(c))?;
            t.check(&back == c, || format!("{name}: cut roundtrip at {:?}", c.upper));
        }
    }
    t.note(format!("{} sites", sites.len()));
    Ok(())
}

/// Every enumerated model passes the model check, and flipping one generator
/// gives a non-model unless the result is itself enumerated.
fn check_models(t: &mut Tally, name: &str, theory: &crate::theory::GeometricTheory, models: &[FinSubset], flips: &[u32]) {
    for m in models {
        t.check(is_model(theory, m), || format!("{name}: {m:?} fails the model check"));
        for &g in flips {
            let flipped = if m.contains(g) {
                FinSubset::new(m.iter().filter(|&x| x != g))
            } else {
                m.with(g)
            };
            let listed = models.contains(&flipped);
            t.check(is_model(theory, &flipped) == listed, || format!("{name}: flip of {g} in {m:?}"));
        }
    }
}

fn flips(n: usize) -> Vec<u32> {
    let lay = PatchLayout { n };
    let mut out: Vec<u32> = (0..n as u32).map(|a| lay.r(a)).collect();
    out.push(lay.l(&FinSubset::empty()));
    out.extend((0..n as u32).map(|a| lay.l(&FinSubset::singleton(a))));
    out.push(lay.l(&FinSubset::from_mask((1u64 << n) - 1)));
    out
}

fn suite3(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let mut sites: Vec<(String, Option<usize>, FiniteSite)> =
        vec![("dl3".into(), Some(2), examples::dl3()), ("bool4".into(), Some(2), examples::bool4())];
    sites.extend(birkhoff_sites(o.cap(3))?.into_iter().map(|(n, _, s)| (n, None, s)));
    for (name, want, s) in &sites {
        let points = enumerate_located_points(s, 12)?;
        let theory = patch_theory(s)?;
        let mut models: Vec<FinSubset> = points.iter().map(|v| located_to_model(s, v)).collect();
        models.sort();
        if let Some(w) = want {
            t.eq(models.len(), *w, &format!("{name}: patch model count"));
        }
        check_models(t, name, &theory, &models, &flips(s.size()));
    }
    t.note(format!("{} sites", sites.len()));
    Ok(())
}

fn suite4(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    for (name, want, s) in [
        ("dl3", Some(3), examples::dl3()),
        ("bool4", Some(4), examples::bool4()),
        ("pomega3", None, examples::pomega3()),
    ] {
        let located = enumerate_located(&s, 12)?;
        let theory = lawson_theory(&s)?;
        let mut models: Vec<FinSubset> = located.iter().map(|v| located_to_model(&s, v)).collect();
        sort_canonical(&mut models);
        if let Some(w) = want {
            t.eq(models.len(), w, &format!("{name}: lawson model count"));
            let direct = crate::theory::enumerate_models(&theory, 22)?;
            t.eq(direct, models.clone(), &format!("{name}: direct enumeration"));
        } else {
            t.note(format!("{name}: {} located subsets", located.len()));
        }
        check_models(t, name, &theory, &models, &flips(s.size()));
    }
    Ok(())
}

fn suite5(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let sites = birkhoff_sites(o.cap(4))?;
    let results: Vec<Result<Tally>> = sites
        .par_iter()
        .map(|(name, k, s)| {
            let mut t = Tally::new();
            let points = enumerate_located_points(s, 16)?;
            t.eq(points.len(), *k, &format!("{name}: located points"));
            let p = patch_lazy(s)?;
            let lay = PatchLayout { n: s.size() };
            for v in &points {
                let m = located_to_model(s, v);
                t.check(p.is_model(&m), || format!("{name}: {v:?} is not a lazy model"));
            }
            for a in s.elems() {
                let l = FinSubset::singleton(lay.l(&FinSubset::singleton(a)));
                let r = FinSubset::singleton(lay.r(a));
                t.check(p.covers(&l.union(&r), &[]), || format!("{name}: l({a}) ∧ r({a}) not covered by ∅"));
                t.check(p.covers(&FinSubset::empty(), &[l, r]), || format!("{name}: l({a}) ∨ r({a}) not top"));
            }
            Ok(t)
        })
        .collect();
    for r in results {
        let r = r?;
        t.checks += r.checks;
        t.failures.extend(r.failures);
    }
    t.note(format!("{} posets", sites.len()));
    Ok(())
}

fn suite6(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    for (name, s) in [("dl3", examples::dl3()), ("bool4", examples::bool4())] {
        let p = patch_lazy(&s)?;
        let lay = PatchLayout { n: s.size() };
        let n = 1u64 << s.size();
        let pairs: Vec<(u64, u64)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| s.way_below_set(&FinSubset::from_mask(a), &FinSubset::from_mask(b)))
            .collect();
        for (a, b) in pairs {
            let (sa, sb) = (FinSubset::from_mask(a), FinSubset::from_mask(b));
            let mut goal = vec![FinSubset::singleton(lay.l(&sa))];
            goal.extend(sb.iter().map(|x| FinSubset::singleton(lay.r(x))));
            t.check(p.covers(&FinSubset::empty(), &goal), || format!("{name}: ({sa:?}, {sb:?})"));
        }
    }
    Ok(())
}

fn suite7(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    for (name, want, s) in [("bool4", Some(4), examples::bool4()), ("bool8", None, examples::bool8())] {
        let tr = model_translations(&s)?;
        let located = enumerate_located(&s, 12)?;
        let lawson = tr.lawson_models(12)?;
        let vietoris: Vec<FinSubset> = located.iter().map(|v| tr.loc_to_v(v)).collect::<Result<_>>()?;
        t.eq(lawson.len(), vietoris.len(), &format!("{name}: model counts"));
        if let Some(w) = want {
            t.eq(vietoris.len(), w, &format!("{name}: vietoris model count"));
            let direct = crate::theory::enumerate_models(tr.vietoris(), 22)?;
            let mut sorted = vietoris.clone();
            sort_canonical(&mut sorted);
            t.eq(direct, sorted, &format!("{name}: direct vietoris enumeration"));
        }
        for m in &vietoris {
            t.check(is_model(tr.vietoris(), m), || format!("{name}: {m:?} not a vietoris model"));
            let l = tr.v_to_l(m)?;
            t.check(lawson.contains(&l), || format!("{name}: v_to_l({m:?}) not a lawson model"));
            t.check(&tr.l_to_v(&l)? == m, || format!("{name}: V→L→V at {m:?}"));
        }
        for l in &lawson {
            let v = tr.l_to_v(l)?;
            t.check(vietoris.contains(&v), || format!("{name}: l_to_v({l:?}) not listed"));
            t.check(&tr.v_to_l(&v)? == l, || format!("{name}: L→V→L at {l:?}"));
        }
        for (v, m) in located.iter().zip(&vietoris) {
            t.check(&tr.v_to_loc(m)? == v, || format!("{name}: located roundtrip at {v:?}"));
        }
    }
    Ok(())
}

fn sof_count(s: &FiniteSite) -> Result<usize> {
    Ok(scott_open_filters(&saturated_subsets(s, 16)?)?.len())
}

fn suite8(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    for (name, s) in [("chain2s", examples::chain2_spectral()), ("dl3", examples::dl3())] {
        let d = degroot(&s)?;
        let ps = enumerate_located_points(&s, 12)?.len();
        let pd = enumerate_located_points(&d.site, 16)?.len();
        t.eq(pd, ps, &format!("{name}: located points of S^D vs S"));
    }
    for (name, s) in fixture_corpus() {
        // Sat(S) is a frame only when the cover is localised; tri is a basic cover.
        if s.size() > 3 || !s.is_localized() || !classify(&s).stably_locally_compact || !classify(&s).compact {
            continue;
        }
        let d = degroot(&s)?;
        t.eq(saturated_subsets(&d.site, 16)?.len(), sof_count(&s)?, &format!("{name}: Scott open filters vs Sat(S^D)"));
    }
    Ok(())
}

fn suite9(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let sites = [("chain2s", examples::chain2_spectral()), ("dl3", examples::dl3()), ("bool4", examples::bool4())];
    for (name, s) in sites {
        let r = psub_patch_iso(&s, name)?;
        t.checks += r.patch_side.len() + r.psub_side.len() + 1;
        t.failures.extend(r.failures().into_iter().map(|g| format!("{name}: {g}")));
        if r.r_respects_axioms == Some(false) {
            t.failures.push(format!("{name}: r does not respect the patch axioms"));
        }
    }
    Ok(())
}

fn suite10(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    for (name, s) in fixture_corpus() {
        if s.size() > 2 {
            continue;
        }
        let theory = lawson_theory(&s)?;
        let site = present(&theory, PRESENT_BOUND)?;
        let top = presented_elem(&FinSubset::empty());
        t.check(site.way_below(top, top), || format!("{name}: presented lawson site not compact"));
        for g in 0..theory.generator_count() as u32 {
            let e = presented_elem(&FinSubset::singleton(g));
            let inside: FinSubset = site.elems().filter(|&b| site.well_inside(b, e)).collect();
            t.check(site.covers(e, &inside), || format!("{name}: generator {g} not covered by its well-inside set"));
        }
    }
    Ok(())
}

fn suite11(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    for (name, s) in [("chain2", examples::chain2()), ("tri", examples::tri())] {
        let r = scott_dual_check(&s, 3)?;
        t.check(r.passed(), || format!("{name}: {r:?}"));
        t.note(format!("{name}: {:?}", r.path));
    }
    Ok(())
}

fn grid() -> Vec<String> {
    (-12..=24).map(|k| format!("{k}/12")).collect()
}

fn suite12(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let u = upper_reals_oracle();
    let g = grid();
    let mut pairs = Vec::new();
    for a in &g {
        for b in &g {
            if parse_rational(a)? < parse_rational(b)? {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let covers: Vec<(String, Vec<String>)> = g.windows(3).map(|w| (w[1].clone(), vec![w[0].clone(), w[2].clone()])).collect();
    for q in ["0", "1/3", "1/2"] {
        let report = bounded_located_check(&u, rational_located(parse_rational(q)?), &pairs, &covers, 24);
        t.checks += report.tests.len();
        t.failures.extend(report.failures().map(|f| format!("ureal {q}: {} {}", f.kind, f.input)));
    }
    let c = cantor_oracle();
    let strings: Vec<String> = (0..5u32)
        .flat_map(|len| (0..1u32 << len).map(move |m| (0..len).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect()))
        .collect();
    let pairs: Vec<(String, String)> = strings
        .iter()
        .flat_map(|s| strings.iter().filter(|p| s.starts_with(p.as_str())).map(move |p| (s.clone(), p.clone())))
        .collect();
    let covers: Vec<(String, Vec<String>)> = strings.iter().map(|s| (s.clone(), vec![format!("{s}0"), format!("{s}1")])).collect();
    let reports = [
        ("full", bounded_located_check(&c, full_spread(), &pairs, &covers, 1)),
        ("zeros", bounded_located_check(&c, stream_point(|_| false), &pairs, &covers, 1)),
        ("alternating", bounded_located_check(&c, stream_point(|i| i % 2 == 1), &pairs, &covers, 1)),
    ];
    for (name, report) in reports {
        t.checks += report.tests.len();
        t.failures.extend(report.failures().map(|f| format!("cantor {name}: {} {}", f.kind, f.input)));
    }
    Ok(())
}

fn suite13(_o: &VerifyOptions, t: &mut Tally) -> Result<()> {
    let r = left_unit_check(&examples::bool4(), "bool4")?;
    t.checks += r.models * r.generators;
    t.check(r.passed(), || format!("bool4: {} disagreements", r.disagreements.len()));
    Ok(())
}

/// Run suite `id` (1-based).
pub fn run_suite(id: usize, opts: &VerifyOptions) -> Result<SuiteReport> {
    type Suite = fn(&VerifyOptions, &mut Tally) -> Result<()>;
    const SUITES: [Suite; SUITE_COUNT] = [
        suite1, suite2, suite3, suite4, suite5, suite6, suite7, suite8, suite9, suite10, suite11, suite12, suite13,
    ];
    if id == 0 || id > SUITE_COUNT {
        return Err(Error::Precondition(format!("no suite {id}; suites are 1..={SUITE_COUNT}")));
    }
    let start = Instant::now();
    let mut t = Tally::new();
    SUITES[id - 1](opts, &mut t)?;
    Ok(SuiteReport {
        id,
        name: SUITE_NAMES[id - 1],
        passed: t.failures.is_empty(),
        evidence_only: id == 12,
        checks: t.checks,
        failures: t.failures,
        notes: t.notes,
        millis: start.elapsed().as_millis(),
    })
}

/// Run every suite in order. An error in one suite is reported as its failure.
pub fn run_all(opts: &VerifyOptions) -> Vec<SuiteReport> {
    (1..=SUITE_COUNT)
        .map(|id| {
            run_suite(id, opts).unwrap_or_else(|e| SuiteReport {
                id,
                name: SUITE_NAMES[id - 1],
                passed: false,
                evidence_only: id == 12,
                checks: 0,
                failures: vec![format!("error: {e}")],
                notes: Vec::new(),
                millis: 0,
            })
        })
        .collect()
}

/// Suite id for a name or number.
pub fn suite_id(key: &str) -> Option<usize> {
    if let Ok(n) = key.parse::<usize>() {
        return (1..=SUITE_COUNT).contains(&n).then_some(n);
    }
    let key = key.to_lowercase().replace(['-', '_'], " ");
    SUITE_NAMES.iter().position(|n| n.replace('/', " ") == key.replace('/', " ")).map(|i| i + 1)
}
