use std::sync::Arc;

use crate::core::{classify, Elem, FinSubset, FiniteSite, Localization};
use crate::error::{bound, Error, Result};
use crate::theory::{extend_with_preimages, CoverSpace, LazySite, SiteMap};

use super::lower::sigma_l;
use super::patch::{construction_theory, lawson_lazy, patch_lazy, PatchKind, PatchLayout};
use super::scott::degroot;

/// Largest target base for [`extend_perfect`], which expands `T_P` explicitly.
pub const EXTEND_BASE_BOUND: usize = 4;

/// `ε_P : Patch(S) → S`, `𝔸 ε_P a ⇔ 𝔸 ◁_P {{r(a)}}`.
pub fn eps_p(site: &FiniteSite) -> Result<SiteMap<LazySite, FiniteSite>> {
    into_site("ε_P", Arc::new(patch_lazy(site)?), site)
}

/// `ε_L : L(S) → S`, `𝔸 ε_L a ⇔ 𝔸 ◁_L {{r(a)}}`.
pub fn eps_l(site: &FiniteSite) -> Result<SiteMap<LazySite, FiniteSite>> {
    into_site("ε_L", Arc::new(lawson_lazy(site)?), site)
}

fn into_site(label: &str, source: Arc<LazySite>, site: &FiniteSite) -> Result<SiteMap<LazySite, FiniteSite>> {
    let lay = PatchLayout { n: site.size() };
    Ok(SiteMap::new(label, source, Arc::new(site.clone()), move |a: &Elem| {
        vec![FinSubset::singleton(lay.r(*a))]
    }))
}

/// `ε_d : Patch(S) → S^d`, `𝔸 ε_d {l(A)} ⇔ 𝔸 ◁_P {{l(A)}}`. Both sides number `l(A)` by the mask of `A`.
pub fn eps_d(site: &FiniteSite) -> Result<SiteMap<LazySite, LazySite>> {
    let dual = degroot(site)?;
    let target = Arc::new(LazySite::from_theory(Arc::new(dual.theory)));
    Ok(SiteMap::new("ε_d", Arc::new(patch_lazy(site)?), target, |a: &FinSubset| vec![a.clone()]))
}

pub struct CanonicalMaps {
    pub eps_p: SiteMap<LazySite, FiniteSite>,
    pub eps_l: SiteMap<LazySite, FiniteSite>,
    /// Present when the site is stably compact.
    pub eps_d: Option<SiteMap<LazySite, LazySite>>,
    pub sigma_l: SiteMap<LazySite, FiniteSite>,
}

pub fn canonical_maps(site: &FiniteSite) -> Result<CanonicalMaps> {
    let eps_d = if classify(site).stably_compact() { Some(eps_d(site)?) } else { None };
    Ok(CanonicalMaps {
        eps_p: eps_p(site)?,
        eps_l: eps_l(site)?,
        eps_d,
        sigma_l: sigma_l(site)?,
    })
}

/// The one-point site.
pub fn terminal_site() -> FiniteSite {
    FiniteSite::new(vec!["*".to_string()], &[], vec![], Localization::Apply).expect("terminal site")
}

/// The map from the one-point site picking the point `x`.
pub fn point_map(site: &FiniteSite, x: &FinSubset) -> SiteMap<FiniteSite, FiniteSite> {
    let x = x.clone();
    SiteMap::new(
        format!("point {}", site.format_subset(&x)),
        Arc::new(terminal_site()),
        Arc::new(site.clone()),
        move |a: &Elem| if x.contains(*a) { vec![0] } else { vec![] },
    )
}

/// The generators whose preimage covers the single element of a map from the one-point site.
pub fn point_of_map(map: &SiteMap<FiniteSite, LazySite>) -> FinSubset {
    (0..map.target().generator_count() as u32)
        .filter(|&g| CoverSpace::covers(&**map.source(), &0, &map.preimage(&FinSubset::singleton(g))))
        .collect()
}

/// `r̃ : S′ → Patch(S)` for a perfect map `r : S′ → S` from a compact regular site:
/// `b r̃ {r(a)} ⇔ b r a` and `b r̃ {l(A)} ⇔ ∃B ≫ A, b ∈ (r⁻B)*`. Checks `ε_P ∘ r̃ = r`.
pub fn extend_perfect(r: &SiteMap<FiniteSite, FiniteSite>, kind: PatchKind) -> Result<SiteMap<FiniteSite, LazySite>> {
    let src = r.source().clone();
    let site = r.target().clone();
    if !classify(&src).compact_regular() {
        return Err(Error::Classification("extension needs a compact regular source".into()));
    }
    bound("extension target base", site.size(), EXTEND_BASE_BOUND)?;
    r.check_basic().map_err(Error::Precondition)?;
    if kind == PatchKind::Patch {
        r.check_ftm1().map_err(Error::Precondition)?;
        r.check_ftm2().map_err(Error::Precondition)?;
    }
    r.check_perfect().map_err(Error::Precondition)?;

    let n = site.size();
    let lay = PatchLayout { n };
    let theory = Arc::new(construction_theory(&site, kind)?);
    let mut gens: Vec<Vec<Elem>> = vec![Vec::new(); lay.count()];
    for a in 0u64..1 << n {
        let sa = FinSubset::from_mask(a);
        let mut acc = FinSubset::empty();
        for b in 0u64..1 << n {
            let sb = FinSubset::from_mask(b);
            if site.way_below_set(&sa, &sb) {
                let pre = FinSubset::new(r.preimage_set(sb.as_slice()));
                acc = acc.union(&src.star(&pre));
            }
        }
        gens[lay.l(&sa) as usize] = acc.into_vec();
    }
    for a in site.elems() {
        gens[lay.r(a) as usize] = r.preimage(&a);
    }
    let mut ext = extend_with_preimages(src, theory, gens)?;
    ext.label = format!("{}~", r.label);

    let eps = into_site("ε", ext.target().clone(), &site)?;
    if !ext.compose(&eps).map_eq(r) {
        return Err(Error::Internal("ε ∘ r̃ differs from r".into()));
    }
    Ok(ext)
}
