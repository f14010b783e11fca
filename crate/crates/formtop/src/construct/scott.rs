use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::core::{classify, Axiom, FinSubset, FiniteSite, Localization};
use crate::error::{bound, Error, Result};
use crate::theory::{present, Generator, GeometricTheory, PRESENT_BOUND};

use super::lower::{lower_theory, LowerForm};
use super::patch::MaskSite;

/// Largest base for the Scott site over `Fin(base)`.
pub const SCOTT_BASE_BOUND: usize = 8;
/// Largest base for the de Groot dual, whose (d4) families range over subsets of `Fin(base)`.
pub const DEGROOT_BASE_BOUND: usize = 4;
/// Largest lattice `Sat(S)` whose filters are enumerated by brute force.
pub const FILTER_LATTICE_BOUND: usize = 20;

fn fin_names(site: &FiniteSite) -> Vec<String> {
    (0u64..1 << site.size())
        .map(|m| site.format_subset(&FinSubset::from_mask(m)))
        .collect()
}

/// Down-sets of `Fin(base)` under `A ≤ B ⇔ B ⊆ A`: the supersets of each mask.
fn reverse_inclusion(n: usize) -> Vec<FixedBitSet> {
    let size = 1usize << n;
    let full = (size - 1) as u64;
    (0..size as u64)
        .map(|b| {
            let mut row = FixedBitSet::with_capacity(size);
            for extra in crate::core::submasks(full & !b) {
                row.insert((b | extra) as usize);
            }
            row
        })
        .collect()
}

/// `↟A = {B ∈ Fin(base) | A ≪ B}`, as bitmasks of `B`.
pub fn up_arrow(site: &FiniteSite, a: &FinSubset) -> Result<FinSubset> {
    bound("↟ base", site.size(), 16)?;
    Ok((0u64..1 << site.size())
        .filter(|&b| site.way_below_set(a, &FinSubset::from_mask(b)))
        .map(|b| b as u32)
        .collect())
}

/// `A ◁_Σ 𝒰 ⇔ ↟A ⊆ ⋃_{B ∈ 𝒰} ↟B`, evaluated directly.
pub fn scott_covers_literal(site: &FiniteSite, a: &FinSubset, family: &[FinSubset]) -> Result<bool> {
    let ups = family.iter().map(|b| up_arrow(site, b)).collect::<Result<Vec<_>>>()?;
    Ok(up_arrow(site, a)?.iter().all(|c| ups.iter().any(|u| u.contains(c))))
}

/// `Σ(S)` over `Fin(base)`, with an axiom `A ◁ {B}` whenever `↟A ⊆ ↟B`.
///
/// `A ∈ ↟A` on a finite site, so a union of `↟B` covers `↟A` exactly when one of them
/// does, and singleton covers generate the whole relation.
pub fn scott_site(site: &FiniteSite) -> Result<FiniteSite> {
    let n = site.size();
    bound("Scott site base", n, SCOTT_BASE_BOUND)?;
    let ms = MaskSite::new(site)?;
    let size = 1u32 << n;
    // ↟A ⊆ ↟B ⇔ B ◁ A
    let mut axioms = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a & b != b && ms.covered(b, a) {
                axioms.push(Axiom::new(a, FinSubset::singleton(b)));
            }
        }
    }
    FiniteSite::from_downsets(fin_names(site), reverse_inclusion(n), axioms, Localization::Assume)
}

/// `⋁^F {↟Aᵢ}` as a set of masks `B`. On a finite site `Aᵢ ≪ Aᵢ`, so the witnesses
/// `Bᵢ ≫ Aᵢ` may be taken to be `Aᵢ`: the join is `{B | A₀ ↓ ⋯ ↓ A_{k−1} ≪ B}`,
/// and the empty join is `{B | S ◁ B}`.
pub fn join_f(site: &FiniteSite, family: &[FinSubset]) -> Result<FinSubset> {
    let ms = MaskSite::new(site)?;
    let meet = family.iter().fold(ms.full(), |acc, a| acc & ms.sat[a.to_mask() as usize]);
    Ok((0..1u32 << ms.n).filter(|&b| meet & !ms.sat[b as usize] == 0).collect())
}

/// `⋁^F` with the existential witnesses `Bᵢ ≫ Aᵢ` enumerated over `Fin(base)`.
pub fn join_f_literal(site: &FiniteSite, family: &[FinSubset]) -> Result<FinSubset> {
    let n = site.size();
    bound("literal ⋁^F base", n, 3)?;
    bound("literal ⋁^F family", family.len(), 2)?;
    let all: Vec<FinSubset> = (0u64..1 << n).map(FinSubset::from_mask).collect();
    if family.is_empty() {
        return Ok((0..all.len() as u32).filter(|&b| site.covers_set(&site.base(), &all[b as usize])).collect());
    }
    let witnesses: Vec<Vec<&FinSubset>> = family
        .iter()
        .map(|a| all.iter().filter(|b| site.way_below_set(a, b)).collect())
        .collect();
    let mut out = Vec::new();
    for (bi, b) in all.iter().enumerate() {
        let mut idx = vec![0usize; family.len()];
        let found = 'search: loop {
            let meet = idx
                .iter()
                .enumerate()
                .skip(1)
                .fold(witnesses[0][idx[0]].clone(), |acc, (i, &j)| site.down(&acc, witnesses[i][j]));
            if site.way_below_set(&meet, b) {
                break 'search true;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break 'search false;
                }
                idx[k] += 1;
                if idx[k] < witnesses[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        };
        if found {
            out.push(bi as u32);
        }
    }
    Ok(FinSubset::new(out))
}

/// The de Groot dual: the theory `T^d` over `l(A)` with (d1)–(d4), and the site `S^D` over `Fin(base)`.
pub struct DeGroot {
    pub theory: GeometricTheory,
    pub site: FiniteSite,
    /// Number of ⊆-minimal families used for (d4)/(D4).
    pub d4_instances: usize,
}

/// `(A, family)` for every ⊆-minimal family with `↟A ⊆ ⋁^F {↟Aᵢ}`.
fn d4_families(ms: &MaskSite) -> Vec<(u32, Vec<u32>)> {
    let size = 1usize << ms.n;
    let families = 1usize << size;
    // meet of saturations per family
    let mut meet = vec![ms.full(); families];
    for f in 1..families {
        let low = f.trailing_zeros() as usize;
        meet[f] = meet[f & (f - 1)] & ms.sat[low];
    }
    let mut out = Vec::new();
    for a in 0..size as u32 {
        let up: Vec<u32> = (0..size as u32).filter(|&b| ms.covered(a, b)).collect();
        // ↟A ⊆ ⋁^F(F) ⇔ every B ∈ ↟A lies above the meet of F
        let good: Vec<bool> = (0..families)
            .map(|f| up.iter().all(|&b| meet[f] & !ms.sat[b as usize] == 0))
            .collect();
        for f in 0..families {
            if good[f] && (0..size).filter(|i| f >> i & 1 == 1).all(|i| !good[f & !(1 << i)]) {
                out.push((a, (0..size as u32).filter(|i| f >> i & 1 == 1).collect()));
            }
        }
    }
    out
}

pub fn degroot(site: &FiniteSite) -> Result<DeGroot> {
    let c = classify(site);
    if !c.stably_compact() {
        return Err(Error::Classification("de Groot dual needs a stably compact site".into()));
    }
    let n = site.size();
    bound("de Groot base", n, DEGROOT_BASE_BOUND)?;
    let ms = MaskSite::new(site)?;
    let size = 1u32 << n;
    let d4 = d4_families(&ms);
    let one = FinSubset::singleton;

    let gens = (0..size as u64).map(|m| Generator::L(FinSubset::from_mask(m))).collect();
    let mut t = GeometricTheory::new("degroot", site.names().to_vec(), gens)?;
    t.push_axiom("d1", [], [one(0)])?;
    for a in 0..size {
        for b in a + 1..size {
            t.push_axiom("d2", [a, b], [one(a | b)])?;
        }
    }
    for a in 0..size {
        t.push_axiom("d3", [a], (0..size).filter(|&b| ms.covered(a, b)).map(one))?;
    }
    for (a, fam) in &d4 {
        t.push_axiom("d4", [*a], fam.iter().map(|&b| one(b)))?;
    }

    let mut axioms = Vec::new();
    for a in 0..size {
        axioms.push(Axiom::new(a, (0..size).filter(|&b| ms.covered(a, b)).collect()));
    }
    for (a, fam) in &d4 {
        axioms.push(Axiom::new(*a, FinSubset::new(fam.iter().copied())));
    }
    let dsite = FiniteSite::from_downsets(fin_names(site), reverse_inclusion(n), axioms, Localization::Apply)?;
    Ok(DeGroot {
        theory: t,
        site: dsite,
        d4_instances: d4.len(),
    })
}

/// All saturated subsets of a site, as sets of base elements, in canonical order.
pub fn saturated_subsets(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    let n = site.size();
    bound("saturated-subset enumeration base", n, max_base.min(20))?;
    let mut out: Vec<FinSubset> = (0u64..1 << n)
        .map(|m| site.saturate(&FinSubset::from_mask(m)))
        .collect();
    crate::core::sort_canonical(&mut out);
    out.dedup();
    Ok(out)
}

/// Inclusion order on a family of sets.
fn inclusion(sets: &[FinSubset]) -> Vec<Vec<bool>> {
    sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b)).collect()).collect()
}

/// Scott open filters of the lattice `sets` ordered by inclusion. On a finite lattice every
/// up-set is Scott open, so these are the inhabited up-sets closed under binary meets.
pub fn scott_open_filters(sets: &[FinSubset]) -> Result<Vec<Vec<usize>>> {
    let k = sets.len();
    bound("filter lattice size", k, FILTER_LATTICE_BOUND)?;
    let le = inclusion(sets);
    let glb = |i: usize, j: usize| -> Option<usize> {
        let lower: Vec<usize> = (0..k).filter(|&c| le[c][i] && le[c][j]).collect();
        lower.iter().copied().find(|&c| lower.iter().all(|&d| le[d][c]))
    };
    let mut out = Vec::new();
    for f in 1u64..1 << k {
        let has = |i: usize| f >> i & 1 == 1;
        let up = (0..k).all(|i| !has(i) || (0..k).all(|j| !le[i][j] || has(j)));
        let meets = up
            && (0..k).all(|i| {
                !has(i) || (0..k).all(|j| !has(j) || glb(i, j).is_some_and(has))
            });
        if meets {
            out.push((0..k).filter(|&i| has(i)).collect());
        }
    }
    Ok(out)
}

/// Order isomorphism between two finite posets, by backtracking.
pub fn order_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let deg = |p: &[Vec<bool>], i: usize| {
        let up = (0..p.len()).filter(|&j| p[i][j]).count();
        let down = (0..p.len()).filter(|&j| p[j][i]).count();
        (up, down)
    };
    let da: Vec<_> = (0..n).map(|i| deg(a, i)).collect();
    let db: Vec<_> = (0..n).map(|i| deg(b, i)).collect();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    fn go(i: usize, a: &[Vec<bool>], b: &[Vec<bool>], da: &[(usize, usize)], db: &[(usize, usize)], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || da[i] != db[j] {
                continue;
            }
            if (0..i).all(|p| a[p][i] == b[map[p]][j] && a[i][p] == b[j][map[p]]) {
                map.push(j);
                used[j] = true;
                if go(i + 1, a, b, da, db, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(0, a, b, &da, &db, &mut Vec::new(), &mut vec![false; n])
}

/// `∅* = {∅}`, `(𝒱 ∪ {A})* = {B ∪ C | B ∈ 𝒱*, C ∈ PFin(A)}`, with `PFin(A)` the inhabited subsets of `A`.
pub fn star_family(family: &[FinSubset]) -> Vec<FinSubset> {
    let mut cur = vec![FinSubset::empty()];
    for a in family {
        let inhabited: Vec<FinSubset> = a.subsets().into_iter().filter(|c| !c.is_empty()).collect();
        let mut next: Vec<FinSubset> = cur.iter().flat_map(|b| inhabited.iter().map(move |c| b.union(c))).collect();
        next.sort();
        next.dedup();
        cur = next;
    }
    crate::core::sort_canonical(&mut cur);
    cur
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DualPath {
    /// `Sat(Σ(S))` against `Sat(L(S)^D)`, counts and order.
    FullFrame,
    /// `|Sat(Σ(S))|` against the Scott open filters of `Sat(L(S))`.
    FilterCount,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScottDualReport {
    pub path: DualPath,
    pub scott_opens: usize,
    pub dual_opens: usize,
    pub order_isomorphic: Option<bool>,
}

impl ScottDualReport {
    pub fn passed(&self) -> bool {
        self.scott_opens == self.dual_opens && self.order_isomorphic != Some(false)
    }
}

/// Compare `Σ(S)` with the de Groot dual of the lower powerlocale `L(S)`.
pub fn scott_dual_check(site: &FiniteSite, max_base: usize) -> Result<ScottDualReport> {
    let n = site.size();
    bound("Scott dual base", n, max_base.min(3))?;
    let sigma = scott_site(site)?;
    let scott_sat = saturated_subsets(&sigma, 16)?;
    let lower = present(&lower_theory(site, LowerForm::Axioms)?, PRESENT_BOUND)?;
    if n <= 2 {
        let dual = degroot(&lower)?;
        let dual_sat = saturated_subsets(&dual.site, 16)?;
        let iso = order_isomorphic(&inclusion(&scott_sat), &inclusion(&dual_sat));
        Ok(ScottDualReport {
            path: DualPath::FullFrame,
            scott_opens: scott_sat.len(),
            dual_opens: dual_sat.len(),
            order_isomorphic: Some(iso),
        })
    } else {
        let lower_sat = saturated_subsets(&lower, 16)?;
        let filters = scott_open_filters(&lower_sat)?;
        Ok(ScottDualReport {
            path: DualPath::FilterCount,
            scott_opens: scott_sat.len(),
            dual_opens: filters.len(),
            order_isomorphic: None,
        })
    }
}
