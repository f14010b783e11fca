use std::sync::Arc;

use serde::Serialize;

use super::{closed_kfit, sub_meet};
use crate::core::{FinSubset, FiniteSite};
use crate::error::{bound, Result};

/// Largest base for the exhaustive enumeration of covers.
pub const SEARCH_BASE_BOUND: usize = 3;

/// A cover on a finite base, given by its saturated sets as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverTable {
    n: usize,
    closed: Vec<u64>,
}

impl CoverTable {
    pub fn closed_sets(&self) -> &[u64] {
        &self.closed
    }

    /// The least saturated set containing `u`.
    pub fn saturate(&self, u: u64) -> u64 {
        self.closed
            .iter()
            .copied()
            .filter(|&c| u & !c == 0)
            .fold((1u64 << self.n) - 1, |acc, c| acc & c)
    }

    pub fn covers(&self, a: u32, u: u64) -> bool {
        self.saturate(u) >> a & 1 == 1
    }
}

fn down_mask(site: &FiniteSite, u: u64) -> u64 {
    let mut out = 0u64;
    for x in FinSubset::from_mask(u).iter() {
        for y in site.below_bits(x).ones() {
            out |= 1 << y;
        }
    }
    out
}

/// Every cover on the base of `site` that extends its cover and obeys the
/// reflexivity, ≤, transitivity and localisation rules.
pub fn cover_tables(site: &FiniteSite) -> Result<Vec<CoverTable>> {
    let n = site.size();
    bound("cover enumeration base", n, SEARCH_BASE_BOUND)?;
    let full = (1u64 << n) - 1;
    let candidates: Vec<u64> = (0..full)
        .filter(|&m| down_mask(site, m) == m && site.is_saturated(&FinSubset::from_mask(m)))
        .collect();
    let mut out = Vec::new();
    for pick in 0u64..1 << candidates.len() {
        let mut closed: Vec<u64> = (0..candidates.len())
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| candidates[i])
            .collect();
        closed.push(full);
        let meet_closed = closed
            .iter()
            .all(|&a| closed.iter().all(|&b| closed.contains(&(a & b))));
        if !meet_closed {
            continue;
        }
        let t = CoverTable { n, closed };
        let localized = (0..=full).all(|u| {
            (0..=full).all(|v| {
                let uv = down_mask(site, u) & down_mask(site, v);
                t.saturate(u) & t.saturate(v) & !t.saturate(uv) == 0
            })
        });
        if localized {
            out.push(t);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectSearchReport {
    pub covers: usize,
    pub perfect: usize,
    /// Perfect covers equal to `⋀ {Closed_a ∨ KFit_A | a ◁' A}`.
    pub represented: usize,
}

impl PerfectSearchReport {
    pub fn passed(&self) -> bool {
        self.perfect == self.represented
    }
}

/// Enumerate all subtopologies of a small site, keep the perfect ones and check
/// that each is the meet of the `Closed_a ∨ KFit_A` it satisfies.
pub fn perfect_search(site: &FiniteSite) -> Result<PerfectSearchReport> {
    let tables = cover_tables(site)?;
    let parent = Arc::new(site.clone());
    let n = site.size();
    let full = (1u64 << n) - 1;
    let mut report = PerfectSearchReport {
        covers: tables.len(),
        perfect: 0,
        represented: 0,
    };
    for t in &tables {
        let perfect = site
            .elems()
            .all(|b| site.wb(b).iter().all(|a| t.covers(a, 1 << b)));
        if !perfect {
            continue;
        }
        report.perfect += 1;
        let mut gens = Vec::new();
        for a in site.elems() {
            for m in 0..=full {
                if t.covers(a, m) {
                    gens.push(closed_kfit(&parent, a, &FinSubset::from_mask(m))?);
                }
            }
        }
        let star = sub_meet(&gens)?;
        let same = (0..=full).all(|u| star.saturate(&FinSubset::from_mask(u)).to_mask() == t.saturate(u));
        if same {
            report.represented += 1;
        }
    }
    Ok(report)
}
