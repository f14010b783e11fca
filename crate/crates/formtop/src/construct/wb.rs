use crate::core::{FinSubset, FiniteSite};
use crate::error::{bound, Result};

use super::patch::{MaskSite, PatchKind, PatchLayout};

/// `wb_P` / `wb_L` by induction on `Fin P`: start from `wb(∅)` and add the generators of `elem`
/// in increasing order.
///
/// `wb_P(∅) = {{r(a)} | a ≪ S}`, `wb_L(∅) = {∅}`;
/// `wb(𝔸 ∪ {r(a)}) = {𝔹 ∪ {r(b)} | 𝔹 ∈ wb(𝔸), b ≪ a}`;
/// `wb(𝔸 ∪ {l(A)}) = {𝔹 ∪ {l(B)} | 𝔹 ∈ wb(𝔸), A ≪ B}`.
pub fn synthetic_wb(site: &FiniteSite, kind: PatchKind, elem: &FinSubset) -> Result<Vec<FinSubset>> {
    let n = site.size();
    bound("synthetic wb base", n, 8)?;
    let ms = MaskSite::new(site)?;
    let lay = PatchLayout { n };
    let lim = 1u32 << n;
    let mut cur: Vec<FinSubset> = match kind {
        PatchKind::Patch => (0..n as u32)
            .filter(|&a| ms.covered(1 << a, ms.full()))
            .map(|a| FinSubset::singleton(lay.r(a)))
            .collect(),
        PatchKind::Lawson => vec![FinSubset::empty()],
    };
    for g in elem.iter() {
        let steps: Vec<u32> = if g >= lim {
            let a = g - lim;
            (0..n as u32).filter(|&b| ms.covered(1 << b, 1 << a)).map(|b| lay.r(b)).collect()
        } else {
            (0..lim).filter(|&b| ms.covered(g, b)).collect()
        };
        let mut next: Vec<FinSubset> = cur.iter().flat_map(|b| steps.iter().map(move |&s| b.with(s))).collect();
        next.sort();
        next.dedup();
        cur = next;
    }
    crate::core::sort_canonical(&mut cur);
    Ok(cur)
}
