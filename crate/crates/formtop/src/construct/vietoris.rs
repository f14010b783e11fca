use crate::core::{classify, Elem, FinSubset, FiniteSite};
use crate::error::{bound, Error, Result};
use crate::located::{classify_subset, enumerate_located};
use crate::theory::{model_check_explain, Generator, GeometricTheory, ModelOracle};

use super::patch::{lawson_theory, located_to_model, MaskSite, PatchLayout, EXPANSION_ENTRY_BOUND, EXPLICIT_BASE_BOUND};

/// Generator numbering of `T_V`: `□A` is the bitmask of `A`, `◇a` is `2^n + a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VietorisLayout {
    pub n: usize,
}

impl VietorisLayout {
    pub fn boxed(&self, a: &FinSubset) -> u32 {
        a.to_mask() as u32
    }

    pub fn diamond(&self, a: Elem) -> u32 {
        (1u32 << self.n) + a
    }

    pub fn count(&self) -> usize {
        (1usize << self.n) + self.n
    }

    pub fn decode(&self, g: u32) -> Generator {
        if (g as usize) < 1 << self.n {
            Generator::Box(FinSubset::from_mask(g as u64))
        } else {
            Generator::Diamond(g - (1 << self.n))
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.count() as u32).map(|g| self.decode(g)).collect()
    }

    /// `(□-masks, ◇-mask)` of a generator set.
    pub fn split(&self, x: &FinSubset) -> (Vec<u32>, u32) {
        PatchLayout { n: self.n }.split(x)
    }
}

fn bits(m: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

pub(crate) fn require_compact_regular(site: &FiniteSite, what: &str) -> Result<()> {
    let c = classify(site);
    if c.compact_regular() {
        Ok(())
    } else {
        Err(Error::Classification(format!(
            "{what} needs a compact regular site (compact: {}, regular: {})",
            c.compact, c.regular
        )))
    }
}

/// `T_V`, expanded over the finite base.
pub fn vietoris_theory(site: &FiniteSite) -> Result<GeometricTheory> {
    require_compact_regular(site, "vietoris")?;
    let n = site.size();
    bound("vietoris generators 2^|base| for base", n, EXPLICIT_BASE_BOUND)?;
    let ms = MaskSite::new(site)?;
    let lay = VietorisLayout { n };
    let mut t = GeometricTheory::new("vietoris", site.names().to_vec(), lay.generators())?;
    let full = ms.full();
    let one = FinSubset::singleton;
    let ds = |m: u32| bits(m).map(|b| one(lay.diamond(b))).collect::<Vec<_>>();
    let mut entries = 0usize;
    let mut charge = |k: usize| -> Result<()> {
        entries += k;
        bound("vietoris disjunct entries", entries, EXPANSION_ENTRY_BOUND)
    };

    for a in 0..n as u32 {
        for m in 0..=full {
            if ms.sat[m as usize] >> a & 1 == 1 {
                charge(m.count_ones() as usize)?;
                t.push_axiom("◇1", [lay.diamond(a)], ds(m))?;
            }
        }
    }
    for a in 0..n as u32 {
        t.push_axiom("◇2", [lay.diamond(a)], ds(ms.sat[1usize << a]))?;
    }
    t.push_axiom("□1", [], (0..=full).map(one))?;
    for a in 0..=full {
        for b in 0..=full {
            if a != b && ms.covered(a, b) {
                t.push_axiom("□2", [a], [one(b)])?;
            }
        }
    }
    for a in 0..=full {
        for b in a..=full {
            let common = (ms.sat[a as usize] & ms.sat[b as usize]) as u64;
            let cs: Vec<FinSubset> = crate::core::submasks(common).map(|c| one(c as u32)).collect();
            charge(cs.len())?;
            t.push_axiom("□3", [a, b], cs)?;
        }
    }
    for a in 0..=full {
        let down_a = bits(a).fold(0u32, |acc, x| acc | ms.below[x as usize]);
        for x in 0..n as u32 {
            t.push_axiom("V1", [a, lay.diamond(x)], ds(down_a & ms.below[x as usize]))?;
        }
    }
    for a in 0..=full {
        for x in 0..n as u32 {
            t.push_axiom("V2", [a | 1 << x], [one(a), one(lay.diamond(x))])?;
        }
    }
    Ok(t)
}

/// Translations between located subsets, `T_L` models and `T_V` models of a compact regular site.
pub struct ModelTranslations {
    site: FiniteSite,
    ms: MaskSite,
    lawson: GeometricTheory,
    vietoris: GeometricTheory,
}

impl ModelTranslations {
    pub fn new(site: &FiniteSite) -> Result<Self> {
        require_compact_regular(site, "model translations")?;
        Ok(ModelTranslations {
            site: site.clone(),
            ms: MaskSite::new(site)?,
            lawson: lawson_theory(site)?,
            vietoris: vietoris_theory(site)?,
        })
    }

    pub fn lawson(&self) -> &GeometricTheory {
        &self.lawson
    }

    pub fn vietoris(&self) -> &GeometricTheory {
        &self.vietoris
    }

    fn vlay(&self) -> VietorisLayout {
        VietorisLayout { n: self.ms.n }
    }

    fn llay(&self) -> PatchLayout {
        PatchLayout { n: self.ms.n }
    }

    /// `S ◁ X`.
    fn covers_top(&self, x: u32) -> bool {
        self.ms.full() & !self.ms.sat[x as usize] == 0
    }

    /// `m_V = {◇a | a ∈ V} ∪ {□A | S ◁ ¬V ∪ A}`.
    pub fn loc_to_v(&self, v: &FinSubset) -> Result<FinSubset> {
        if !classify_subset(&self.site, v)?.located {
            return Err(Error::NotLocated);
        }
        let lay = self.vlay();
        let not_v = self.ms.full() & !(v.to_mask() as u32);
        let mut out: Vec<u32> = (0..=self.ms.full()).filter(|&a| self.covers_top(not_v | a)).collect();
        out.extend(v.iter().map(|a| lay.diamond(a)));
        Ok(FinSubset::new(out))
    }

    /// `{a | ◇a ∈ M}`.
    pub fn v_to_loc(&self, m: &FinSubset) -> Result<FinSubset> {
        self.check(&self.vietoris, m)?;
        Ok(FinSubset::from_mask(self.vlay().split(m).1 as u64))
    }

    /// `{◇a | r(a) ∈ m} ∪ {□A | ∃ l(B) ∈ m, S ◁ B ∪ A}`.
    pub fn l_to_v(&self, m: &FinSubset) -> Result<FinSubset> {
        self.check(&self.lawson, m)?;
        let (ls, r) = self.llay().split(m);
        let lay = self.vlay();
        let mut out: Vec<u32> = (0..=self.ms.full())
            .filter(|&a| ls.iter().any(|&b| self.covers_top(b | a)))
            .collect();
        out.extend(bits(r).map(|a| lay.diamond(a)));
        Ok(FinSubset::new(out))
    }

    /// `{r(a) | ◇a ∈ M} ∪ {l(A) | ∃ □B ∈ M, B ↓ A ◁ ∅}`.
    pub fn v_to_l(&self, m: &FinSubset) -> Result<FinSubset> {
        self.check(&self.vietoris, m)?;
        let (boxes, d) = self.vlay().split(m);
        let lay = self.llay();
        let empty = self.ms.sat[0];
        let mut out: Vec<u32> = (0..=self.ms.full())
            .filter(|&a| boxes.iter().any(|&b| self.ms.sat[a as usize] & self.ms.sat[b as usize] & !empty == 0))
            .collect();
        out.extend(bits(d).map(|a| lay.r(a)));
        Ok(FinSubset::new(out))
    }

    fn check(&self, t: &GeometricTheory, m: &FinSubset) -> Result<()> {
        model_check_explain(t, &ModelOracle::from_indices(t, m)).map_err(Error::NotModel)
    }

    pub fn loc_to_v_oracle(&self, v: &FinSubset) -> Result<ModelOracle> {
        Ok(ModelOracle::from_indices(&self.vietoris, &self.loc_to_v(v)?))
    }

    pub fn v_to_loc_oracle(&self, m: &ModelOracle) -> Result<FinSubset> {
        self.v_to_loc(&m.indices(&self.vietoris))
    }

    pub fn l_to_v_oracle(&self, m: &ModelOracle) -> Result<ModelOracle> {
        Ok(ModelOracle::from_indices(&self.vietoris, &self.l_to_v(&m.indices(&self.lawson))?))
    }

    pub fn v_to_l_oracle(&self, m: &ModelOracle) -> Result<ModelOracle> {
        Ok(ModelOracle::from_indices(&self.lawson, &self.v_to_l(&m.indices(&self.vietoris))?))
    }

    /// Models of `T_V`, from the located subsets.
    pub fn vietoris_models(&self, max_base: usize) -> Result<Vec<FinSubset>> {
        let mut out = enumerate_located(&self.site, max_base)?
            .iter()
            .map(|v| self.loc_to_v(v))
            .collect::<Result<Vec<_>>>()?;
        crate::core::sort_canonical(&mut out);
        Ok(out)
    }

    pub fn lawson_models(&self, max_base: usize) -> Result<Vec<FinSubset>> {
        let mut out: Vec<FinSubset> = enumerate_located(&self.site, max_base)?
            .iter()
            .map(|v| located_to_model(&self.site, v))
            .collect();
        crate::core::sort_canonical(&mut out);
        Ok(out)
    }
}

pub fn model_translations(site: &FiniteSite) -> Result<ModelTranslations> {
    ModelTranslations::new(site)
}
