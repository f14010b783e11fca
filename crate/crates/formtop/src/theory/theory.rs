use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::generator::Generator;
use crate::core::FinSubset;
use crate::error::{Error, Result};

/// `⋀ante ⊢ ⋁ᵢ ⋀disjunctsᵢ` over generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeometricAxiom {
    pub ante: FinSubset,
    pub disjuncts: Vec<FinSubset>,
}

/// Borrowed view of an axiom stored in a theory.
#[derive(Clone, Copy, Debug)]
pub struct AxiomRef<'a> {
    pub index: usize,
    pub family: &'a str,
    pub ante: &'a [u32],
    offsets: &'a [u32],
    data: &'a [u32],
}

impl<'a> AxiomRef<'a> {
    pub fn disjunct_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn disjunct(&self, i: usize) -> &'a [u32] {
        &self.data[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn disjuncts(&self) -> impl Iterator<Item = &'a [u32]> + 'a {
        let (offsets, data) = (self.offsets, self.data);
        offsets.windows(2).map(move |w| &data[w[0] as usize..w[1] as usize])
    }

    pub fn to_owned(&self) -> GeometricAxiom {
        GeometricAxiom {
            ante: FinSubset::new(self.ante.iter().copied()),
            disjuncts: self.disjuncts().map(|d| FinSubset::new(d.iter().copied())).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoryStats {
    pub generators: usize,
    pub axioms: usize,
    /// Instances per axiom family, in family order.
    pub expansions: BTreeMap<String, usize>,
    pub disjunct_entries: usize,
}

/// Finite propositional geometric theory. Axioms live in flat arrays; large constructions
/// produce millions of disjunct entries.
#[derive(Clone, Debug)]
pub struct GeometricTheory {
    provenance: String,
    site_names: Vec<String>,
    generators: Vec<Generator>,
    gen_index: HashMap<Generator, u32>,
    families: Vec<String>,
    family_of: Vec<u16>,
    ante_off: Vec<u32>,
    ante_data: Vec<u32>,
    disj_start: Vec<u32>,
    disj_off: Vec<u32>,
    disj_data: Vec<u32>,
}

impl GeometricTheory {
    /// `site_names` are the base names used when printing generator payloads.
    pub fn new(provenance: impl Into<String>, site_names: Vec<String>, generators: Vec<Generator>) -> Result<Self> {
        let mut gen_index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if gen_index.insert(g.clone(), i as u32).is_some() {
                return Err(Error::Precondition(format!("duplicate generator {}", g.code(&site_names))));
            }
        }
        Ok(GeometricTheory {
            provenance: provenance.into(),
            site_names,
            generators,
            gen_index,
            families: Vec::new(),
            family_of: Vec::new(),
            ante_off: vec![0],
            ante_data: Vec::new(),
            disj_start: vec![0],
            disj_off: vec![0],
            disj_data: Vec::new(),
        })
    }

    /// A theory over plain named generators.
    pub fn plain(provenance: impl Into<String>, names: &[&str]) -> Result<Self> {
        let gens = names.iter().map(|s| Generator::Plain(s.to_string())).collect();
        Self::new(provenance, Vec::new(), gens)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn site_names(&self) -> &[String] {
        &self.site_names
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, g: &Generator) -> Option<u32> {
        self.gen_index.get(g).copied()
    }

    pub fn gen(&self, g: &Generator) -> Result<u32> {
        self.index_of(g)
            .ok_or_else(|| Error::UnknownElement(g.code(&self.site_names)))
    }

    pub fn code(&self, i: u32) -> String {
        self.generators[i as usize].code(&self.site_names)
    }

    pub fn format_set(&self, s: &[u32]) -> String {
        let parts: Vec<String> = s.iter().map(|&g| self.code(g)).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn family_id(&mut self, family: &str) -> u16 {
        match self.families.iter().position(|f| f == family) {
            Some(i) => i as u16,
            None => {
                self.families.push(family.to_string());
                (self.families.len() - 1) as u16
            }
        }
    }

    /// Append an axiom from generator indices; `ante` and each disjunct are canonicalised.
    pub fn push_axiom<I, D>(&mut self, family: &str, ante: I, disjuncts: D) -> Result<()>
    where
        I: IntoIterator<Item = u32>,
        D: IntoIterator<Item = FinSubset>,
    {
        let n = self.generators.len() as u32;
        let ante = FinSubset::new(ante);
        if let Some(g) = ante.iter().find(|&g| g >= n) {
            return Err(Error::OutOfBase(g, n as usize));
        }
        let fam = self.family_id(family);
        self.family_of.push(fam);
        self.ante_data.extend(ante.iter());
        self.ante_off.push(self.ante_data.len() as u32);
        for d in disjuncts {
            if let Some(g) = d.iter().find(|&g| g >= n) {
                return Err(Error::OutOfBase(g, n as usize));
            }
            self.disj_data.extend(d.iter());
            self.disj_off.push(self.disj_data.len() as u32);
        }
        self.disj_start.push((self.disj_off.len() - 1) as u32);
        Ok(())
    }

    /// Append an axiom given by generators.
    pub fn add(&mut self, family: &str, ante: &[Generator], disjuncts: &[Vec<Generator>]) -> Result<()> {
        let ante = ante.iter().map(|g| self.gen(g)).collect::<Result<Vec<_>>>()?;
        let disj = disjuncts
            .iter()
            .map(|d| d.iter().map(|g| self.gen(g)).collect::<Result<FinSubset>>())
            .collect::<Result<Vec<_>>>()?;
        self.push_axiom(family, ante, disj)
    }

    pub fn axiom_count(&self) -> usize {
        self.family_of.len()
    }

    pub fn axiom(&self, i: usize) -> AxiomRef<'_> {
        let (d0, d1) = (self.disj_start[i] as usize, self.disj_start[i + 1] as usize);
        AxiomRef {
            index: i,
            family: &self.families[self.family_of[i] as usize],
            ante: &self.ante_data[self.ante_off[i] as usize..self.ante_off[i + 1] as usize],
            offsets: &self.disj_off[d0..=d1],
            data: &self.disj_data,
        }
    }

    pub fn axioms(&self) -> impl Iterator<Item = AxiomRef<'_>> + '_ {
        (0..self.axiom_count()).map(move |i| self.axiom(i))
    }

    pub fn families(&self) -> &[String] {
        &self.families
    }

    /// Human-readable form of axiom `i`, tagged with its family.
    pub fn describe(&self, i: usize) -> String {
        let ax = self.axiom(i);
        let ante = if ax.ante.is_empty() {
            "⊤".to_string()
        } else {
            ax.ante.iter().map(|&g| self.code(g)).collect::<Vec<_>>().join(" ∧ ")
        };
        let disj = if ax.disjunct_count() == 0 {
            "⊥".to_string()
        } else {
            ax.disjuncts()
                .map(|d| {
                    if d.is_empty() {
                        "⊤".to_string()
                    } else {
                        d.iter().map(|&g| self.code(g)).collect::<Vec<_>>().join(" ∧ ")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ∨ ")
        };
        format!("({}) {ante} ⊢ {disj}", ax.family)
    }

    pub fn stats(&self) -> TheoryStats {
        let mut expansions = BTreeMap::new();
        for &f in &self.family_of {
            *expansions.entry(self.families[f as usize].clone()).or_insert(0) += 1;
        }
        TheoryStats {
            generators: self.generators.len(),
            axioms: self.axiom_count(),
            expansions,
            disjunct_entries: self.disj_data.len(),
        }
    }

    pub fn to_doc(&self) -> TheoryDoc {
        TheoryDoc {
            generators: (0..self.generators.len() as u32).map(|g| self.code(g)).collect(),
            axioms: self
                .axioms()
                .map(|ax| AxiomDoc {
                    family: Some(ax.family.to_string()),
                    ante: ax.ante.iter().map(|&g| self.code(g)).collect(),
                    disjuncts: ax.disjuncts().map(|d| d.iter().map(|&g| self.code(g)).collect()).collect(),
                })
                .collect(),
            provenance: self.provenance.clone(),
            stats: Some(self.stats()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("theory serializes")
    }

    /// Reads a theory; generators become plain symbols named by their codes.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TheoryDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.to_theory()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub ante: Vec<String>,
    pub disjuncts: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoryDoc {
    pub generators: Vec<String>,
    pub axioms: Vec<AxiomDoc>,
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none", skip_deserializing)]
    pub stats: Option<TheoryStats>,
}

impl TheoryDoc {
    pub fn to_theory(&self) -> Result<GeometricTheory> {
        let gens: Vec<Generator> = self.generators.iter().map(|s| Generator::Plain(s.clone())).collect();
        let mut t = GeometricTheory::new(self.provenance.clone(), Vec::new(), gens)?;
        for ax in &self.axioms {
            let plain = |s: &String| Generator::Plain(s.clone());
            let ante: Vec<Generator> = ax.ante.iter().map(plain).collect();
            let disj: Vec<Vec<Generator>> = ax.disjuncts.iter().map(|d| d.iter().map(plain).collect()).collect();
            t.add(ax.family.as_deref().unwrap_or("axiom"), &ante, &disj)?;
        }
        Ok(t)
    }
}
