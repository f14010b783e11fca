use serde::{Deserialize, Serialize};

use super::site::{Axiom, FiniteSite, Localization};
use super::subset::FinSubset;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomDoc {
    pub head: String,
    pub cover: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetDoc {
    pub top: String,
    pub table: Vec<[String; 3]>,
}

/// Interchange form of a finite site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteDoc {
    pub base: Vec<String>,
    #[serde(default)]
    pub order: Vec<[String; 2]>,
    #[serde(default)]
    pub axioms: Vec<AxiomDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<MeetDoc>,
    /// Defaults to true: the axioms are localised on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localized: Option<bool>,
}

impl SiteDoc {
    pub fn from_site(site: &FiniteSite) -> Self {
        let name = |e: u32| site.name(e).to_string();
        let order = site.order_pairs().into_iter().map(|(a, b)| [name(a), name(b)]).collect();
        let axioms = site
            .generating_axioms()
            .iter()
            .map(|ax| AxiomDoc {
                head: name(ax.head),
                cover: ax.cover.iter().map(name).collect(),
            })
            .collect();
        let meet = site.meet_structure().map(|m| MeetDoc {
            top: name(m.top()),
            table: site
                .elems()
                .flat_map(|a| site.elems().map(move |b| (a, b)))
                .map(|(a, b)| [name(a), name(b), name(m.meet(a, b))])
                .collect(),
        });
        SiteDoc {
            base: site.names().to_vec(),
            order,
            axioms,
            meet,
            localized: if site.is_localized() { None } else { Some(false) },
        }
    }

    pub fn to_site(&self) -> Result<FiniteSite> {
        let idx = |s: &str| -> Result<u32> {
            self.base
                .iter()
                .position(|b| b == s)
                .map(|i| i as u32)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let order = self
            .order
            .iter()
            .map(|[a, b]| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let axioms = self
            .axioms
            .iter()
            .map(|ax| {
                let cover = ax.cover.iter().map(|c| idx(c)).collect::<Result<Vec<_>>>()?;
                Ok(Axiom::new(idx(&ax.head)?, FinSubset::new(cover)))
            })
            .collect::<Result<Vec<_>>>()?;
        let loc = if self.localized.unwrap_or(true) {
            Localization::Apply
        } else {
            Localization::Off
        };
        let site = FiniteSite::new(self.base.clone(), &order, axioms, loc)?;
        match &self.meet {
            None => Ok(site),
            Some(m) => {
                let table = m
                    .table
                    .iter()
                    .map(|[a, b, c]| Ok((idx(a)?, idx(b)?, idx(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                site.with_meet(idx(&m.top)?, &table)
            }
        }
    }
}

pub fn site_to_json(site: &FiniteSite) -> String {
    serde_json::to_string_pretty(&SiteDoc::from_site(site)).expect("site serializes")
}

pub fn site_from_json(text: &str) -> Result<FiniteSite> {
    let doc: SiteDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_site()
}
