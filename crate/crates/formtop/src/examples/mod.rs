//! Named fixtures, Birkhoff spectral sites, truncated Pω and the oracle sites.

mod lattice;
mod oracles;
mod random;

pub use lattice::{
    birkhoff, prime_filters, prime_filters_exhaustive, spectral_site, spectral_site_all_pairs,
    DistLattice, Poset,
};
pub use random::random_site;
pub use oracles::{
    cantor_oracle, format_rational, full_spread, parse_rational, rational_located, stream_point,
    upper_reals_oracle, CantorOracle, Rational, UpperRealsOracle,
};

use crate::core::{Axiom, Elem, FinSubset, FiniteSite, Localization};
use crate::error::{bound, Error, Result};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `{0, 1}` with `0 ≤ 1` and no axioms.
pub fn chain2() -> FiniteSite {
    FiniteSite::new(names(&["0", "1"]), &[(0, 1)], vec![], Localization::Apply).expect("chain2")
}

/// `chain2` with its meet structure (top `1`, meet = min).
pub fn chain2_spectral() -> FiniteSite {
    chain2()
        .with_meet(1, &[(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)])
        .expect("chain2 meets")
}

/// `{a, b, c}`, discrete, with the single axiom `a ◁ {b, c}`.
///
/// Kept as a basic cover: localising over the discrete order would turn the axiom into `a ◁ ∅`.
pub fn tri() -> FiniteSite {
    FiniteSite::new(
        names(&["a", "b", "c"]),
        &[],
        vec![Axiom::new(0, FinSubset::new([1, 2]))],
        Localization::Off,
    )
    .expect("tri")
}

/// Spectral site of the three-element chain `{0, m, 1}`.
pub fn dl3() -> FiniteSite {
    let d = DistLattice::from_order(names(&["0", "m", "1"]), &[(0, 1), (1, 2)]).expect("3-chain");
    spectral_site(&d).expect("dl3")
}

/// Spectral site of `2^{p,q} = {0, p, q, 1}`.
pub fn bool4() -> FiniteSite {
    let d = DistLattice::from_order(names(&["0", "p", "q", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)])
        .expect("four-element Boolean algebra");
    spectral_site(&d).expect("bool4")
}

/// Spectral site of the eight-element Boolean algebra (down-sets of a three-element antichain).
pub fn bool8() -> FiniteSite {
    let d = birkhoff(&Poset::antichain(3)).expect("eight-element Boolean algebra");
    spectral_site(&d).expect("bool8")
}

/// Finite subsets of `{0, …, n−1}` ordered by reverse inclusion, no axioms.
pub fn pomega_trunc(n: usize) -> Result<FiniteSite> {
    bound("pω truncation", n, 4)?;
    let mut sets: Vec<FinSubset> = FinSubset::new(0..n as u32).subsets();
    crate::core::sort_canonical(&mut sets);
    let labels: Vec<String> = sets
        .iter()
        .map(|s| {
            let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let mut order = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if b.is_subset(a) {
                order.push((i as Elem, j as Elem));
            }
        }
    }
    FiniteSite::new(labels, &order, vec![], Localization::Apply)
}

pub fn pomega3() -> FiniteSite {
    pomega_trunc(3).expect("pω3")
}

/// Fixture names accepted by [`fixture`].
pub const FIXTURES: &[&str] = &["chain2", "chain2s", "tri", "dl3", "bool4", "bool8", "pomega3"];

pub fn fixture(name: &str) -> Result<FiniteSite> {
    match name {
        "chain2" => Ok(chain2()),
        "chain2s" | "chain2-spectral" => Ok(chain2_spectral()),
        "tri" => Ok(tri()),
        "dl3" => Ok(dl3()),
        "bool4" => Ok(bool4()),
        "bool8" => Ok(bool8()),
        "pomega3" | "pω3" => Ok(pomega3()),
        _ => Err(Error::UnknownElement(format!("fixture {name}"))),
    }
}

#[cfg(test)]
mod tests;
