use std::collections::BTreeSet;

use crate::core::{Axiom, Elem, FinSubset, FiniteSite, Localization};
use crate::error::{bound, Error, Result};

/// A finite partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    le: Vec<Vec<bool>>,
}

impl Poset {
    /// `pairs` lists `(a, b)` with `a ≤ b`; reflexive-transitive closure is taken and antisymmetry checked.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Order(format!("pair ({a}, {b}) outside poset of size {n}")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::Order(format!("{} and {} are equivalent", names[i], names[j])));
                }
            }
        }
        Ok(Poset { names, le })
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new(default_names(n), &pairs).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::new(default_names(n), &[]).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    /// All posets with `n` elements up to isomorphism, for `n ≤ 4`.
    pub fn all_up_to_iso(n: usize) -> Result<Vec<Poset>> {
        bound("poset enumeration size", n, 4)?;
        let off: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for m in 0u64..1 << off.len() {
            let pairs: Vec<_> = off.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, p)| *p).collect();
            // only accept relations that are already transitive and antisymmetric
            let Ok(p) = Poset::new(default_names(n), &pairs) else { continue };
            let closed = (0..n).all(|i| (0..n).all(|j| i == j || p.le[i][j] == pairs.contains(&(i, j))));
            if !closed {
                continue;
            }
            let canon = perms
                .iter()
                .map(|perm| {
                    let mut c = 0u64;
                    for i in 0..n {
                        for j in 0..n {
                            if p.le[i][j] {
                                c |= 1 << (perm[i] * n + perm[j]);
                            }
                        }
                    }
                    c
                })
                .min()
                .unwrap_or(0);
            if seen.insert(canon) {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// A finite distributive lattice with precomputed join and meet tables.
#[derive(Clone, Debug)]
pub struct DistLattice {
    names: Vec<String>,
    le: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl DistLattice {
    /// Builds the lattice from its order; fails unless all binary joins/meets exist and distribute.
    pub fn from_order(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let p = Poset::new(names, pairs)?;
        let n = p.size();
        if n == 0 {
            return Err(Error::Order("empty carrier".into()));
        }
        let le = p.le.clone();
        let bound_of = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&c| if upper { le[a][c] && le[b][c] } else { le[c][a] && le[c][b] })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| if upper { le[c][d] } else { le[d][c] }))
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                join[a][b] = bound_of(a, b, true)
                    .ok_or_else(|| Error::Order(format!("no join of {} and {}", p.names[a], p.names[b])))?;
                meet[a][b] = bound_of(a, b, false)
                    .ok_or_else(|| Error::Order(format!("no meet of {} and {}", p.names[a], p.names[b])))?;
            }
        }
        let bottom = (0..n).find(|&c| (0..n).all(|d| le[c][d])).ok_or_else(|| Error::Order("no bottom".into()))?;
        let top = (0..n).find(|&c| (0..n).all(|d| le[d][c])).ok_or_else(|| Error::Order("no top".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        return Err(Error::Order(format!(
                            "not distributive at ({}, {}, {})",
                            p.names[a], p.names[b], p.names[c]
                        )));
                    }
                }
            }
        }
        Ok(DistLattice {
            names: p.names,
            le,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    fn is_prime_filter(&self, f: &[bool]) -> bool {
        let n = self.size();
        if !f[self.top] || f[self.bottom] {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if f[a] && self.le[a][b] && !f[b] {
                    return false;
                }
                if f[a] && f[b] && !f[self.meet[a][b]] {
                    return false;
                }
                if f[self.join[a][b]] && !f[a] && !f[b] {
                    return false;
                }
            }
        }
        true
    }
}

/// The lattice of down-sets of `p`, ordered by inclusion. Elements are named by their members.
pub fn birkhoff(p: &Poset) -> Result<DistLattice> {
    let n = p.size();
    bound("birkhoff poset size", n, 6)?;
    let mut downsets: Vec<FinSubset> = (0u64..1 << n)
        .filter(|&m| (0..n).all(|b| m >> b & 1 == 0 || (0..n).all(|a| !p.le(a, b) || m >> a & 1 == 1)))
        .map(FinSubset::from_mask)
        .collect();
    crate::core::sort_canonical(&mut downsets);
    let names: Vec<String> = downsets
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().map(|i| p.names()[i as usize].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in downsets.iter().enumerate() {
        for (j, b) in downsets.iter().enumerate() {
            if a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    DistLattice::from_order(names, &pairs)
}

/// The spectral site of a distributive lattice: base = carrier, `0 ◁ ∅`, and `a ◁ {b, c}`
/// for each decomposition `a = b ∨ c` with `b, c < a`.
pub fn spectral_site(d: &DistLattice) -> Result<FiniteSite> {
    spectral_site_with(d, false)
}

/// Variant emitting `a ◁ {b, c}` for every pair with `b ∨ c = a`.
pub fn spectral_site_all_pairs(d: &DistLattice) -> Result<FiniteSite> {
    spectral_site_with(d, true)
}

fn spectral_site_with(d: &DistLattice, all_pairs: bool) -> Result<FiniteSite> {
    let n = d.size();
    let mut order = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if d.le(a, b) {
                order.push((a as Elem, b as Elem));
            }
        }
    }
    let mut axioms = vec![Axiom::new(d.bottom() as Elem, FinSubset::empty())];
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                if d.join(b, c) != a {
                    continue;
                }
                if !all_pairs && (b == a || c == a) {
                    continue;
                }
                axioms.push(Axiom::new(a as Elem, FinSubset::new([b as Elem, c as Elem])));
            }
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push((a as Elem, b as Elem, d.meet(a, b) as Elem));
        }
    }
    FiniteSite::new(d.names().to_vec(), &order, axioms, Localization::Apply)?.with_meet(d.top() as Elem, &table)
}

/// Prime filters, in canonical order. Filters of a finite lattice are principal, so the
/// candidates are the up-sets `↑x`; each is tested against the prime-filter conditions.
pub fn prime_filters(d: &DistLattice) -> Vec<FinSubset> {
    let n = d.size();
    let mut out: Vec<FinSubset> = (0..n)
        .filter_map(|x| {
            let f: Vec<bool> = (0..n).map(|y| d.le(x, y)).collect();
            d.is_prime_filter(&f)
                .then(|| (0..n).filter(|&y| f[y]).map(|y| y as u32).collect())
        })
        .collect();
    crate::core::sort_canonical(&mut out);
    out
}

/// Prime filters found by testing every subset of the carrier; for small lattices only.
pub fn prime_filters_exhaustive(d: &DistLattice) -> Result<Vec<FinSubset>> {
    let n = d.size();
    bound("exhaustive filter search carrier", n, 16)?;
    let mut out: Vec<FinSubset> = (0u64..1 << n)
        .filter(|&m| {
            let f: Vec<bool> = (0..n).map(|y| m >> y & 1 == 1).collect();
            d.is_prime_filter(&f)
        })
        .map(FinSubset::from_mask)
        .collect();
    crate::core::sort_canonical(&mut out);
    Ok(out)
}
