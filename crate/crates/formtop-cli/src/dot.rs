//! DOT renderings of finite orders, with nodes in canonical order.

use formtop::core::{FinSubset, FiniteSite};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Hasse diagram of `labels` under `le`, drawn bottom to top.
pub fn hasse<F>(name: &str, labels: &[String], le: F) -> String
where
    F: Fn(usize, usize) -> bool,
{
    let n = labels.len();
    let lt = |a: usize, b: usize| a != b && le(a, b) && !le(b, a);
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    for l in labels {
        out.push_str(&format!("  {};\n", quote(l)));
    }
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push_str(&format!("  {} -> {};\n", quote(&labels[a]), quote(&labels[b])));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn site_order(name: &str, site: &FiniteSite) -> String {
    let labels: Vec<String> = site.names().to_vec();
    hasse(name, &labels, |a, b| site.le(a as u32, b as u32))
}

/// Subsets of a base ordered by inclusion.
pub fn subset_lattice(name: &str, site: &FiniteSite, sets: &[FinSubset]) -> String {
    let labels: Vec<String> = sets.iter().map(|s| site.format_subset(s)).collect();
    hasse(name, &labels, |a, b| sets[a].is_subset(&sets[b]))
}
