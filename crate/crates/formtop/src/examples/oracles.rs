use num_rational::Ratio;

use crate::core::OracleSite;
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn parse_rational(code: &str) -> Result<Rational> {
    let code = code.trim();
    let bad = || Error::Parse(format!("not a rational: `{code}`"));
    match code.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => code.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad()),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Cantor space: finite binary strings, `s ≤ t` when `t` is a prefix of `s`,
/// `a ◁ U` when `U` is a uniform bar below `a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CantorOracle;

pub fn cantor_oracle() -> CantorOracle {
    CantorOracle
}

impl OracleSite for CantorOracle {
    type Elem = String;

    fn label(&self) -> &str {
        "cantor"
    }

    fn parse(&self, code: &str) -> Result<String> {
        if code.chars().all(|c| c == '0' || c == '1') {
            Ok(code.to_string())
        } else {
            Err(Error::Parse(format!("not a binary string: `{code}`")))
        }
    }

    fn print(&self, e: &String) -> String {
        format!("\"{e}\"")
    }

    fn le(&self, a: &String, b: &String) -> bool {
        a.starts_with(b.as_str())
    }

    /// Checks every extension of `a` down to the longest string in `cover`; beyond that
    /// length nothing new can be barred, so the check is exact.
    fn cover_fin(&self, a: &String, cover: &[String]) -> bool {
        let depth = cover.iter().map(|s| s.len()).max().unwrap_or(0);
        fn barred(s: &mut String, cover: &[String], depth: usize) -> bool {
            if cover.iter().any(|b| s.starts_with(b.as_str())) {
                return true;
            }
            if s.len() >= depth {
                return false;
            }
            for bit in ['0', '1'] {
                s.push(bit);
                let ok = barred(s, cover, depth);
                s.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        barred(&mut a.clone(), cover, depth)
    }

    /// Every basic open of Cantor space is compact, so `wb(s) = {s}` at every stage.
    fn wb_stage(&self, a: &String, _n: u32) -> Vec<String> {
        vec![a.clone()]
    }

    /// Basic opens are compact, so `b ≪ a` iff `b ◁ {a}`, i.e. `a` is a prefix of `b`.
    fn way_below_staged(&self, b: &String, a: &String, _n: u32) -> bool {
        b.starts_with(a.as_str())
    }
}

/// Upper reals over the rationals: `q ◁ U` when every `p < q` lies below some member of `U`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UpperRealsOracle;

pub fn upper_reals_oracle() -> UpperRealsOracle {
    UpperRealsOracle
}

impl OracleSite for UpperRealsOracle {
    type Elem = Rational;

    fn label(&self) -> &str {
        "ureal"
    }

    fn parse(&self, code: &str) -> Result<Rational> {
        parse_rational(code)
    }

    fn print(&self, e: &Rational) -> String {
        format_rational(e)
    }

    fn le(&self, a: &Rational, b: &Rational) -> bool {
        a <= b
    }

    /// For finite `A` the condition reduces to `A` inhabited and `q ≤ max A`.
    fn cover_fin(&self, a: &Rational, cover: &[Rational]) -> bool {
        cover.iter().max().is_some_and(|m| a <= m)
    }

    /// `{q − k/m | 1 ≤ m ≤ n, 1 ≤ k ≤ n·m}`: grids of step `1/m` reaching `n` below `q`. Stages grow with `n`.
    fn wb_stage(&self, a: &Rational, n: u32) -> Vec<Rational> {
        let n = i64::from(n);
        let mut out: Vec<Rational> = (1..=n)
            .flat_map(|m| (1..=n * m).map(move |k| Ratio::new(k, m)))
            .map(|d| a - d)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn way_below_staged(&self, b: &Rational, a: &Rational, n: u32) -> bool {
        let diff = a - b;
        let n = i64::from(n);
        diff > Ratio::from_integer(0) && *diff.denom() <= n && diff <= Ratio::from_integer(n)
    }
}

/// `{p | q < p}`: the located point of the upper reals determined by `q`.
pub fn rational_located(q: Rational) -> impl Fn(&Rational) -> bool + Send + Sync {
    move |p: &Rational| q < *p
}

/// The whole binary spread.
pub fn full_spread() -> impl Fn(&String) -> bool + Send + Sync {
    |_s: &String| true
}

/// The prefixes of an infinite stream given by its bits.
pub fn stream_point<F>(bits: F) -> impl Fn(&String) -> bool + Send + Sync
where
    F: Fn(usize) -> bool + Send + Sync,
{
    move |s: &String| s.chars().enumerate().all(|(i, c)| (c == '1') == bits(i))
}
