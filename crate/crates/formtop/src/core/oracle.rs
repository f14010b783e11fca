use std::fmt::Debug;

use crate::error::Result;

/// A site over a coded, possibly infinite base. Only finite-cover questions are decided;
/// way-below is approximated in stages.
pub trait OracleSite {
    type Elem: Clone + Ord + Debug;

    fn label(&self) -> &str;
    fn parse(&self, code: &str) -> Result<Self::Elem>;
    fn print(&self, e: &Self::Elem) -> String;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// Decides `a ◁ A` for finite `A`.
    fn cover_fin(&self, a: &Self::Elem, cover: &[Self::Elem]) -> bool;
    /// Finite approximation of `wb(a)`, monotone in `n`.
    fn wb_stage(&self, a: &Self::Elem, n: u32) -> Vec<Self::Elem>;

    /// `b` shows up in some stage `≤ n` of `wb(a)`.
    fn way_below_staged(&self, b: &Self::Elem, a: &Self::Elem, n: u32) -> bool {
        self.wb_stage(a, n).contains(b)
    }
}
