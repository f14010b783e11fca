use crate::core::{Elem, FinSubset};

/// Propositional symbol of a geometric theory. Payloads index into the source site's base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Plain(String),
    L(FinSubset),
    R(Elem),
    Box(FinSubset),
    Diamond(Elem),
    Pair(Elem, FinSubset),
}

impl Generator {
    /// Printable code, using `names` for the base elements.
    pub fn code(&self, names: &[String]) -> String {
        let set = |s: &FinSubset| {
            let parts: Vec<&str> = s.iter().map(|e| names[e as usize].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        };
        match self {
            Generator::Plain(s) => s.clone(),
            Generator::L(a) => format!("l({})", set(a)),
            Generator::R(a) => format!("r({})", names[*a as usize]),
            Generator::Box(a) => format!("□{}", set(a)),
            Generator::Diamond(a) => format!("◇{}", names[*a as usize]),
            Generator::Pair(a, s) => format!("({},{})", names[*a as usize], set(s)),
        }
    }
}
