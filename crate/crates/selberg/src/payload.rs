//! Structured payloads for signed-set elements.
//!
//! Payloads are cheap to clone (tuples share their backing storage) and
//! have a total order, so signed sets can keep their elements canonically
//! sorted and pairings can be keyed on payload values directly.

use crate::poly::VarId;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Payload {
    Int(i64),
    Var(VarId),
    Sym(&'static str),
    Tuple(Arc<[Payload]>),
}

impl Payload {
    pub fn tuple(items: Vec<Payload>) -> Self {
        Payload::Tuple(items.into())
    }

    pub fn empty_tuple() -> Self {
        Payload::tuple(Vec::new())
    }

    pub fn pair(a: Payload, b: Payload) -> Self {
        Payload::tuple(vec![a, b])
    }

    pub fn ints(items: impl IntoIterator<Item = i64>) -> Self {
        Payload::tuple(items.into_iter().map(Payload::Int).collect())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Payload::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Payload]> {
        match self {
            Payload::Tuple(items) => Some(items),
            _ => None,
        }
    }

    /// Tuple contents, or an error naming `what` for diagnostics.
    pub fn expect_tuple(&self, what: &str) -> crate::Result<&[Payload]> {
        self.as_tuple()
            .ok_or_else(|| crate::Error::mismatch(format!("{what}: expected tuple, got {self}")))
    }

    /// Canonical text form, used as the stable key in JSON exports.
    pub fn text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Int(v) => write!(f, "{v}"),
            Payload::Var(v) => write!(f, "{v}"),
            Payload::Sym(s) => write!(f, "#{s}"),
            Payload::Tuple(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_is_nested_sexpr() {
        let p = Payload::tuple(vec![
            Payload::Int(3),
            Payload::Var(VarId::x(2)),
            Payload::Sym("L"),
            Payload::tuple(vec![]),
        ]);
        assert_eq!(p.text(), "(3 x2 #L ())");
    }

    #[test]
    fn ordering_is_total_and_structural() {
        let a = Payload::ints([1, 2]);
        let b = Payload::ints([1, 3]);
        assert!(a < b);
        assert!(Payload::Int(5) < Payload::Var(VarId::x(1)));
        assert_eq!(a, Payload::ints([1, 2]));
    }
}
