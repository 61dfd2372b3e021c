//! Signed sets: finite sets of distinct payloads, each carrying a signed
//! monomial weight.
//!
//! Key operations:
//! - negation (flip every weight, keep payloads),
//! - disjoint sum (payloads tagged `#L` / `#R`, or caller-supplied tags),
//! - product (payloads become flat tuples, weights multiply),
//! - total weight as an exact polynomial.

use crate::payload::Payload;
use crate::poly::{IntPolynomial, Monomial};
use crate::{Error, Result};

pub const SUM_LEFT: Payload = Payload::Sym("L");
pub const SUM_RIGHT: Payload = Payload::Sym("R");

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedElement {
    pub payload: Payload,
    pub weight: Monomial,
}

impl SignedElement {
    pub fn new(payload: Payload, weight: Monomial) -> Self {
        SignedElement { payload, weight }
    }
}

/// A signed set. Elements are kept sorted by payload and payloads are
/// distinct, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SignedSet {
    elems: Vec<SignedElement>,
}

impl SignedSet {
    pub fn empty() -> Self {
        SignedSet { elems: Vec::new() }
    }

    pub fn from_elems(mut elems: Vec<SignedElement>) -> Result<Self> {
        elems.sort_by(|a, b| a.payload.cmp(&b.payload));
        for w in elems.windows(2) {
            if w[0].payload == w[1].payload {
                return Err(Error::pre(format!(
                    "duplicate payload in signed set: {}",
                    w[0].payload
                )));
            }
        }
        Ok(SignedSet { elems })
    }

    pub fn singleton(payload: Payload, weight: Monomial) -> Self {
        SignedSet { elems: vec![SignedElement { payload, weight }] }
    }

    /// The unweighted set `[k] = {1, ..., k}`; empty when k = 0.
    pub fn range(k: u64) -> Self {
        SignedSet {
            elems: (1..=k as i64)
                .map(|i| SignedElement::new(Payload::Int(i), Monomial::one()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignedElement> {
        self.elems.iter()
    }

    pub fn get(&self, payload: &Payload) -> Option<&Monomial> {
        self.elems
            .binary_search_by(|e| e.payload.cmp(payload))
            .ok()
            .map(|i| &self.elems[i].weight)
    }

    pub fn contains(&self, payload: &Payload) -> bool {
        self.get(payload).is_some()
    }

    /// Sum of all element weights as an exact polynomial.
    pub fn weight(&self) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for e in &self.elems {
            out.add_monomial(&e.weight);
        }
        out
    }

    /// Same payloads, every weight negated.
    pub fn negated(&self) -> Self {
        SignedSet {
            elems: self
                .elems
                .iter()
                .map(|e| SignedElement::new(e.payload.clone(), e.weight.negated()))
                .collect(),
        }
    }

    /// Binary disjoint sum with the reserved tags `#L` / `#R`.
    pub fn sum(&self, other: &Self) -> Self {
        let mut elems = Vec::with_capacity(self.len() + other.len());
        for e in &self.elems {
            elems.push(SignedElement::new(
                Payload::pair(SUM_LEFT, e.payload.clone()),
                e.weight.clone(),
            ));
        }
        for e in &other.elems {
            elems.push(SignedElement::new(
                Payload::pair(SUM_RIGHT, e.payload.clone()),
                e.weight.clone(),
            ));
        }
        SignedSet::from_elems(elems).expect("tagged payloads are distinct")
    }

    /// `self - other`: sum with the right part negated.
    pub fn difference(&self, other: &Self) -> Self {
        self.sum(&other.negated())
    }

    /// N-ary disjoint sum with caller-supplied distinct tags.
    pub fn sum_many(parts: &[(Payload, SignedSet)]) -> Result<Self> {
        let mut elems = Vec::new();
        for (tag, part) in parts {
            for e in part.iter() {
                elems.push(SignedElement::new(
                    Payload::pair(tag.clone(), e.payload.clone()),
                    e.weight.clone(),
                ));
            }
        }
        SignedSet::from_elems(elems).map_err(|_| Error::pre("sum_many: duplicate tag"))
    }

    /// Product of the factors: payloads are flat tuples with one component
    /// per factor, weights multiply. The empty product is the one-element
    /// set `{()}` with weight 1.
    pub fn product_many(factors: &[&SignedSet]) -> Self {
        let mut elems = vec![SignedElement::new(Payload::empty_tuple(), Monomial::one())];
        for factor in factors {
            let mut next = Vec::with_capacity(elems.len() * factor.len());
            for acc in &elems {
                let acc_items = acc.payload.as_tuple().expect("product accumulator");
                for e in factor.iter() {
                    let mut items = acc_items.to_vec();
                    items.push(e.payload.clone());
                    next.push(SignedElement::new(
                        Payload::tuple(items),
                        acc.weight.mul(&e.weight),
                    ));
                }
            }
            elems = next;
        }
        SignedSet::from_elems(elems).expect("product payloads are distinct")
    }

    pub fn product(&self, other: &Self) -> Self {
        SignedSet::product_many(&[self, other])
    }

    /// Relabel payloads through `f`; weights are untouched. Fails if `f`
    /// is not injective on this set.
    pub fn map_payloads(&self, f: impl Fn(&Payload) -> Result<Payload>) -> Result<Self> {
        let mut elems = Vec::with_capacity(self.len());
        for e in &self.elems {
            elems.push(SignedElement::new(f(&e.payload)?, e.weight.clone()));
        }
        let n = elems.len();
        let out = SignedSet::from_elems(elems)
            .map_err(|_| Error::mismatch("map_payloads: relabeling is not injective"))?;
        debug_assert_eq!(out.len(), n);
        Ok(out)
    }

    /// Rewrite weights through `f`; payloads are untouched.
    pub fn reweighted(&self, f: impl Fn(&Payload, &Monomial) -> Monomial) -> Self {
        SignedSet {
            elems: self
                .elems
                .iter()
                .map(|e| SignedElement::new(e.payload.clone(), f(&e.payload, &e.weight)))
                .collect(),
        }
    }

    /// True if every weight is exactly +1.
    pub fn is_unweighted(&self) -> bool {
        self.elems.iter().all(|e| e.weight == Monomial::one())
    }

    /// JSON form: array of `{"payload": key, "weight": monomial-text}` in
    /// canonical payload order.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.elems
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "payload": e.payload.text(),
                        "weight": e.weight.text(),
                    })
                })
                .collect(),
        )
    }
}
