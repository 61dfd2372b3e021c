//! Sijections: explicitly materialized sign-reversing involutions on the
//! disjoint union of two signed sets.
//!
//! A sijection between signed sets A and B is an involution on the union
//! A + B with no fixed points, such that pairs inside one side carry
//! opposite weights and pairs across sides carry equal weights. It
//! certifies that A and B have the same total weight.
//!
//! Key operations:
//! - [`Sijection::identity`], [`Sijection::from_bijection`]: all-cross pairings
//! - [`Sijection::reversed`], [`Sijection::negated`]
//! - [`Sijection::compose`]: alternating-path composition; elements of the
//!   shared middle set that cancel internally drop out
//! - [`Sijection::lift_sum`], [`Sijection::lift_product`]: congruence lifts
//! - [`Sijection::verify`]: full re-check with violations reported as data

use crate::payload::Payload;
use crate::signed::SignedSet;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Side::L => "L",
            Side::R => "R",
        }
    }
}

/// One element address: which side it lives on, and its payload there.
pub type Addr = (Side, Payload);

#[derive(Clone, Debug)]
pub struct Sijection {
    left: SignedSet,
    right: SignedSet,
    pairs: HashMap<Addr, Addr>,
}

/// A single verification failure, as data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// A pairing key does not belong to its claimed side.
    UnknownElement { addr: String },
    /// An element of left or right has no pairing entry.
    Unpaired { addr: String },
    /// pairs[pairs[k]] != k.
    NotInvolutive { addr: String },
    /// An element is paired with itself.
    SelfPaired { addr: String },
    /// A same-side pair whose weights are not opposite.
    SameSideWeights { a: String, b: String },
    /// A cross-side pair whose weights are not equal.
    CrossWeights { a: String, b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownElement { addr } => write!(f, "unknown element {addr}"),
            Violation::Unpaired { addr } => write!(f, "unpaired element {addr}"),
            Violation::NotInvolutive { addr } => write!(f, "pairing not involutive at {addr}"),
            Violation::SelfPaired { addr } => write!(f, "element paired with itself: {addr}"),
            Violation::SameSideWeights { a, b } => {
                write!(f, "same-side pair without opposite weights: {a} ~ {b}")
            }
            Violation::CrossWeights { a, b } => {
                write!(f, "cross pair without equal weights: {a} ~ {b}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn addr_text(addr: &Addr) -> String {
    format!("{}:{}", addr.0.letter(), addr.1)
}

impl Sijection {
    /// Build from an explicit pair list and verify. Each unordered pair
    /// may appear once (either orientation); both directions are installed.
    pub fn new(left: SignedSet, right: SignedSet, pair_list: Vec<(Addr, Addr)>) -> Result<Self> {
        let mut pairs = HashMap::with_capacity(pair_list.len() * 2);
        for (a, b) in pair_list {
            if let Some(prev) = pairs.get(&a) {
                if *prev != b {
                    return Err(Error::InvalidPairing(format!(
                        "conflicting partners for {}",
                        addr_text(&a)
                    )));
                }
                continue;
            }
            if let Some(prev) = pairs.get(&b) {
                if *prev != a {
                    return Err(Error::InvalidPairing(format!(
                        "conflicting partners for {}",
                        addr_text(&b)
                    )));
                }
                continue;
            }
            pairs.insert(a.clone(), b.clone());
            pairs.insert(b, a);
        }
        let s = Sijection { left, right, pairs };
        let report = s.verify();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidPairing(format!(
                "{v} ({} violations total)",
                report.violations.len()
            )));
        }
        Ok(s)
    }

    pub fn left(&self) -> &SignedSet {
        &self.left
    }

    pub fn right(&self) -> &SignedSet {
        &self.right
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len() / 2
    }

    /// The partner of an element address, if the address is paired.
    pub fn pair_of(&self, addr: &Addr) -> Option<&Addr> {
        self.pairs.get(addr)
    }

    /// The identity sijection on a set: every element pairs with its copy
    /// on the other side.
    pub fn identity(set: &SignedSet) -> Self {
        let mut pairs = HashMap::with_capacity(set.len() * 2);
        for e in set.iter() {
            let a = (Side::L, e.payload.clone());
            let b = (Side::R, e.payload.clone());
            pairs.insert(a.clone(), b.clone());
            pairs.insert(b, a);
        }
        Sijection { left: set.clone(), right: set.clone(), pairs }
    }

    /// An all-cross sijection from an explicit weight-preserving bijection
    /// of payloads.
    pub fn from_bijection(
        left: &SignedSet,
        right: &SignedSet,
        f: impl Fn(&Payload) -> Result<Payload>,
    ) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::mismatch(format!(
                "bijection between sets of sizes {} and {}",
                left.len(),
                right.len()
            )));
        }
        let mut pairs = HashMap::with_capacity(left.len() * 2);
        for e in left.iter() {
            let img = f(&e.payload)?;
            match right.get(&img) {
                Some(w) if *w == e.weight => {}
                Some(_) => {
                    return Err(Error::mismatch(format!(
                        "bijection image {img} has a different weight than {}",
                        e.payload
                    )))
                }
                None => {
                    return Err(Error::mismatch(format!(
                        "bijection image {img} not present on the right"
                    )))
                }
            }
            let a = (Side::L, e.payload.clone());
            let b = (Side::R, img);
            if pairs.contains_key(&b) {
                return Err(Error::mismatch("bijection is not injective".to_string()));
            }
            pairs.insert(a.clone(), b.clone());
            pairs.insert(b, a);
        }
        Ok(Sijection { left: left.clone(), right: right.clone(), pairs })
    }

    /// Swap the two sides.
    pub fn reversed(&self) -> Self {
        let flip = |a: &Addr| (a.0.flip(), a.1.clone());
        Sijection {
            left: self.right.clone(),
            right: self.left.clone(),
            pairs: self.pairs.iter().map(|(k, v)| (flip(k), flip(v))).collect(),
        }
    }

    /// The same pairing between the negated sets.
    pub fn negated(&self) -> Self {
        Sijection {
            left: self.left.negated(),
            right: self.right.negated(),
            pairs: self.pairs.clone(),
        }
    }

    /// Compose with another sijection whose left set is this one's right
    /// set (structurally equal). Alternating paths through the shared
    /// middle set produce the endpoint pairing; middle elements whose
    /// paths close up cancel internally and vanish.
    pub fn compose(&self, other: &Sijection) -> Result<Sijection> {
        if self.right != other.left {
            return Err(Error::mismatch(format!(
                "compose: middle sets differ ({} vs {} elements{})",
                self.right.len(),
                other.left.len(),
                first_middle_diff(&self.right, &other.left)
            )));
        }
        let mut pair_list = Vec::new();
        let mut done_left: std::collections::HashSet<Payload> = std::collections::HashSet::new();
        let mut done_right: std::collections::HashSet<Payload> = std::collections::HashSet::new();

        for e in self.left.iter() {
            if done_left.contains(&e.payload) {
                continue;
            }
            done_left.insert(e.payload.clone());
            let end = self.chase_forward(&e.payload, other)?;
            match end {
                (Side::L, p) => {
                    // landed back in the composite's left set
                    done_left.insert(p.clone());
                    pair_list.push(((Side::L, e.payload.clone()), (Side::L, p)));
                }
                (Side::R, p) => {
                    done_right.insert(p.clone());
                    pair_list.push(((Side::L, e.payload.clone()), (Side::R, p)));
                }
            }
        }

        for e in other.right.iter() {
            if done_right.contains(&e.payload) {
                continue;
            }
            done_right.insert(e.payload.clone());
            let end = self.chase_backward(&e.payload, other)?;
            match end {
                (Side::R, p) => {
                    done_right.insert(p.clone());
                    pair_list.push(((Side::R, e.payload.clone()), (Side::R, p)));
                }
                (Side::L, _) => {
                    // left endpoints were all consumed in the first sweep
                    return Err(Error::mismatch(
                        "compose: backward chase reached an unconsumed left element",
                    ));
                }
            }
        }

        Sijection::new(self.left.clone(), other.right.clone(), pair_list)
    }

    /// Walk from a left element of `self` to its composite endpoint.
    fn chase_forward(&self, start: &Payload, other: &Sijection) -> Result<Addr> {
        let mut cur = self
            .pairs
            .get(&(Side::L, start.clone()))
            .ok_or_else(|| Error::mismatch(format!("no pairing for left element {start}")))?
            .clone();
        let cap = self.pairs.len() + other.pairs.len() + 2;
        for _ in 0..cap {
            match cur.0 {
                // same-side partner inside self's left: composite same-side pair
                Side::L => return Ok((Side::L, cur.1)),
                Side::R => {
                    // in the middle set; continue through `other`
                    let nxt = other
                        .pairs
                        .get(&(Side::L, cur.1.clone()))
                        .ok_or_else(|| {
                            Error::mismatch(format!("middle element {} unpaired", cur.1))
                        })?
                        .clone();
                    match nxt.0 {
                        Side::R => return Ok((Side::R, nxt.1)),
                        Side::L => {
                            // still in the middle; continue through `self`
                            cur = self
                                .pairs
                                .get(&(Side::R, nxt.1.clone()))
                                .ok_or_else(|| {
                                    Error::mismatch(format!("middle element {} unpaired", nxt.1))
                                })?
                                .clone();
                        }
                    }
                }
            }
        }
        Err(Error::mismatch("compose: path did not terminate"))
    }

    /// Walk from a right element of `other` to its composite endpoint.
    fn chase_backward(&self, start: &Payload, other: &Sijection) -> Result<Addr> {
        let mut cur = other
            .pairs
            .get(&(Side::R, start.clone()))
            .ok_or_else(|| Error::mismatch(format!("no pairing for right element {start}")))?
            .clone();
        let cap = self.pairs.len() + other.pairs.len() + 2;
        for _ in 0..cap {
            match cur.0 {
                Side::R => return Ok((Side::R, cur.1)),
                Side::L => {
                    let nxt = self
                        .pairs
                        .get(&(Side::R, cur.1.clone()))
                        .ok_or_else(|| {
                            Error::mismatch(format!("middle element {} unpaired", cur.1))
                        })?
                        .clone();
                    match nxt.0 {
                        Side::L => return Ok((Side::L, nxt.1)),
                        Side::R => {
                            cur = other
                                .pairs
                                .get(&(Side::L, nxt.1.clone()))
                                .ok_or_else(|| {
                                    Error::mismatch(format!("middle element {} unpaired", nxt.1))
                                })?
                                .clone();
                        }
                    }
                }
            }
        }
        Err(Error::mismatch("compose: path did not terminate"))
    }

    /// Lift a family of sijections across a tagged disjoint sum.
    pub fn lift_sum(parts: &[(Payload, &Sijection)]) -> Result<Sijection> {
        let left = SignedSet::sum_many(
            &parts
                .iter()
                .map(|(t, s)| (t.clone(), s.left.clone()))
                .collect::<Vec<_>>(),
        )?;
        let right = SignedSet::sum_many(
            &parts
                .iter()
                .map(|(t, s)| (t.clone(), s.right.clone()))
                .collect::<Vec<_>>(),
        )?;
        let mut pair_list = Vec::new();
        for (tag, part) in parts {
            for (a, b) in part.pairs.iter() {
                pair_list.push((
                    (a.0, Payload::pair(tag.clone(), a.1.clone())),
                    (b.0, Payload::pair(tag.clone(), b.1.clone())),
                ));
            }
        }
        Sijection::new(left, right, pair_list)
    }

    /// Lift the binary sum with the reserved `#L` / `#R` tags.
    pub fn lift_sum_binary(f: &Sijection, g: &Sijection) -> Result<Sijection> {
        Sijection::lift_sum(&[
            (crate::signed::SUM_LEFT, f),
            (crate::signed::SUM_RIGHT, g),
        ])
    }

    /// Lift a list of sijections across the product of their sides.
    ///
    /// An element tuple follows its first coordinate whose partner stays on
    /// the same side (giving a same-side pair); if every coordinate maps
    /// across, the whole tuple maps across coordinatewise.
    pub fn lift_product(parts: &[&Sijection]) -> Result<Sijection> {
        let lefts: Vec<&SignedSet> = parts.iter().map(|s| &s.left).collect();
        let rights: Vec<&SignedSet> = parts.iter().map(|s| &s.right).collect();
        let left = SignedSet::product_many(&lefts);
        let right = SignedSet::product_many(&rights);

        let mut pair_list = Vec::new();
        let mut emit = |side: Side, payload: &Payload| -> Result<()> {
            let items = payload.expect_tuple("product element")?;
            debug_assert_eq!(items.len(), parts.len());
            let mut images = Vec::with_capacity(items.len());
            let mut flipped: Option<usize> = None;
            for (i, item) in items.iter().enumerate() {
                let img = parts[i]
                    .pairs
                    .get(&(side, item.clone()))
                    .ok_or_else(|| Error::mismatch(format!("unpaired coordinate {item}")))?;
                if img.0 == side {
                    flipped = Some(i);
                    images.push(img.1.clone());
                    break;
                }
                images.push(img.1.clone());
            }
            let partner = match flipped {
                Some(i) => {
                    let mut out = items.to_vec();
                    out[i] = images[i].clone();
                    (side, Payload::tuple(out))
                }
                None => (side.flip(), Payload::tuple(images)),
            };
            pair_list.push(((side, payload.clone()), partner));
            Ok(())
        };
        for e in left.iter() {
            emit(Side::L, &e.payload)?;
        }
        for e in right.iter() {
            emit(Side::R, &e.payload)?;
        }
        Sijection::new(left, right, pair_list)
    }

    /// Full verification; all violations are returned as data.
    pub fn verify(&self) -> VerifyReport {
        let mut violations = Vec::new();
        let weight_of = |addr: &Addr| match addr.0 {
            Side::L => self.left.get(&addr.1),
            Side::R => self.right.get(&addr.1),
        };

        for (side, set) in [(Side::L, &self.left), (Side::R, &self.right)] {
            for e in set.iter() {
                let addr = (side, e.payload.clone());
                if !self.pairs.contains_key(&addr) {
                    violations.push(Violation::Unpaired { addr: addr_text(&addr) });
                }
            }
        }

        for (k, v) in self.pairs.iter() {
            let (wk, wv) = match (weight_of(k), weight_of(v)) {
                (Some(wk), Some(wv)) => (wk, wv),
                _ => {
                    let bad = if weight_of(k).is_none() { k } else { v };
                    violations.push(Violation::UnknownElement { addr: addr_text(bad) });
                    continue;
                }
            };
            match self.pairs.get(v) {
                Some(back) if back == k => {}
                _ => {
                    violations.push(Violation::NotInvolutive { addr: addr_text(k) });
                    continue;
                }
            }
            if k == v {
                violations.push(Violation::SelfPaired { addr: addr_text(k) });
                continue;
            }
            // check each unordered pair once
            if k > v {
                continue;
            }
            if k.0 == v.0 {
                if *wk != wv.negated() {
                    violations.push(Violation::SameSideWeights {
                        a: addr_text(k),
                        b: addr_text(v),
                    });
                }
            } else if wk != wv {
                violations.push(Violation::CrossWeights { a: addr_text(k), b: addr_text(v) });
            }
        }
        VerifyReport { violations }
    }

    /// JSON certificate: both sets plus the pair list, everything keyed by
    /// canonical payload text and sorted, so output is byte-stable.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut pairs: Vec<[serde_json::Value; 4]> = Vec::with_capacity(self.num_pairs());
        for (k, v) in self.pairs.iter() {
            if k > v {
                continue;
            }
            pairs.push([
                k.0.letter().into(),
                k.1.text().into(),
                v.0.letter().into(),
                v.1.text().into(),
            ]);
        }
        pairs.sort_by(|a, b| {
            (a[0].as_str(), a[1].as_str(), a[2].as_str(), a[3].as_str()).cmp(&(
                b[0].as_str(),
                b[1].as_str(),
                b[2].as_str(),
                b[3].as_str(),
            ))
        });
        serde_json::json!({
            "left": self.left.to_json_value(),
            "right": self.right.to_json_value(),
            "pairs": pairs,
        })
    }
}

fn first_middle_diff(a: &SignedSet, b: &SignedSet) -> String {
    for e in a.iter() {
        match b.get(&e.payload) {
            None => return format!("; first left-only payload: {}", e.payload),
            Some(w) if *w != e.weight => {
                return format!("; weight differs at payload: {}", e.payload)
            }
            _ => {}
        }
    }
    for e in b.iter() {
        if a.get(&e.payload).is_none() {
            return format!("; first right-only payload: {}", e.payload);
        }
    }
    String::new()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, VarId};
    use crate::signed::SignedElement;

    fn unweighted(vals: &[i64]) -> SignedSet {
        SignedSet::from_elems(
            vals.iter()
                .map(|&v| SignedElement::new(Payload::Int(v), Monomial::one()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_verifies() {
        let s = unweighted(&[1, 2, 3]);
        let id = Sijection::identity(&s);
        assert!(id.verify().ok());
        assert_eq!(id.num_pairs(), 3);
    }

    #[test]
    fn cancelling_pair_within_one_side() {
        // {+x, -x} <-> {} certified by one same-side pair.
        let x = VarId::x(1);
        let left = SignedSet::from_elems(vec![
            SignedElement::new(Payload::Int(1), Monomial::var(x)),
            SignedElement::new(Payload::Int(2), Monomial::var_neg(x)),
        ])
        .unwrap();
        let s = Sijection::new(
            left,
            SignedSet::empty(),
            vec![((Side::L, Payload::Int(1)), (Side::L, Payload::Int(2)))],
        )
        .unwrap();
        assert!(s.verify().ok());
        assert!(s.right().is_empty());
    }

    #[test]
    fn wrong_same_side_weights_rejected() {
        let left = unweighted(&[1, 2]);
        let err = Sijection::new(
            left,
            SignedSet::empty(),
            vec![((Side::L, Payload::Int(1)), (Side::L, Payload::Int(2)))],
        );
        assert!(err.is_err());
    }

    #[test]
    fn compose_cancels_middle_detours() {
        // f: {a} <-> {1,2,3} where 2,3 cancel each other; g = reverse of f.
        let x = VarId::x(1);
        let a = SignedSet::singleton(Payload::Int(0), Monomial::var(x));
        let mid = SignedSet::from_elems(vec![
            SignedElement::new(Payload::Int(1), Monomial::var(x)),
            SignedElement::new(Payload::Int(2), Monomial::var(x)),
            SignedElement::new(Payload::Int(3), Monomial::var_neg(x)),
        ])
        .unwrap();
        let f = Sijection::new(
            a.clone(),
            mid.clone(),
            vec![
                ((Side::L, Payload::Int(0)), (Side::R, Payload::Int(1))),
                ((Side::R, Payload::Int(2)), (Side::R, Payload::Int(3))),
            ],
        )
        .unwrap();
        let g = f.reversed();
        let c = f.compose(&g).unwrap();
        assert!(c.verify().ok());
        assert_eq!(c.left(), &a);
        assert_eq!(c.right(), &a);
        // 0 crosses to 0; nothing else remains.
        assert_eq!(
            c.pair_of(&(Side::L, Payload::Int(0))),
            Some(&(Side::R, Payload::Int(0)))
        );
    }

    #[test]
    fn compose_routes_through_middle_cancellation() {
        // f: {a} <-> {m1, m2-, m3}: a crosses to m1; m2 pairs with m3.
        // g: {m1, m2-, m3} <-> {c}: m3 crosses to c; m1 pairs with m2.
        // Composite: a must reach c through the alternating path.
        let x = VarId::x(1);
        let a = SignedSet::singleton(Payload::Int(0), Monomial::var(x));
        let c = SignedSet::singleton(Payload::Int(9), Monomial::var(x));
        let mid = SignedSet::from_elems(vec![
            SignedElement::new(Payload::Int(1), Monomial::var(x)),
            SignedElement::new(Payload::Int(2), Monomial::var_neg(x)),
            SignedElement::new(Payload::Int(3), Monomial::var(x)),
        ])
        .unwrap();
        let f = Sijection::new(
            a.clone(),
            mid.clone(),
            vec![
                ((Side::L, Payload::Int(0)), (Side::R, Payload::Int(1))),
                ((Side::R, Payload::Int(2)), (Side::R, Payload::Int(3))),
            ],
        )
        .unwrap();
        let g = Sijection::new(
            mid,
            c.clone(),
            vec![
                ((Side::L, Payload::Int(3)), (Side::R, Payload::Int(9))),
                ((Side::L, Payload::Int(1)), (Side::L, Payload::Int(2))),
            ],
        )
        .unwrap();
        let comp = f.compose(&g).unwrap();
        assert!(comp.verify().ok());
        assert_eq!(
            comp.pair_of(&(Side::L, Payload::Int(0))),
            Some(&(Side::R, Payload::Int(9)))
        );
    }

    #[test]
    fn lift_product_first_flipped_coordinate_rule() {
        let x = VarId::x(1);
        // part1: identity on a 1-element set; part2: same-side cancel pair.
        let s1 = unweighted(&[7]);
        let p1 = Sijection::identity(&s1);
        let left2 = SignedSet::from_elems(vec![
            SignedElement::new(Payload::Int(1), Monomial::var(x)),
            SignedElement::new(Payload::Int(2), Monomial::var_neg(x)),
        ])
        .unwrap();
        let p2 = Sijection::new(
            left2,
            SignedSet::empty(),
            vec![((Side::L, Payload::Int(1)), (Side::L, Payload::Int(2)))],
        )
        .unwrap();
        let lifted = Sijection::lift_product(&[&p1, &p2]).unwrap();
        assert!(lifted.verify().ok());
        // products with an empty factor are empty
        assert!(lifted.right().is_empty());
        assert_eq!(lifted.left().len(), 2);
        // (7,1) pairs same-side with (7,2)
        let a = Payload::ints([7, 1]);
        let b = Payload::ints([7, 2]);
        assert_eq!(lifted.pair_of(&(Side::L, a)), Some(&(Side::L, b)));
    }

    #[test]
    fn json_certificate_is_sorted_and_stable() {
        let s = unweighted(&[2, 1]);
        let id = Sijection::identity(&s);
        let v1 = serde_json::to_string(&id.to_json_value()).unwrap();
        let v2 = serde_json::to_string(&id.to_json_value()).unwrap();
        assert_eq!(v1, v2);
        assert!(v1.contains("\"pairs\""));
    }
}
