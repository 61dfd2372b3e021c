//! Label assignments for weighted sets: each element spends its
//! x_i-degree as an ordered tuple of distinct labels below the
//! prescribed value p_i, all tuples together exhausting the labels not
//! used by the prescription itself. The result keeps only the sign of
//! each weight.
//!
//! The assignment operator commutes with sijections, unweighted
//! factors, and tagged sums; two further moves trade a prescribed value
//! against label tuples (insert) and split a prescribed value's range
//! at its neighbours (split).

use crate::payload::Payload;
use crate::poly::{Monomial, MonomialExps, VarId};
use crate::signed::{SignedElement, SignedSet, SUM_LEFT, SUM_RIGHT};
use crate::sijection::{Side, Sijection};
use crate::{Error, Result};

fn check_prescription(p: &[usize]) -> Result<()> {
    for (i, &v) in p.iter().enumerate() {
        if v == 0 {
            return Err(Error::pre("prescribed values start at 1"));
        }
        if p[..i].contains(&v) {
            return Err(Error::pre(format!("prescribed value {v} repeats")));
        }
    }
    Ok(())
}

/// Total degree over `x` of every element of `s`, which must be uniform.
/// Returns None for the empty set.
fn uniform_degree_sum(s: &SignedSet, x: &[VarId]) -> Result<Option<usize>> {
    let mut found: Option<usize> = None;
    for e in s.iter() {
        let d: usize = x.iter().map(|&v| e.weight.degree_of(v) as usize).sum();
        match found {
            None => found = Some(d),
            Some(prev) if prev == d => {}
            Some(prev) => {
                return Err(Error::pre(format!(
                    "total degree is not uniform: {prev} vs {d}"
                )))
            }
        }
    }
    Ok(found)
}

/// All ways to deal the unused labels into ordered tuples, var by var:
/// tuple i takes degrees[i] distinct labels, each below p[i].
fn deal_labels(
    degrees: &[usize],
    p: &[usize],
    avail: &[usize],
) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        degrees: &[usize],
        p: &[usize],
        avail: &[usize],
        used: &mut Vec<bool>,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == degrees.len() {
            out.push(acc.clone());
            return;
        }
        let cand: Vec<usize> = (0..avail.len())
            .filter(|&t| !used[t] && avail[t] < p[i])
            .collect();
        if cand.len() < degrees[i] {
            return;
        }
        fn pick(
            remaining: usize,
            cand: &[usize],
            avail: &[usize],
            used: &mut Vec<bool>,
            tup: &mut Vec<usize>,
            cont: &mut dyn FnMut(&mut Vec<bool>, &mut Vec<usize>),
        ) {
            if remaining == 0 {
                cont(used, tup);
                return;
            }
            for &t in cand {
                if used[t] {
                    continue;
                }
                used[t] = true;
                tup.push(avail[t]);
                pick(remaining - 1, cand, avail, used, tup, cont);
                tup.pop();
                used[t] = false;
            }
        }
        let deg = degrees[i];
        let mut tup = Vec::with_capacity(deg);
        // continuation recursion keeps the borrow checker happy
        let (degrees2, p2, avail2) = (degrees, p, avail);
        let mut cont = |used: &mut Vec<bool>, tup: &mut Vec<usize>| {
            acc.push(tup.clone());
            rec(i + 1, degrees2, p2, avail2, used, acc, out);
            acc.pop();
        };
        pick(deg, &cand, avail, used, &mut tup, &mut cont);
    }
    let mut out = Vec::new();
    let mut used = vec![false; avail.len()];
    let mut acc = Vec::new();
    rec(0, degrees, p, avail, &mut used, &mut acc, &mut out);
    out
}

/// The assignment set of `s` under prescription `p`: elements
/// (payload, label tuples), weighted by the sign of the original
/// weight. The label universe is [N] with N = |p| + total degree.
pub fn build_phi(s: &SignedSet, x: &[VarId], p: &[usize]) -> Result<SignedSet> {
    if x.len() != p.len() {
        return Err(Error::pre("need one prescribed value per variable"));
    }
    check_prescription(p)?;
    let Some(deg_sum) = uniform_degree_sum(s, x)? else {
        return Ok(SignedSet::empty());
    };
    let nn = p.len() + deg_sum;
    for &v in p {
        if v > nn {
            return Err(Error::pre(format!("prescribed value {v} exceeds the label count {nn}")));
        }
    }
    let avail: Vec<usize> = (1..=nn).filter(|v| !p.contains(v)).collect();
    let mut elems = Vec::new();
    for e in s.iter() {
        let degrees: Vec<usize> =
            x.iter().map(|&v| e.weight.degree_of(v) as usize).collect();
        for assignment in deal_labels(&degrees, p, &avail) {
            let tuples: Vec<Payload> = assignment
                .iter()
                .map(|t| Payload::ints(t.iter().map(|&v| v as i64)))
                .collect();
            elems.push(SignedElement::new(
                Payload::pair(e.payload.clone(), Payload::tuple(tuples)),
                e.weight.sign_only(),
            ));
        }
    }
    SignedSet::from_elems(elems)
}

/// Lift a sijection through the assignment operator: paired elements
/// carry equal or opposite monomials either way, so they admit the
/// same label tuples.
pub fn phi_lift(psi: &Sijection, x: &[VarId], p: &[usize]) -> Result<Sijection> {
    let left = build_phi(psi.left(), x, p)?;
    let right = build_phi(psi.right(), x, p)?;
    let mut pair_list = Vec::new();
    {
        let mut emit = |side: Side, set: &SignedSet| -> Result<()> {
            for e in set.iter() {
                let parts = e.payload.expect_tuple("labelled element")?;
                let partner = psi
                    .pair_of(&(side, parts[0].clone()))
                    .ok_or_else(|| Error::mismatch("element not covered by the sijection"))?;
                pair_list.push((
                    (side, e.payload.clone()),
                    (partner.0, Payload::pair(partner.1.clone(), parts[1].clone())),
                ));
            }
            Ok(())
        };
        emit(Side::L, &left)?;
        emit(Side::R, &right)?;
    }
    Sijection::new(left, right, pair_list)
}

/// Unweighted prefix factors commute with the assignment operator:
/// (c_1, ..., c_k, (s, L)) <-> ((c_1, ..., c_k, s), L).
pub fn phi_pull_prefix(
    cs: &[&SignedSet],
    s: &SignedSet,
    x: &[VarId],
    p: &[usize],
) -> Result<Sijection> {
    for c in cs {
        if !c.is_unweighted() {
            return Err(Error::pre("prefix factors must be unweighted"));
        }
    }
    let phi_s = build_phi(s, x, p)?;
    let mut fac: Vec<&SignedSet> = cs.to_vec();
    fac.push(&phi_s);
    let left = SignedSet::product_many(&fac);
    let mut fac2: Vec<&SignedSet> = cs.to_vec();
    fac2.push(s);
    let prod = SignedSet::product_many(&fac2);
    let right = build_phi(&prod, x, p)?;
    let k = cs.len();
    Sijection::from_bijection(&left, &right, |payload| {
        let items = payload.expect_tuple("prefixed element")?;
        let inner = items[k].expect_tuple("labelled element")?;
        let mut s_items = items[..k].to_vec();
        s_items.push(inner[0].clone());
        Ok(Payload::pair(Payload::tuple(s_items), inner[1].clone()))
    })
}

/// Single unweighted factor version of [`phi_pull_prefix`].
pub fn phi_pull_factor(
    c: &SignedSet,
    s: &SignedSet,
    x: &[VarId],
    p: &[usize],
) -> Result<Sijection> {
    phi_pull_prefix(&[c], s, x, p)
}

/// Tagged sums commute with the assignment operator:
/// ((tag, s), L) <-> (tag, (s, L)).
pub fn phi_sum_retag(
    parts: &[(Payload, SignedSet)],
    x: &[VarId],
    p: &[usize],
) -> Result<Sijection> {
    let total = SignedSet::sum_many(parts)?;
    let left = build_phi(&total, x, p)?;
    let tagged: Vec<(Payload, SignedSet)> = parts
        .iter()
        .map(|(t, s)| Ok((t.clone(), build_phi(s, x, p)?)))
        .collect::<Result<_>>()?;
    let right = SignedSet::sum_many(&tagged)?;
    Sijection::from_bijection(&left, &right, |payload| {
        let items = payload.expect_tuple("labelled element")?;
        let ts = items[0].expect_tuple("tagged element")?;
        Ok(Payload::pair(
            ts[0].clone(),
            Payload::pair(ts[1].clone(), items[1].clone()),
        ))
    })
}

/// Trade the prescribed value of x_j against a longer label tuple for
/// x_k. Every element of `s` must carry x_j-exponent exactly `ell`; the
/// left side sums over the admissible values v for x_j below x_k's
/// prescribed value, with an extra position factor [ell + 1]:
///
/// `[ell+1] x sum_v phi(s, x, p with v at j)  <->  phi(s', x without x_j, p_rest)`
///
/// where s' moves the x_j-weight onto x_k with one extra power.
pub fn phi_insert_bijection(
    s: &SignedSet,
    x: &[VarId],
    p_rest: &[usize],
    j: usize,
    k: usize,
    ell: u32,
) -> Result<Sijection> {
    let n = x.len();
    if p_rest.len() + 1 != n {
        return Err(Error::pre("prescription must omit exactly the inserted variable"));
    }
    if j < 1 || j > n || k < 1 || k > n || j == k {
        return Err(Error::pre("positions out of range"));
    }
    if s.is_empty() {
        return Sijection::new(SignedSet::empty(), SignedSet::empty(), Vec::new());
    }
    let xj = x[j - 1];
    let xk = x[k - 1];
    for e in s.iter() {
        if e.weight.degree_of(xj) != ell {
            return Err(Error::pre("x_j exponent is not uniform"));
        }
    }
    let deg_sum = uniform_degree_sum(s, x)?.unwrap();
    let nn = n + deg_sum;
    let k_rest = if k > j { k - 2 } else { k - 1 };
    let pk = p_rest[k_rest];

    let mut parts: Vec<(Payload, SignedSet)> = Vec::new();
    for v in 1..pk.min(nn + 1) {
        if p_rest.contains(&v) {
            continue;
        }
        let mut pv = p_rest.to_vec();
        pv.insert(j - 1, v);
        parts.push((Payload::Int(v as i64), build_phi(s, x, &pv)?));
    }
    let vsum = SignedSet::sum_many(&parts)?;
    let range = SignedSet::range(ell as u64 + 1);
    let left = SignedSet::product_many(&[&range, &vsum]);

    let div = Monomial::from_exps(false, MonomialExps::from_pairs([(xj, ell)]));
    let mul = Monomial::from_exps(false, MonomialExps::from_pairs([(xk, ell + 1)]));
    let elems: Vec<SignedElement> = s
        .iter()
        .map(|e| {
            let w = e.weight.div_exact(&div).expect("uniform exponent").mul(&mul);
            SignedElement::new(e.payload.clone(), w)
        })
        .collect();
    let s_prime = SignedSet::from_elems(elems)?;
    let mut x_rest = x.to_vec();
    x_rest.remove(j - 1);
    let right = build_phi(&s_prime, &x_rest, p_rest)?;

    Sijection::from_bijection(&left, &right, |payload| {
        let items = payload.expect_tuple("positioned element")?;
        let r = items[0]
            .as_int()
            .ok_or_else(|| Error::pre("position tag must be an integer"))?
            as usize;
        let ve = items[1].expect_tuple("tagged branch")?;
        let v = ve[0]
            .as_int()
            .ok_or_else(|| Error::pre("value tag must be an integer"))?;
        let se = ve[1].expect_tuple("labelled element")?;
        let ls = se[1].expect_tuple("label tuples")?;
        let mut block = ls[j - 1].expect_tuple("labels")?.to_vec();
        block.insert(r - 1, Payload::Int(v));
        let mut out_ls = ls.to_vec();
        out_ls.remove(j - 1);
        let mut lk = out_ls[k_rest].expect_tuple("labels")?.to_vec();
        lk.extend(block);
        out_ls[k_rest] = Payload::tuple(lk);
        Ok(Payload::pair(se[0].clone(), Payload::tuple(out_ls)))
    })
}

/// Split the sum over x_j's prescribed value at its neighbours: the sum
/// over values strictly between p_{j-1} and p_{j+1} is matched with the
/// difference of the sums below p_{j+1} and below p_{j-1}. Values below
/// p_{j-1} appear in both right branches with opposite signs and cancel
/// in place.
pub fn phi_split_sijection(
    s: &SignedSet,
    x: &[VarId],
    p_rest: &[usize],
    j: usize,
) -> Result<Sijection> {
    let n = x.len();
    if p_rest.len() + 1 != n {
        return Err(Error::pre("prescription must omit exactly the split variable"));
    }
    if j < 2 || j + 1 > n {
        return Err(Error::pre("the split variable needs neighbours on both sides"));
    }
    let p_lo = p_rest[j - 2];
    let p_hi = p_rest[j - 1];
    if p_lo >= p_hi {
        return Err(Error::pre("neighbour values must increase"));
    }
    if s.is_empty() {
        return Sijection::new(SignedSet::empty(), SignedSet::empty(), Vec::new());
    }
    let deg_sum = uniform_degree_sum(s, x)?.unwrap();
    let nn = n + deg_sum;

    let mk = |lo: usize, hi: usize| -> Result<Vec<(Payload, SignedSet)>> {
        let mut parts = Vec::new();
        for v in (lo + 1)..hi.min(nn + 1) {
            if p_rest.contains(&v) {
                continue;
            }
            let mut pv = p_rest.to_vec();
            pv.insert(j - 1, v);
            parts.push((Payload::Int(v as i64), build_phi(s, x, &pv)?));
        }
        Ok(parts)
    };
    let middle = mk(p_lo, p_hi)?;
    let below_hi = mk(0, p_hi)?;
    let below_lo = mk(0, p_lo)?;
    let left = SignedSet::sum_many(&middle)?;
    let right =
        SignedSet::sum_many(&below_hi)?.difference(&SignedSet::sum_many(&below_lo)?);

    let mut pairs = Vec::new();
    for (tag, set) in &middle {
        for e in set.iter() {
            pairs.push((
                (Side::L, Payload::pair(tag.clone(), e.payload.clone())),
                (
                    Side::R,
                    Payload::pair(SUM_LEFT, Payload::pair(tag.clone(), e.payload.clone())),
                ),
            ));
        }
    }
    for (tag, set) in &below_lo {
        for e in set.iter() {
            pairs.push((
                (
                    Side::R,
                    Payload::pair(SUM_LEFT, Payload::pair(tag.clone(), e.payload.clone())),
                ),
                (
                    Side::R,
                    Payload::pair(SUM_RIGHT, Payload::pair(tag.clone(), e.payload.clone())),
                ),
            ));
        }
    }
    Sijection::new(left, right, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::pair_set;

    fn x(i: u32) -> VarId {
        VarId::x(i)
    }

    fn unit() -> SignedSet {
        SignedSet::singleton(Payload::empty_tuple(), Monomial::one())
    }

    #[test]
    fn degree_zero_assignment_is_trivial() {
        let phi = build_phi(&unit(), &[x(1)], &[1]).unwrap();
        assert_eq!(phi.len(), 1);
        let phi = build_phi(&unit(), &[x(1), x(2)], &[2, 1]).unwrap();
        assert_eq!(phi.len(), 1);
    }

    #[test]
    fn single_power_takes_each_label_below() {
        let s = SignedSet::singleton(Payload::empty_tuple(), Monomial::var(x(1)));
        // N = 2, labels {1}; needs 1 < p_1
        assert_eq!(build_phi(&s, &[x(1)], &[2]).unwrap().len(), 1);
        assert!(build_phi(&s, &[x(1)], &[1]).unwrap().is_empty());
        // N = 3 with a second, degree-zero variable
        let phi = build_phi(&s, &[x(1), x(2)], &[3, 1]).unwrap();
        assert_eq!(phi.len(), 1);
        let e = phi.iter().next().unwrap();
        assert_eq!(e.payload.text(), "(() ((2) ()))");
    }

    #[test]
    fn ordered_tuples_count_permutations() {
        // weight x1^2: two labels in either order
        let s = SignedSet::singleton(
            Payload::empty_tuple(),
            Monomial::from_exps(false, MonomialExps::from_pairs([(x(1), 2)])),
        );
        let phi = build_phi(&s, &[x(1)], &[3]).unwrap();
        assert_eq!(phi.len(), 2);
        // sign is kept, magnitude dropped
        let neg = s.negated();
        let phi_neg = build_phi(&neg, &[x(1)], &[3]).unwrap();
        assert_eq!(phi_neg.len(), 2);
        for e in phi_neg.iter() {
            assert_eq!(e.weight, Monomial::minus_one());
        }
    }

    #[test]
    fn lifting_a_pair_cancellation() {
        // {x2, -x1} with p = (v, v): equal label choices on both sides
        let pair = pair_set(x(2), x(1));
        // x2 element: deg (0,1); x1 element: deg (1,0); total degree 1 each
        let phi = build_phi(&pair, &[x(1), x(2)], &[2, 3]).unwrap();
        // x2 side: L2 one label < 3 from {1}; x1 side: L1 one label < 2
        assert_eq!(phi.len(), 2);

        let ident = Sijection::identity(&pair);
        let lifted = phi_lift(&ident, &[x(1), x(2)], &[2, 3]).unwrap();
        assert!(lifted.verify().ok());
    }

    #[test]
    fn unweighted_factors_pull_through() {
        let c = SignedSet::range(3);
        let s = SignedSet::singleton(Payload::empty_tuple(), Monomial::var(x(1)));
        let sij = phi_pull_factor(&c, &s, &[x(1)], &[2]).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 3);

        let c2 = SignedSet::range(2);
        let sij = phi_pull_prefix(&[&c, &c2], &s, &[x(1)], &[2]).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 6);
    }

    #[test]
    fn tagged_sums_retag() {
        let a = SignedSet::singleton(Payload::Int(10), Monomial::var(x(1)));
        let b = SignedSet::singleton(Payload::Int(20), Monomial::var_neg(x(1)));
        let parts = vec![
            (Payload::Sym("a"), a),
            (Payload::Sym("b"), b),
        ];
        let sij = phi_sum_retag(&parts, &[x(1)], &[2]).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 2);
    }

    #[test]
    fn insert_trades_value_for_labels() {
        // s = {x1}: j = 1, k = 2, ell = 1, p_rest = (3)
        let s = SignedSet::singleton(Payload::empty_tuple(), Monomial::var(x(1)));
        let sij = phi_insert_bijection(&s, &[x(1), x(2)], &[3], 1, 2, 1).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 2);
        assert_eq!(sij.right().len(), 2);

        // ell = 0: only the position factor [1] and the value sum remain
        let s0 = unit();
        let sij = phi_insert_bijection(&s0, &[x(1), x(2)], &[2], 1, 2, 0).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 1);
    }

    #[test]
    fn split_cancels_the_low_range() {
        let s0 = unit();
        let xs = [x(1), x(2), x(3)];
        let sij = phi_split_sijection(&s0, &xs, &[1, 3], 2).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 1);

        let s = SignedSet::singleton(Payload::empty_tuple(), Monomial::var(x(2)));
        let sij = phi_split_sijection(&s, &xs, &[1, 4], 2).unwrap();
        assert!(sij.verify().ok());
        // only v = 3 admits an assignment
        assert_eq!(sij.left().len(), 1);

        // low values below p_{j-1} cancel inside the right side
        let s3 = SignedSet::singleton(Payload::empty_tuple(), Monomial::var(x(3)));
        let sij = phi_split_sijection(&s3, &xs, &[2, 4], 2).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(sij.left().len(), 1);
        assert_eq!(sij.right().len(), 3);
    }
}
