//! Weak-composition signed sets and the two entry-level moves used by the
//! matrix reduction: merging a counter into a composition, and splitting a
//! difference of composition sets into a two-element factor times a longer
//! composition set.

use crate::payload::Payload;
use crate::poly::{Monomial, VarId};
use crate::signed::{SignedSet, SUM_LEFT, SUM_RIGHT};
use crate::sijection::{Side, Sijection};
use crate::{Error, Result};

/// All weak compositions of `total` into `parts` parts, in colex order
/// (last coordinate most significant). Empty when `total < 0`.
pub fn weak_compositions(parts: usize, total: i64) -> Vec<Vec<u32>> {
    if total < 0 {
        return Vec::new();
    }
    let total = total as u32;
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for last in 0..=total {
        for mut rest in weak_compositions(parts - 1, (total - last) as i64) {
            rest.push(last);
            out.push(rest);
        }
    }
    out
}

/// The signed set `B(vars, k)`: weak compositions of k with one part per
/// variable, weighted by the corresponding monomial (all positive).
/// Empty when k < 0; the single empty composition when vars is empty and
/// k = 0.
pub fn build_b(vars: &[VarId], k: i64) -> SignedSet {
    let mut elems = Vec::new();
    for comp in weak_compositions(vars.len(), k) {
        let exps = crate::poly::MonomialExps::from_pairs(
            vars.iter().copied().zip(comp.iter().copied()),
        );
        elems.push(crate::signed::SignedElement::new(
            Payload::ints(comp.iter().map(|&a| a as i64)),
            Monomial::from_exps(false, exps),
        ));
    }
    SignedSet::from_elems(elems).expect("compositions are distinct")
}

/// The two-element signed set `{+plus, -minus}`.
pub fn pair_set(plus: VarId, minus: VarId) -> SignedSet {
    SignedSet::from_elems(vec![
        crate::signed::SignedElement::new(Payload::Var(plus), Monomial::var(plus)),
        crate::signed::SignedElement::new(Payload::Var(minus), Monomial::var_neg(minus)),
    ])
    .expect("two distinct variables")
}

/// Merge move: for 1 <= q <= j, the weight-preserving bijection
///
/// `[q] x B((x,...,x) q+1 times, j-q)  <->  [j] x B((x,...,x) q times, j-q)`.
///
/// `(l, a)` maps to `(l + a_1 + ... + a_l, a with a_l and a_{l+1} merged)`.
pub fn merge_bijection(x: VarId, j: u32, q: u32) -> Result<Sijection> {
    if !(1 <= q && q <= j) {
        return Err(Error::pre(format!("merge needs 1 <= q <= j, got q={q}, j={j}")));
    }
    let k = (j - q) as i64;
    let left = SignedSet::range(q as u64).product(&build_b(&vec![x; q as usize + 1], k));
    let right = SignedSet::range(j as u64).product(&build_b(&vec![x; q as usize], k));
    let sij = Sijection::from_bijection(&left, &right, |p| {
        let items = p.expect_tuple("merge input")?;
        let l = items[0]
            .as_int()
            .ok_or_else(|| Error::mismatch("merge counter"))? as usize;
        let comp = items[1].expect_tuple("merge composition")?;
        let a: Vec<i64> = comp
            .iter()
            .map(|c| c.as_int().ok_or_else(|| Error::mismatch("merge part")))
            .collect::<Result<_>>()?;
        let r = l as i64 + a[..l].iter().sum::<i64>();
        let mut b = Vec::with_capacity(a.len() - 1);
        b.extend_from_slice(&a[..l - 1]);
        b.push(a[l - 1] + a[l]);
        b.extend_from_slice(&a[l + 1..]);
        Ok(Payload::pair(Payload::Int(r), Payload::ints(b)))
    })?;
    Ok(sij)
}

/// Split move at a position: with `x_old = vars[pos]`, a sijection
///
/// `B(vars, k) - B(vars[pos := x_new], k)
///    <->  {x_old, -x_new} x B(insert(vars, pos, x_new), k-1)`.
///
/// The classical two-variable statement is `pos = 0` with
/// `vars = (x_j, y_1, ..., y_m)` and `x_new = x_i`.
pub fn split_at(vars: &[VarId], pos: usize, x_new: VarId, k: i64) -> Result<Sijection> {
    if pos >= vars.len() {
        return Err(Error::pre(format!(
            "split position {pos} out of range for {} variables",
            vars.len()
        )));
    }
    let x_old = vars[pos];
    if x_old == x_new {
        return Err(Error::pre("split substitutes a variable for itself"));
    }
    let mut vars_new = vars.to_vec();
    vars_new[pos] = x_new;
    let mut vars_ins = vars.to_vec();
    vars_ins.insert(pos, x_new);

    let left = build_b(vars, k).difference(&build_b(&vars_new, k));
    let right = pair_set(x_old, x_new).product(&build_b(&vars_ins, k - 1));

    let get_parts = |p: &Payload| -> Result<Vec<i64>> {
        p.expect_tuple("composition")?
            .iter()
            .map(|c| c.as_int().ok_or_else(|| Error::mismatch("composition part")))
            .collect()
    };
    let mut pair_list: Vec<((Side, Payload), (Side, Payload))> = Vec::new();

    for e in left.iter() {
        let items = e.payload.expect_tuple("difference element")?;
        let (tag, comp_payload) = (&items[0], &items[1]);
        let a = get_parts(comp_payload)?;
        if *tag == SUM_LEFT {
            if a[pos] >= 1 {
                // positive part with x_old present: cross to the +x_old choice
                let mut b = a.clone();
                b[pos] -= 1;
                b.insert(pos, 0);
                pair_list.push((
                    (Side::L, e.payload.clone()),
                    (
                        Side::R,
                        Payload::pair(Payload::Var(x_old), Payload::ints(b)),
                    ),
                ));
            } else {
                // exponent zero: cancels against the identical composition
                // in the negated copy
                pair_list.push((
                    (Side::L, e.payload.clone()),
                    (Side::L, Payload::pair(SUM_RIGHT, comp_payload.clone())),
                ));
            }
        } else if a[pos] >= 1 {
            // negated part with x_new present: cross to the -x_new choice
            let mut b = a.clone();
            b[pos] -= 1;
            b.insert(pos + 1, 0);
            pair_list.push((
                (Side::L, e.payload.clone()),
                (
                    Side::R,
                    Payload::pair(Payload::Var(x_new), Payload::ints(b)),
                ),
            ));
        }
        // tag member with a[pos] == 0 was already paired by the branch above
    }

    // remaining right elements cancel in sign-reversing pairs:
    // (+x_old, b) with b[pos] >= 1  <->  (-x_new, b with one x_new swapped for x_old)
    for e in right.iter() {
        let items = e.payload.expect_tuple("factor element")?;
        if items[0] != Payload::Var(x_old) {
            continue;
        }
        let b = get_parts(&items[1])?;
        if b[pos] >= 1 {
            let mut c = b.clone();
            c[pos] -= 1;
            c[pos + 1] += 1;
            pair_list.push((
                (Side::R, e.payload.clone()),
                (
                    Side::R,
                    Payload::pair(Payload::Var(x_new), Payload::ints(c)),
                ),
            ));
        }
    }

    Sijection::new(left, right, pair_list)
}

/// The two-variable split statement:
/// `B((x_j, Y), k) - B((x_i, Y), k) <-> {x_j, -x_i} x B((x_i, x_j, Y), k-1)`.
pub fn split_sijection(x_i: VarId, x_j: VarId, y: &[VarId], k: i64) -> Result<Sijection> {
    let mut vars = vec![x_j];
    vars.extend_from_slice(y);
    split_at(&vars, 0, x_i, k)
}
