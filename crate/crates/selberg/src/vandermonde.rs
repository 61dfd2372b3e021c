//! Reduction of a stacked binomial matrix to the product of its
//! difference pairs, one column split at a time.
//!
//! Each pass consumes one unit of the head variable's multiplicity:
//! subtract the pivot row down the later blocks, split every entry of a
//! combined row, pull the common difference pair out of it, then delete
//! the pivot. The head variable migrates into the shared prefix, and the
//! pass emits one `{x_j, -x_head}` factor per transformed row.

use crate::binomial::{pair_set, split_at};
use crate::matrix::{build_h, det_poly};
use crate::payload::Payload;
use crate::poly::{expand_signed_product, IntPolynomial, SeriesTrunc, VarId};
use crate::signed::SignedSet;
use crate::sijection::Sijection;
use crate::{Error, Result};
use std::collections::HashMap;

/// One difference-pair coordinate: the variable pair (i, j) it belongs
/// to (1-based positions) and its copy number within that pair.
pub type PairCoord = (usize, usize, usize);

/// Canonical coordinate order of the difference-pair product: pairs
/// (i, j) with i < j in lexicographic order, alpha_i * alpha_j copies
/// each.
pub fn canonical_coords(alpha: &[u32]) -> Vec<PairCoord> {
    let n = alpha.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 1..=(alpha[i - 1] * alpha[j - 1]) as usize {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// The product of {x_j, -x_i} over the canonical coordinates.
pub fn canonical_product_set(x: &[VarId], alpha: &[u32]) -> SignedSet {
    let factors: Vec<SignedSet> = canonical_coords(alpha)
        .iter()
        .map(|&(i, j, _)| pair_set(x[j - 1], x[i - 1]))
        .collect();
    SignedSet::product_many(&factors.iter().collect::<Vec<_>>())
}

/// The reduction outcome: the sijection from the matrix expansion to the
/// canonical difference-pair product, plus a checkpoint of the running
/// product set after each pivot deletion.
pub struct GvReduction {
    pub sijection: Sijection,
    pub pass_sets: Vec<SignedSet>,
    pub expansion_sizes: Vec<usize>,
}

struct GvState {
    factors: Vec<SignedSet>,
    total: Sijection,
    cur: SignedSet,
}

impl GvState {
    /// Lift a step acting on the expansion coordinate through the
    /// accumulated factors and absorb it into the running sijection.
    fn apply(&mut self, psi: &Sijection) -> Result<()> {
        let idents: Vec<Sijection> = self.factors.iter().map(Sijection::identity).collect();
        let mut parts: Vec<&Sijection> = idents.iter().collect();
        parts.push(psi);
        let lifted = Sijection::lift_product(&parts)?;
        self.total = self.total.compose(&lifted)?;
        self.cur = lifted.right().clone();
        Ok(())
    }

    /// After a pull step the last coordinate holds (factor, expansion)
    /// pairs; splice the factor in as a coordinate of its own.
    fn flatten_pull(&mut self, factor: SignedSet, d_next: &SignedSet) -> Result<()> {
        let k = self.factors.len();
        let mut refs: Vec<&SignedSet> = self.factors.iter().collect();
        refs.push(&factor);
        refs.push(d_next);
        let flat = SignedSet::product_many(&refs);
        let relabel = Sijection::from_bijection(&self.cur, &flat, |p| {
            let items = p.expect_tuple("running product")?;
            let nested = items[k].expect_tuple("pulled coordinate")?;
            let mut out = items[..k].to_vec();
            out.push(nested[0].clone());
            out.push(nested[1].clone());
            Ok(Payload::tuple(out))
        })?;
        self.total = self.total.compose(&relabel)?;
        self.cur = flat;
        self.factors.push(factor);
        Ok(())
    }
}

/// Run the full reduction for the stack over prefix `y`, keeping the
/// intermediate checkpoints.
pub fn gv_reduction(y: &[VarId], x: &[VarId], alpha: &[u32]) -> Result<GvReduction> {
    if x.len() != alpha.len() {
        return Err(Error::pre("need one multiplicity per variable"));
    }
    let h0 = build_h(y, x, alpha)?;
    let d0 = h0.expand_d()?;
    let cur = SignedSet::product_many(&[&d0]);
    let total = Sijection::from_bijection(&d0, &cur, |p| Ok(Payload::tuple(vec![p.clone()])))?;
    let mut state = GvState { factors: Vec::new(), total, cur };
    let mut emitted: Vec<PairCoord> = Vec::new();
    let mut pass_sets = Vec::new();
    let mut expansion_sizes = Vec::new();

    let n = x.len();
    let mut ys = y.to_vec();
    let mut matrix = h0;
    let mut rem = alpha.to_vec();

    for head in 0..n {
        for pass in 0..alpha[head] {
            let m_cur = matrix.rows();
            for j in (head + 1)..n {
                if alpha[j] == 0 {
                    continue;
                }
                // first row of block j in the current matrix
                let mut rj = rem[head] as usize + 1;
                for t in (head + 1)..j {
                    rj += alpha[t] as usize;
                }
                for q in 1..=alpha[j] as usize {
                    let dst = rj + q - 1;
                    let src = if q == 1 { 1 } else { dst - 1 };
                    let (combined, s_sub) = matrix.row_combine_sijection(src, dst, true)?;
                    state.apply(&s_sub)?;
                    matrix = combined;

                    // the combined entries are exactly the split inputs
                    let mut split_vars = ys.clone();
                    split_vars.extend(std::iter::repeat(x[j]).take(q));
                    let mut cols = Vec::with_capacity(m_cur);
                    for c in 1..=m_cur {
                        cols.push(split_at(
                            &split_vars,
                            ys.len(),
                            x[head],
                            c as i64 - q as i64,
                        )?);
                    }
                    let mut target = matrix.clone();
                    for (ci, s) in cols.iter().enumerate() {
                        target = target.with_entry(dst, ci + 1, s.right().clone());
                    }
                    let s_split = matrix.lift_row_sijections(&target, dst, &cols)?;
                    state.apply(&s_split)?;
                    matrix = target;

                    let pair = pair_set(x[j], x[head]);
                    let (stripped, s_pull) = matrix.pull_row_factor(dst, &pair)?;
                    state.apply(&s_pull)?;
                    state.flatten_pull(pair, &stripped.expand_d()?)?;
                    matrix = stripped;
                    emitted.push((head + 1, j + 1, pass as usize * alpha[j] as usize + q));
                }
            }
            let (minor, s_del) = matrix.delete_pivot()?;
            state.apply(&s_del)?;
            matrix = minor;
            ys.push(x[head]);
            rem[head] -= 1;
            debug_assert_eq!(matrix, build_h(&ys, &x[head..], &rem[head..])?);
            pass_sets.push(state.cur.clone());
            expansion_sizes.push(matrix.expand_d()?.len());
        }
    }

    // permute the emitted factors into canonical order and drop the
    // exhausted expansion coordinate
    let canon = canonical_coords(alpha);
    if emitted.len() != canon.len() {
        return Err(Error::mismatch("emitted factor count is off"));
    }
    let slot: HashMap<PairCoord, usize> =
        canon.iter().enumerate().map(|(p, &t)| (t, p)).collect();
    let perm: Vec<usize> = emitted
        .iter()
        .map(|t| slot.get(t).copied().ok_or_else(|| Error::mismatch("unexpected factor")))
        .collect::<Result<_>>()?;
    let target = canonical_product_set(x, alpha);
    let relabel = Sijection::from_bijection(&state.cur, &target, |p| {
        let items = p.expect_tuple("running product")?;
        let mut out = vec![Payload::Int(0); perm.len()];
        for (e, item) in items[..perm.len()].iter().enumerate() {
            out[perm[e]] = item.clone();
        }
        Ok(Payload::tuple(out))
    })?;
    let total = state.total.compose(&relabel)?;
    Ok(GvReduction { sijection: total, pass_sets, expansion_sizes })
}

/// The sijection from D(H(y, x, alpha)) to the canonical product of
/// difference pairs.
pub fn gv_sijection(y: &[VarId], x: &[VarId], alpha: &[u32]) -> Result<Sijection> {
    Ok(gv_reduction(y, x, alpha)?.sijection)
}

/// Result of comparing a series-stack determinant against the product
/// of difference pairs.
pub struct DetCheckReport {
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
    pub ok: bool,
}

impl DetCheckReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "lhs": self.lhs.to_json_value(),
            "rhs": self.rhs.to_json_value(),
            "ok": self.ok,
        })
    }
}

/// Determinant identity for a stack built from any power series with
/// constant term one: the block for x_i contributes rows q = 1..alpha_i
/// with entries f-weighted at (q, c), and the determinant equals the
/// product of (x_j - x_i)^(alpha_i alpha_j) over i < j.
pub fn appendix_det_check(
    f: &SeriesTrunc,
    x: &[VarId],
    alpha: &[u32],
) -> Result<DetCheckReport> {
    if x.len() != alpha.len() {
        return Err(Error::pre("need one multiplicity per variable"));
    }
    let m: u32 = alpha.iter().sum();
    let mut grid = Vec::with_capacity(m as usize);
    for (i, &a) in alpha.iter().enumerate() {
        for q in 1..=a {
            let row: Vec<IntPolynomial> = (1..=m)
                .map(|c| f.series_entry(x[i], q, c))
                .collect::<Result<_>>()?;
            grid.push(row);
        }
    }
    let lhs = det_poly(&grid);
    let rhs = expand_signed_product(x, alpha)?;
    Ok(DetCheckReport { ok: lhs == rhs, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::build_b;

    fn x(i: u32) -> VarId {
        VarId::x(i)
    }

    #[test]
    fn empty_reduction_is_the_unit_relabel() {
        let red = gv_reduction(&[], &[], &[]).unwrap();
        assert_eq!(red.sijection.left().len(), 1);
        assert_eq!(red.sijection.right().len(), 1);
        assert!(red.sijection.verify().ok());
    }

    #[test]
    fn single_pair_reduction() {
        let red = gv_reduction(&[], &[x(1), x(2)], &[1, 1]).unwrap();
        let s = &red.sijection;
        assert!(s.verify().ok());
        assert_eq!(*s.right(), canonical_product_set(&[x(1), x(2)], &[1, 1]));
        assert_eq!(s.right().weight(), expand_signed_product(&[x(1), x(2)], &[1, 1]).unwrap());
        assert_eq!(s.left().weight(), s.right().weight());
    }

    #[test]
    fn classical_three_variable_reduction() {
        let xs = [x(1), x(2), x(3)];
        let red = gv_reduction(&[], &xs, &[1, 1, 1]).unwrap();
        assert!(red.sijection.verify().ok());
        assert_eq!(red.sijection.right().len(), 8);
        assert_eq!(
            red.sijection.right().weight(),
            expand_signed_product(&xs, &[1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn worked_two_block_chain() {
        let xs = [x(1), x(2)];
        let red = gv_reduction(&[], &xs, &[2, 2]).unwrap();
        assert!(red.sijection.verify().ok());
        assert_eq!(red.sijection.left().len(), 44);

        // after the first pass: {x2,-x1}^2 x D(H((x1),(x1,x2),(1,2)))
        let inner = build_h(&[x(1)], &xs, &[1, 2]).unwrap().expand_d().unwrap();
        assert_eq!(inner.len(), 18);
        assert_eq!(red.expansion_sizes[0], 18);
        let pair = pair_set(x(2), x(1));
        let expected = SignedSet::product_many(&[&pair, &pair, &inner]);
        assert_eq!(red.pass_sets[0], expected);

        assert_eq!(
            red.sijection.right().weight(),
            expand_signed_product(&xs, &[2, 2]).unwrap()
        );
    }

    #[test]
    fn prefix_variables_ride_along() {
        let red = gv_reduction(&[VarId::y(1)], &[x(1), x(2)], &[1, 1]).unwrap();
        assert!(red.sijection.verify().ok());
        // the prefix variable cancels from the endpoint weight
        assert_eq!(
            red.sijection.right().weight(),
            expand_signed_product(&[x(1), x(2)], &[1, 1]).unwrap()
        );
    }

    #[test]
    fn zero_multiplicities_are_skipped() {
        let red = gv_reduction(&[], &[x(1), x(2), x(3)], &[0, 1, 1]).unwrap();
        assert!(red.sijection.verify().ok());
        assert_eq!(red.sijection.right().len(), 2);
        assert_eq!(
            red.sijection.right().weight(),
            expand_signed_product(&[x(1), x(2), x(3)], &[0, 1, 1]).unwrap()
        );
    }

    #[test]
    fn series_stack_determinants() {
        // constant series: the stack weight matrix itself
        let f = SeriesTrunc::one(6);
        let r = appendix_det_check(&f, &[x(1), x(2)], &[1, 1]).unwrap();
        assert!(r.ok);

        let g = SeriesTrunc::geometric(6);
        let r = appendix_det_check(&g, &[x(1), x(2)], &[2, 3]).unwrap();
        assert!(r.ok);
        assert_eq!(r.rhs, expand_signed_product(&[x(1), x(2)], &[2, 3]).unwrap());

        // complete homogeneous coefficients reproduce the binomial sets
        let y1 = VarId::y(1);
        let coeffs: Vec<IntPolynomial> = (0..6u32)
            .map(|k| IntPolynomial::from_monomial(&crate::poly::Monomial::from_exps(
                false,
                crate::poly::MonomialExps::from_pairs([(y1, k)]),
            )))
            .collect();
        let f = SeriesTrunc::new(coeffs).unwrap();
        for q in 1..=2u32 {
            for c in 1..=4u32 {
                let mut vars = vec![y1];
                vars.extend(std::iter::repeat(x(1)).take(q as usize));
                assert_eq!(
                    f.series_entry(x(1), q, c).unwrap(),
                    build_b(&vars, c as i64 - q as i64).weight()
                );
            }
        }
    }

    #[test]
    fn canonical_coordinates_enumerate_pairs_in_order() {
        let coords = canonical_coords(&[2, 1, 1]);
        assert_eq!(
            coords,
            vec![(1, 2, 1), (1, 2, 2), (1, 3, 1), (1, 3, 2), (2, 3, 1)]
        );
        let set = canonical_product_set(&[x(1), x(2), x(3)], &[2, 1, 1]);
        assert_eq!(set.len(), 32);
    }
}
