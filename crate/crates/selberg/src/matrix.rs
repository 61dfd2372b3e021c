//! Matrices of signed sets, their permutation expansion D(M), and the
//! row-operation sijections used to reduce the stacked binomial matrices.
//!
//! An element of D(M) is a permutation together with one pick from each
//! chosen entry, weighted by the permutation sign times the pick weights.
//! The weight of D(M) is the determinant of the entry-weight matrix, which
//! serves as the independent oracle for every reduction here.

use crate::arith::permutation_sign;
use crate::binomial::build_b;
use crate::payload::Payload;
use crate::poly::{IntPolynomial, Monomial, VarId};
use crate::signed::{SignedElement, SignedSet};
use crate::sijection::{Side, Sijection};
use crate::{Error, Result};
use itertools::Itertools;

/// Largest dimension for which D(M) is materialized.
pub const MAX_EXPANSION_DIM: usize = 7;

/// A rectangular grid of signed sets, row-major. Rows and columns are
/// 1-based in the public API, matching the matrix notation in use.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedSetMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<SignedSet>,
}

impl SignedSetMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<SignedSet>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::pre(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(SignedSetMatrix { rows, cols, entries })
    }

    pub fn empty() -> Self {
        SignedSetMatrix { rows: 0, cols: 0, entries: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &SignedSet {
        assert!(r >= 1 && r <= self.rows && c >= 1 && c <= self.cols);
        &self.entries[(r - 1) * self.cols + (c - 1)]
    }

    pub fn with_entry(&self, r: usize, c: usize, set: SignedSet) -> Self {
        let mut out = self.clone();
        out.entries[(r - 1) * self.cols + (c - 1)] = set;
        out
    }

    pub fn with_row(&self, r: usize, row: Vec<SignedSet>) -> Result<Self> {
        if row.len() != self.cols {
            return Err(Error::pre("row length mismatch"));
        }
        let mut out = self.clone();
        for (c, set) in row.into_iter().enumerate() {
            out.entries[(r - 1) * self.cols + c] = set;
        }
        Ok(out)
    }

    /// The matrix with row r and column c removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for rr in 1..=self.rows {
            if rr == r {
                continue;
            }
            for cc in 1..=self.cols {
                if cc == c {
                    continue;
                }
                entries.push(self.entry(rr, cc).clone());
            }
        }
        SignedSetMatrix { rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    fn check_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::pre(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    /// The permutation expansion D(M). Payloads are pairs
    /// (sigma as a tuple of 1-based images, picks as a tuple).
    pub fn expand_d(&self) -> Result<SignedSet> {
        let m = self.check_square()?;
        if m > MAX_EXPANSION_DIM {
            return Err(Error::SizeLimit(format!(
                "D(M) for {m}x{m} exceeds the materialization cap {MAX_EXPANSION_DIM}"
            )));
        }
        if m == 0 {
            return Ok(SignedSet::singleton(
                Payload::pair(Payload::empty_tuple(), Payload::empty_tuple()),
                Monomial::one(),
            ));
        }
        let mut elems = Vec::new();
        for sigma in (1..=m).permutations(m) {
            let sign = permutation_sign(&sigma);
            let entry_iters: Vec<Vec<&SignedElement>> = (1..=m)
                .map(|r| self.entry(r, sigma[r - 1]).iter().collect())
                .collect();
            if entry_iters.iter().any(|v| v.is_empty()) {
                continue;
            }
            let sigma_payload = Payload::ints(sigma.iter().map(|&c| c as i64));
            for picks in entry_iters.into_iter().multi_cartesian_product() {
                let mut weight = if sign < 0 { Monomial::minus_one() } else { Monomial::one() };
                let mut payloads = Vec::with_capacity(m);
                for p in picks {
                    weight = weight.mul(&p.weight);
                    payloads.push(p.payload.clone());
                }
                elems.push(SignedElement::new(
                    Payload::pair(sigma_payload.clone(), Payload::tuple(payloads)),
                    weight,
                ));
            }
        }
        SignedSet::from_elems(elems)
    }

    /// Determinant of the entry-weight matrix by direct permutation
    /// expansion; the independent oracle for w(D(M)).
    pub fn det_weight(&self) -> Result<IntPolynomial> {
        let weights: Vec<Vec<IntPolynomial>> = (1..=self.rows)
            .map(|r| (1..=self.cols).map(|c| self.entry(r, c).weight()).collect())
            .collect();
        self.check_square()?;
        Ok(det_poly(&weights))
    }

    /// Replace row `dst` by its sum with row `src` (negated when
    /// `subtract`), tagging the original entries left and the copied ones
    /// right. Returns the new matrix and the sijection
    /// D(self) <-> D(new).
    pub fn row_combine_sijection(
        &self,
        src: usize,
        dst: usize,
        subtract: bool,
    ) -> Result<(SignedSetMatrix, Sijection)> {
        let m = self.check_square()?;
        if src == dst {
            return Err(Error::pre("source and destination rows must differ"));
        }
        if src < 1 || src > m || dst < 1 || dst > m {
            return Err(Error::pre("row index out of range"));
        }
        let new_row: Vec<SignedSet> = (1..=m)
            .map(|c| {
                let copied = if subtract {
                    self.entry(src, c).negated()
                } else {
                    self.entry(src, c).clone()
                };
                self.entry(dst, c).sum(&copied)
            })
            .collect();
        let modified = self.with_row(dst, new_row)?;

        let left = self.expand_d()?;
        let right = modified.expand_d()?;
        let mut pair_list = Vec::new();
        for e in right.iter() {
            let (sigma, picks) = split_d_payload(&e.payload)?;
            let tagged = picks[dst - 1].expect_tuple("tagged pick")?;
            let tag = &tagged[0];
            let inner = tagged[1].clone();
            if *tag == crate::signed::SUM_LEFT {
                // original pick: pairs across with the untouched element
                let mut new_picks = picks.to_vec();
                new_picks[dst - 1] = inner;
                let partner = Payload::pair(
                    Payload::ints(sigma.iter().map(|&c| c as i64)),
                    Payload::tuple(new_picks),
                );
                pair_list.push(((Side::R, e.payload.clone()), (Side::L, partner)));
            } else {
                // copied pick from row src: swap the two rows' columns
                let mut new_sigma = sigma.clone();
                new_sigma.swap(src - 1, dst - 1);
                let mut new_picks = picks.to_vec();
                new_picks[dst - 1] =
                    Payload::pair(crate::signed::SUM_RIGHT, picks[src - 1].clone());
                new_picks[src - 1] = inner;
                let partner = Payload::pair(
                    Payload::ints(new_sigma.iter().map(|&c| c as i64)),
                    Payload::tuple(new_picks),
                );
                pair_list.push(((Side::R, e.payload.clone()), (Side::R, partner)));
            }
        }
        // dedupe the same-side pairs recorded from both endpoints
        let sij = build_from_pair_list(left, right, pair_list)?;
        Ok((modified, sij))
    }

    /// Lift per-column sijections acting on one row. `other` must agree
    /// with `self` outside `row`, and `cols[c-1]` must pair entry (row, c)
    /// of `self` with entry (row, c) of `other`.
    pub fn lift_row_sijections(
        &self,
        other: &SignedSetMatrix,
        row: usize,
        cols: &[Sijection],
    ) -> Result<Sijection> {
        let m = self.check_square()?;
        if cols.len() != m {
            return Err(Error::pre("need one column sijection per column"));
        }
        let left = self.expand_d()?;
        let right = other.expand_d()?;
        let mut pair_list = Vec::new();
        let mut emit = |side: Side, payload: &Payload| -> Result<()> {
            let (sigma, picks) = split_d_payload(payload)?;
            let c = sigma[row - 1];
            let partner = cols[c - 1]
                .pair_of(&(side, picks[row - 1].clone()))
                .ok_or_else(|| Error::mismatch("pick not covered by the column sijection"))?;
            let mut new_picks = picks.to_vec();
            new_picks[row - 1] = partner.1.clone();
            let img = Payload::pair(
                Payload::ints(sigma.iter().map(|&x| x as i64)),
                Payload::tuple(new_picks),
            );
            pair_list.push(((side, payload.clone()), (partner.0, img)));
            Ok(())
        };
        for e in left.iter() {
            emit(Side::L, &e.payload)?;
        }
        for e in right.iter() {
            emit(Side::R, &e.payload)?;
        }
        build_from_pair_list(left, right, pair_list)
    }

    /// Factor a row whose nonempty entries all have payloads
    /// (f, rest) with f drawn from `factor` and multiplicative weights.
    /// Returns the matrix of rest-parts and the sijection
    /// D(self) <-> factor x D(new).
    pub fn pull_row_factor(
        &self,
        row: usize,
        factor: &SignedSet,
    ) -> Result<(SignedSetMatrix, Sijection)> {
        let m = self.check_square()?;
        let mut stripped = self.clone();
        for c in 1..=m {
            if self.entry(row, c).len() % factor.len().max(1) != 0 {
                return Err(Error::pre("entry size is not a multiple of the factor size"));
            }
            // each rest-part shows up once per factor element
            let mut rests: std::collections::BTreeMap<Payload, Monomial> =
                std::collections::BTreeMap::new();
            for e in self.entry(row, c).iter() {
                let parts = e.payload.expect_tuple("factored entry")?;
                if parts.len() != 2 {
                    return Err(Error::pre("factored entry payload must be a pair"));
                }
                let f_weight = factor
                    .get(&parts[0])
                    .ok_or_else(|| Error::pre(format!("{} not in the row factor", parts[0])))?;
                let rest_weight = e.weight.div_exact(f_weight).ok_or_else(|| {
                    Error::pre("entry weight is not a multiple of the factor weight")
                })?;
                if let Some(prev) = rests.insert(parts[1].clone(), rest_weight.clone()) {
                    if prev != rest_weight {
                        return Err(Error::mismatch(
                            "inconsistent rest weight while factoring a row",
                        ));
                    }
                }
            }
            let elems = rests
                .into_iter()
                .map(|(p, w)| SignedElement::new(p, w))
                .collect();
            stripped = stripped.with_entry(row, c, SignedSet::from_elems(elems)?);
        }
        let left = self.expand_d()?;
        let right = SignedSet::product_many(&[factor, &stripped.expand_d()?]);
        let sij = Sijection::from_bijection(&left, &right, |payload| {
            let (sigma, picks) = split_d_payload(payload)?;
            let parts = picks[row - 1].expect_tuple("factored pick")?;
            let mut new_picks = picks.to_vec();
            new_picks[row - 1] = parts[1].clone();
            Ok(Payload::pair(
                parts[0].clone(),
                Payload::pair(
                    Payload::ints(sigma.iter().map(|&x| x as i64)),
                    Payload::tuple(new_picks),
                ),
            ))
        })?;
        Ok((stripped, sij))
    }

    /// Delete row 1 and column 1 when column 1 is empty apart from a
    /// weight-one singleton at (1,1). Returns the minor and the sijection
    /// D(self) <-> D(minor).
    pub fn delete_pivot(&self) -> Result<(SignedSetMatrix, Sijection)> {
        let m = self.check_square()?;
        if m == 0 {
            return Err(Error::pre("cannot delete the pivot of an empty matrix"));
        }
        let corner = self.entry(1, 1);
        if corner.len() != 1 || corner.iter().next().unwrap().weight != Monomial::one() {
            return Err(Error::pre("pivot entry is not a weight-one singleton"));
        }
        for r in 2..=m {
            if !self.entry(r, 1).is_empty() {
                return Err(Error::pre(format!("column 1 is not empty at row {r}")));
            }
        }
        let minor = self.minor(1, 1);
        let left = self.expand_d()?;
        let right = minor.expand_d()?;
        let sij = Sijection::from_bijection(&left, &right, |payload| {
            let (sigma, picks) = split_d_payload(payload)?;
            debug_assert_eq!(sigma[0], 1);
            Ok(Payload::pair(
                Payload::ints(sigma[1..].iter().map(|&c| (c - 1) as i64)),
                Payload::tuple(picks[1..].to_vec()),
            ))
        })?;
        Ok((minor, sij))
    }

    /// Laplace expansion along `row`: branches tagged by the chosen
    /// column, the branch set being (entry x D(minor)), negated when the
    /// cofactor sign is negative. Returns the branch sets and the
    /// sijection D(self) <-> sum of branches.
    pub fn laplace(&self, row: usize) -> Result<(Vec<(Payload, SignedSet)>, Sijection)> {
        let m = self.check_square()?;
        if row < 1 || row > m {
            return Err(Error::pre("row out of range"));
        }
        let mut branches = Vec::with_capacity(m);
        for c in 1..=m {
            let minor_d = self.minor(row, c).expand_d()?;
            let mut set = SignedSet::product_many(&[self.entry(row, c), &minor_d]);
            if (row + c) % 2 == 1 {
                set = set.negated();
            }
            branches.push((Payload::Int(c as i64), set));
        }
        let left = self.expand_d()?;
        let right = SignedSet::sum_many(
            &branches.iter().map(|(t, s)| (t.clone(), s.clone())).collect::<Vec<_>>(),
        )?;
        let sij = Sijection::from_bijection(&left, &right, |payload| {
            let (sigma, picks) = split_d_payload(payload)?;
            let c = sigma[row - 1];
            let mut minor_sigma = Vec::with_capacity(sigma.len() - 1);
            for (r, &col) in sigma.iter().enumerate() {
                if r + 1 == row {
                    continue;
                }
                minor_sigma.push(if col > c { (col - 1) as i64 } else { col as i64 });
            }
            let mut minor_picks = picks.to_vec();
            minor_picks.remove(row - 1);
            let minor_elem = Payload::pair(
                Payload::ints(minor_sigma),
                Payload::tuple(minor_picks),
            );
            Ok(Payload::pair(
                Payload::Int(c as i64),
                Payload::pair(picks[row - 1].clone(), minor_elem),
            ))
        })?;
        Ok((branches, sij))
    }

    /// JSON grid of serialized entries.
    pub fn to_json_value(&self) -> serde_json::Value {
        let grid: Vec<serde_json::Value> = (1..=self.rows)
            .map(|r| {
                (1..=self.cols)
                    .map(|c| self.entry(r, c).to_json_value())
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": grid })
    }
}

/// Split a D-element payload into the permutation images and the picks.
pub fn split_d_payload(payload: &Payload) -> Result<(Vec<usize>, &[Payload])> {
    let parts = payload.expect_tuple("expansion element")?;
    if parts.len() != 2 {
        return Err(Error::pre("expansion element payload must be a pair"));
    }
    let sigma = parts[0]
        .expect_tuple("permutation")?
        .iter()
        .map(|p| p.as_int().map(|v| v as usize))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::pre("permutation entries must be integers"))?;
    Ok((sigma, parts[1].expect_tuple("picks")?))
}

/// Determinant by Leibniz expansion with exact polynomial arithmetic.
pub fn det_poly(grid: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let m = grid.len();
    if m == 0 {
        return IntPolynomial::one();
    }
    let mut det = IntPolynomial::zero();
    for sigma in (0..m).permutations(m) {
        let sign = permutation_sign(&sigma.iter().map(|&c| c + 1).collect::<Vec<_>>());
        let mut term = IntPolynomial::one();
        for (r, &c) in sigma.iter().enumerate() {
            term = term.mul(&grid[r][c]);
            if term.is_zero() {
                break;
            }
        }
        det = if sign < 0 { det.sub(&term) } else { det.add(&term) };
    }
    det
}

fn build_from_pair_list(
    left: SignedSet,
    right: SignedSet,
    pair_list: Vec<((Side, Payload), (Side, Payload))>,
) -> Result<Sijection> {
    // same-side pairs get recorded from both ends; keep one copy
    let mut seen = std::collections::HashSet::new();
    let mut deduped = Vec::with_capacity(pair_list.len());
    for (a, b) in pair_list {
        if seen.contains(&a) || seen.contains(&b) {
            continue;
        }
        seen.insert(a.clone());
        seen.insert(b.clone());
        deduped.push((a, b));
    }
    Sijection::new(left, right, deduped)
}

/// The stacked matrix H(Y, X, alpha): for each i with alpha_i >= 1, a block
/// of alpha_i rows whose q-th row has entries B((Y, x_i^q), c - q) for
/// columns c in [m], m = sum of alpha.
pub fn build_h(y: &[VarId], x: &[VarId], alpha: &[u32]) -> Result<SignedSetMatrix> {
    if x.len() != alpha.len() {
        return Err(Error::pre("need one multiplicity per variable"));
    }
    let m: u32 = alpha.iter().sum();
    let m = m as usize;
    let mut entries = Vec::with_capacity(m * m);
    for (i, &a) in alpha.iter().enumerate() {
        for q in 1..=a as usize {
            let mut vars = y.to_vec();
            vars.extend(std::iter::repeat(x[i]).take(q));
            for c in 1..=m {
                entries.push(build_b(&vars, c as i64 - q as i64));
            }
        }
    }
    SignedSetMatrix::new(m, m, entries)
}

/// Row q of the upgraded block: B((x^(q+1)), c - q).
fn m1_row(x: VarId, q: usize, m: usize) -> Vec<SignedSet> {
    let vars = vec![x; q + 1];
    (1..=m).map(|c| build_b(&vars, c as i64 - q as i64)).collect()
}

/// The tagged pendant row: [c] x B((x), c - 1).
fn m2_row(x: VarId, m: usize) -> Vec<SignedSet> {
    (1..=m)
        .map(|c| SignedSet::product_many(&[&SignedSet::range(c as u64), &build_b(&[x], c as i64 - 1)]))
        .collect()
}

/// The difference row: B((hi), c) - B((lo), c).
fn m3_row(lo: VarId, hi: VarId, m: usize) -> Vec<SignedSet> {
    (1..=m)
        .map(|c| build_b(&[hi], c as i64).difference(&build_b(&[lo], c as i64)))
        .collect()
}

/// The interleaved stack H1: upgraded blocks for the odd-position
/// variables, one tagged pendant row for each even-position variable.
/// `x` lists all 2n-1 variables; `alpha_odd` the odd-position
/// multiplicities.
pub fn build_h1(x: &[VarId], alpha_odd: &[u32]) -> Result<SignedSetMatrix> {
    if alpha_odd.is_empty() {
        return Err(Error::pre("need at least one odd block"));
    }
    if x.len() != 2 * alpha_odd.len() - 1 {
        return Err(Error::pre(format!(
            "variable list of length {} does not interleave {} odd blocks",
            x.len(),
            alpha_odd.len()
        )));
    }
    let m = alpha_odd.iter().sum::<u32>() as usize + alpha_odd.len() - 1;
    let mut entries = Vec::with_capacity(m * m);
    for (b, &a) in alpha_odd.iter().enumerate() {
        for q in 1..=a as usize {
            entries.extend(m1_row(x[2 * b], q, m));
        }
        if b + 1 < alpha_odd.len() {
            entries.extend(m2_row(x[2 * b + 1], m));
        }
    }
    SignedSetMatrix::new(m, m, entries)
}

/// The reduced stack H2: upgraded blocks for the odd-position variables
/// separated by difference rows between consecutive odd variables.
/// `x_odd` lists only the odd-position variables.
pub fn build_h2(x_odd: &[VarId], alpha_odd: &[u32]) -> Result<SignedSetMatrix> {
    if x_odd.len() != alpha_odd.len() || x_odd.is_empty() {
        return Err(Error::pre("need one multiplicity per odd variable"));
    }
    let m = alpha_odd.iter().sum::<u32>() as usize + alpha_odd.len() - 1;
    let mut entries = Vec::with_capacity(m * m);
    for (b, &a) in alpha_odd.iter().enumerate() {
        for q in 1..=a as usize {
            entries.extend(m1_row(x_odd[b], q, m));
        }
        if b + 1 < alpha_odd.len() {
            entries.extend(m3_row(x_odd[b], x_odd[b + 1], m));
        }
    }
    SignedSetMatrix::new(m, m, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;

    fn x(i: u32) -> VarId {
        VarId::x(i)
    }

    #[test]
    fn expansion_of_singletons_matches_two_permutations() {
        let one = SignedSet::singleton(Payload::Int(0), Monomial::one());
        let wx1 = SignedSet::singleton(Payload::Int(1), Monomial::var(x(1)));
        let wx2 = SignedSet::singleton(Payload::Int(2), Monomial::var(x(2)));
        let m = SignedSetMatrix::new(
            2,
            2,
            vec![one.clone(), wx1.clone(), one.clone(), wx2.clone()],
        )
        .unwrap();
        let d = m.expand_d().unwrap();
        assert_eq!(d.len(), 2);
        let w = d.weight();
        assert_eq!(w.text(), "-1*x1^1 + 1*x2^1");
        assert_eq!(w, m.det_weight().unwrap());
    }

    #[test]
    fn empty_matrix_expands_to_single_unit() {
        let d = SignedSetMatrix::empty().expand_d().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.weight(), IntPolynomial::one());
    }

    #[test]
    fn expansion_weight_is_determinant_for_h() {
        let h = build_h(&[], &[x(1), x(2)], &[1, 1]).unwrap();
        let d = h.expand_d().unwrap();
        assert_eq!(d.weight().text(), "-1*x1^1 + 1*x2^1");
        for (y, alpha) in [
            (vec![], vec![2u32, 2]),
            (vec![VarId::y(1)], vec![1, 2]),
            (vec![], vec![1, 1, 1]),
        ] {
            let h = build_h(&y, &[x(1), x(2), x(3)][..alpha.len()], &alpha).unwrap();
            assert_eq!(h.expand_d().unwrap().weight(), h.det_weight().unwrap());
        }
    }

    #[test]
    fn h_matches_worked_layout() {
        // H((),(x1,x2),(2,2)): rows B((x1),c-1), B((x1,x1),c-2),
        // B((x2),c-1), B((x2,x2),c-2)
        let h = build_h(&[], &[x(1), x(2)], &[2, 2]).unwrap();
        assert_eq!(h.rows(), 4);
        assert!(h.entry(2, 1).is_empty());
        assert_eq!(*h.entry(1, 3), build_b(&[x(1)], 2));
        assert_eq!(*h.entry(4, 4), build_b(&[x(2), x(2)], 2));
        // zero blocks are skipped
        let h0 = build_h(&[], &[x(1), x(2), x(3)], &[0, 2, 0]).unwrap();
        assert_eq!(h0, build_h(&[], &[x(2)], &[2]).unwrap());
    }

    #[test]
    fn h1_and_h2_layouts() {
        let h1 = build_h1(&[x(1), x(2), x(3)], &[1, 2]).unwrap();
        assert_eq!(h1.rows(), 4);
        // row 1: B((x1,x1), c-1); row 2: [c] x B((x2), c-1); rows 3-4: x3 block
        assert_eq!(*h1.entry(1, 2), build_b(&[x(1), x(1)], 1));
        assert_eq!(h1.entry(2, 3).len(), 3);
        assert_eq!(*h1.entry(3, 2), build_b(&[x(3), x(3)], 1));
        assert_eq!(*h1.entry(4, 4), build_b(&[x(3), x(3), x(3)], 2));

        let h2 = build_h2(&[x(1), x(3)], &[1, 2]).unwrap();
        assert_eq!(h2.rows(), 4);
        let m3 = build_b(&[x(3)], 3).difference(&build_b(&[x(1)], 3));
        assert_eq!(*h2.entry(2, 3), m3);

        let tiny = build_h1(&[x(1)], &[1]).unwrap();
        assert_eq!(tiny.rows(), 1);
        assert_eq!(*tiny.entry(1, 1), build_b(&[x(1), x(1)], 0));
    }

    #[test]
    fn row_combine_produces_verified_sijection() {
        let m = build_h(&[], &[x(1), x(2)], &[1, 1]).unwrap();
        let (modified, sij) = m.row_combine_sijection(1, 2, true).unwrap();
        assert!(sij.verify().ok());
        assert_eq!(modified.entry(2, 1).len(), 2);
        assert_eq!(sij.left().weight(), sij.right().weight());

        // the worked 4x4 first step: subtract row 1 from row 3
        let h = build_h(&[], &[x(1), x(2)], &[2, 2]).unwrap();
        let (_, sij) = h.row_combine_sijection(1, 3, true).unwrap();
        assert!(sij.verify().ok());

        assert!(m.row_combine_sijection(1, 1, true).is_err());
    }

    #[test]
    fn pivot_deletion_posts_are_checked() {
        // [ {1}, {x1} ; {}, {x2} ] deletes to [ {x2} ]
        let one = SignedSet::singleton(Payload::empty_tuple(), Monomial::one());
        let a = SignedSet::singleton(Payload::Int(1), Monomial::var(x(1)));
        let b = SignedSet::singleton(Payload::Int(2), Monomial::var(x(2)));
        let m = SignedSetMatrix::new(2, 2, vec![one, a, SignedSet::empty(), b]).unwrap();
        let (minor, sij) = m.delete_pivot().unwrap();
        assert_eq!(minor.rows(), 1);
        assert!(sij.verify().ok());
        assert_eq!(sij.left().weight(), sij.right().weight());

        let bad = build_h(&[], &[x(1), x(2)], &[1, 1]).unwrap();
        assert!(bad.delete_pivot().is_err());
    }

    #[test]
    fn laplace_expansion_is_a_sijection() {
        for row in 1..=3 {
            let h = build_h(&[], &[x(1), x(2), x(3)], &[1, 1, 1]).unwrap();
            let (branches, sij) = h.laplace(row).unwrap();
            assert_eq!(branches.len(), 3);
            assert!(sij.verify().ok());
            assert_eq!(sij.left().weight(), sij.right().weight());
        }
    }

    #[test]
    fn pull_row_factor_strips_a_uniform_first_coordinate() {
        // build a 1x1 matrix whose entry is {x2,-x1} x B((x1,x2),1)
        let factor = crate::binomial::pair_set(x(2), x(1));
        let entry = SignedSet::product_many(&[&factor, &build_b(&[x(1), x(2)], 1)]);
        let m = SignedSetMatrix::new(1, 1, vec![entry]).unwrap();
        let (stripped, sij) = m.pull_row_factor(1, &factor).unwrap();
        assert_eq!(*stripped.entry(1, 1), build_b(&[x(1), x(2)], 1));
        assert!(sij.verify().ok());
        assert_eq!(sij.left().weight(), sij.right().weight());
    }

    #[test]
    fn json_grid_shape() {
        let m = build_h(&[], &[x(1)], &[1]).unwrap();
        let js = m.to_json_value();
        assert_eq!(js["rows"], 1);
        assert!(js["entries"][0][0].is_array());
    }
}
