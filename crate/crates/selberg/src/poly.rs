//! Exact multivariate polynomials over arbitrary-precision integers.
//!
//! Terms are kept in a canonical order (lexicographic over the sorted
//! variable/exponent maps), so equality, text output and JSON output are
//! all deterministic.

use crate::arith::binomial;
use num::bigint::{BigInt, Sign};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Variable families. The declaration order fixes the canonical variable
/// order: t < y_* < x_*.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum VarFamily {
    T,
    Y,
    X,
}

/// A named variable: a family plus a 1-based index (`t` ignores its index).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct VarId {
    pub family: VarFamily,
    pub index: u32,
}

impl VarId {
    pub fn x(index: u32) -> Self {
        VarId { family: VarFamily::X, index }
    }

    pub fn y(index: u32) -> Self {
        VarId { family: VarFamily::Y, index }
    }

    pub fn t() -> Self {
        VarId { family: VarFamily::T, index: 0 }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            VarFamily::T => write!(f, "t"),
            VarFamily::Y => write!(f, "y{}", self.index),
            VarFamily::X => write!(f, "x{}", self.index),
        }
    }
}

/// The exponent part of a monomial: variable -> positive exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MonomialExps(BTreeMap<VarId, u32>);

impl MonomialExps {
    pub fn one() -> Self {
        MonomialExps(BTreeMap::new())
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        MonomialExps(m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        MonomialExps(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(*v).or_insert(0) += e;
        }
        MonomialExps(m)
    }

    pub fn degree(&self) -> u64 {
        self.0.values().map(|&e| e as u64).sum()
    }

    pub fn degree_of(&self, v: VarId) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarId, &u32)> {
        self.0.iter()
    }

    /// Canonical text: `x1^2*x3^1`, or `1` for the empty monomial.
    pub fn text(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|(v, e)| format!("{v}^{e}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A signed monomial with unit coefficient: the weight of one signed-set
/// element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub negative: bool,
    pub exps: MonomialExps,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { negative: false, exps: MonomialExps::one() }
    }

    pub fn minus_one() -> Self {
        Monomial { negative: true, exps: MonomialExps::one() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { negative: false, exps: MonomialExps::var(v) }
    }

    pub fn var_neg(v: VarId) -> Self {
        Monomial { negative: true, exps: MonomialExps::var(v) }
    }

    pub fn from_exps(negative: bool, exps: MonomialExps) -> Self {
        Monomial { negative, exps }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            negative: self.negative != other.negative,
            exps: self.exps.mul(&other.exps),
        }
    }

    pub fn negated(&self) -> Self {
        Monomial { negative: !self.negative, exps: self.exps.clone() }
    }

    /// Sign as +1 or -1 with the variable part dropped.
    pub fn sign_only(&self) -> Self {
        Monomial { negative: self.negative, exps: MonomialExps::one() }
    }

    pub fn degree_of(&self, v: VarId) -> u32 {
        self.exps.degree_of(v)
    }

    /// Exact quotient, or None when some exponent of `other` exceeds ours.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let mut exps = self.exps.0.clone();
        for (v, e) in other.exps.iter() {
            let have = exps.get_mut(v)?;
            if *have < *e {
                return None;
            }
            *have -= *e;
            if *have == 0 {
                exps.remove(v);
            }
        }
        Some(Monomial {
            negative: self.negative != other.negative,
            exps: MonomialExps(exps),
        })
    }

    pub fn text(&self) -> String {
        if self.negative {
            format!("-{}", self.exps.text())
        } else {
            self.exps.text()
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// A polynomial with exact integer coefficients, stored sparsely with no
/// zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<MonomialExps, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(MonomialExps::one(), c);
        }
        IntPolynomial { terms }
    }

    pub fn var(v: VarId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(MonomialExps::var(v), BigInt::one());
        IntPolynomial { terms }
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let c = if m.negative { -BigInt::one() } else { BigInt::one() };
        let mut terms = BTreeMap::new();
        terms.insert(m.exps.clone(), c);
        IntPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialExps, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &MonomialExps) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exps: MonomialExps, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add_monomial(&mut self, m: &Monomial) {
        let c = if m.negative { -BigInt::one() } else { BigInt::one() };
        self.add_term(m.exps.clone(), &c);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = IntPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = IntPolynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Canonical text form: `c1*m1 + c2*m2 + ...` with monomials in
    /// canonical order; `0` for the zero polynomial.
    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                if e.is_one() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", e.text())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON form: array of `{"coeff": "<int>", "exps": {"x1": 2, ...}}`
    /// records in canonical term order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = e
                    .iter()
                    .map(|(v, k)| (v.to_string(), serde_json::Value::from(*k)))
                    .collect();
                serde_json::json!({ "coeff": c.to_string(), "exps": exps })
            })
            .collect();
        serde_json::Value::Array(arr)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Expand the full difference product `prod_{i<j} (x_j - x_i)^(alpha_i*alpha_j)`
/// over the given variables.
pub fn expand_signed_product(x: &[VarId], alpha: &[u32]) -> crate::Result<IntPolynomial> {
    if x.len() != alpha.len() {
        return Err(crate::Error::pre(format!(
            "variable list has length {}, exponent list has length {}",
            x.len(),
            alpha.len()
        )));
    }
    let mut out = IntPolynomial::one();
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let diff = IntPolynomial::var(x[j]).sub(&IntPolynomial::var(x[i]));
            out = out.mul(&diff.pow(alpha[i] * alpha[j]));
        }
    }
    Ok(out)
}

/// A power series in `t` truncated after a fixed number of coefficients;
/// coefficient k multiplies t^k and is itself an exact polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesTrunc {
    coeffs: Vec<IntPolynomial>,
}

impl SeriesTrunc {
    /// A series from its truncated coefficient list. The constant term
    /// must be the constant polynomial 1.
    pub fn new(coeffs: Vec<IntPolynomial>) -> crate::Result<Self> {
        match coeffs.first() {
            Some(c0) if *c0 == IntPolynomial::one() => Ok(SeriesTrunc { coeffs }),
            _ => Err(crate::Error::pre("series must start with constant term 1")),
        }
    }

    /// The geometric series 1/(1-t) truncated to `len` coefficients.
    pub fn geometric(len: usize) -> Self {
        SeriesTrunc { coeffs: vec![IntPolynomial::one(); len.max(1)] }
    }

    /// The constant series 1.
    pub fn one(len: usize) -> Self {
        let mut coeffs = vec![IntPolynomial::zero(); len.max(1)];
        coeffs[0] = IntPolynomial::one();
        SeriesTrunc { coeffs }
    }

    pub fn coeff(&self, k: usize) -> IntPolynomial {
        self.coeffs.get(k).cloned().unwrap_or_else(IntPolynomial::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of t^(j-i) in f(t)/(1-t*x)^i, the (i,j) entry of the
    /// series-derived stack in one variable. Rows and columns are 1-based;
    /// entries are zero above the needed range (j < i).
    pub fn series_entry(&self, x: VarId, i: u32, j: u32) -> crate::Result<IntPolynomial> {
        if i == 0 || j == 0 {
            return Err(crate::Error::pre("series_entry indices are 1-based"));
        }
        if j < i {
            return Ok(IntPolynomial::zero());
        }
        let d = (j - i) as usize;
        if d >= self.coeffs.len() {
            return Err(crate::Error::pre(format!(
                "series truncated to {} coefficients, need t^{}",
                self.coeffs.len(),
                d
            )));
        }
        // 1/(1-t*x)^i = sum_m C(i-1+m, m) x^m t^m
        let mut out = IntPolynomial::zero();
        for k in 0..=d {
            let m = d - k;
            let c = binomial(i as usize - 1 + m, m);
            let xm = IntPolynomial::var(x).pow(m as u32);
            let sign = Sign::Plus;
            out = out.add(
                &self
                    .coeff(k)
                    .mul(&xm)
                    .scale(&BigInt::from_biguint(sign, c)),
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff_of(p: &IntPolynomial, pairs: &[(VarId, u32)]) -> BigInt {
        p.coeff(&MonomialExps::from_pairs(pairs.iter().copied()))
    }

    #[test]
    fn vandermonde_three_vars_expands_to_six_terms() {
        let x = [VarId::x(1), VarId::x(2), VarId::x(3)];
        let p = expand_signed_product(&x, &[1, 1, 1]).unwrap();
        assert_eq!(p.num_terms(), 6);
        // x2*x3^2 - x2^2*x3 + x1*x2^2 - x1*x3^2 + x1^2*x3 - x1^2*x2
        assert_eq!(coeff_of(&p, &[(VarId::x(2), 1), (VarId::x(3), 2)]), BigInt::from(1));
        assert_eq!(coeff_of(&p, &[(VarId::x(2), 2), (VarId::x(3), 1)]), BigInt::from(-1));
        assert_eq!(coeff_of(&p, &[(VarId::x(1), 1), (VarId::x(2), 2)]), BigInt::from(1));
        assert_eq!(coeff_of(&p, &[(VarId::x(1), 1), (VarId::x(3), 2)]), BigInt::from(-1));
        assert_eq!(coeff_of(&p, &[(VarId::x(1), 2), (VarId::x(3), 1)]), BigInt::from(1));
        assert_eq!(coeff_of(&p, &[(VarId::x(1), 2), (VarId::x(2), 1)]), BigInt::from(-1));
    }

    #[test]
    fn difference_fourth_power_has_binomial_coefficients() {
        let x = [VarId::x(1), VarId::x(2)];
        let p = expand_signed_product(&x, &[2, 2]).unwrap();
        assert_eq!(p.num_terms(), 5);
        for (k, expect) in [(0u32, 1i64), (1, -4), (2, 6), (3, -4), (4, 1)] {
            let got = coeff_of(&p, &[(VarId::x(1), k), (VarId::x(2), 4 - k)]);
            assert_eq!(got, BigInt::from(expect), "coefficient of x1^{k}");
        }
    }

    #[test]
    fn empty_product_is_one() {
        let p = expand_signed_product(&[VarId::x(1)], &[3]).unwrap();
        assert_eq!(p, IntPolynomial::one());
        let q = expand_signed_product(&[], &[]).unwrap();
        assert_eq!(q, IntPolynomial::one());
    }

    #[test]
    fn series_entries_for_geometric_series() {
        // f = 1/(1-t): entry (1,3) = 1 + x + x^2; entry (2,4) = 1 + 2x + 3x^2.
        let f = SeriesTrunc::geometric(8);
        let x1 = VarId::x(1);
        let e13 = f.series_entry(x1, 1, 3).unwrap();
        let expect13 = IntPolynomial::one()
            .add(&IntPolynomial::var(x1))
            .add(&IntPolynomial::var(x1).pow(2));
        assert_eq!(e13, expect13);

        let e24 = f.series_entry(x1, 2, 4).unwrap();
        let expect24 = IntPolynomial::one()
            .add(&IntPolynomial::var(x1).scale(&BigInt::from(2)))
            .add(&IntPolynomial::var(x1).pow(2).scale(&BigInt::from(3)));
        assert_eq!(e24, expect24);
    }

    #[test]
    fn series_entry_below_diagonal_is_zero() {
        let f = SeriesTrunc::one(4);
        assert!(f.series_entry(VarId::x(1), 3, 2).unwrap().is_zero());
        // Constant series: entry (i,j) = C(i-1+d, d) x^d with d = j-i.
        let e = f.series_entry(VarId::x(1), 2, 4).unwrap();
        assert_eq!(
            e,
            IntPolynomial::var(VarId::x(1)).pow(2).scale(&BigInt::from(3))
        );
    }

    #[test]
    fn canonical_text_and_json_are_stable() {
        let x = [VarId::x(1), VarId::x(2)];
        let p = expand_signed_product(&x, &[1, 1]).unwrap();
        assert_eq!(p.text(), "-1*x1^1 + 1*x2^1");
        let json = serde_json::to_string(&p.to_json_value()).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":"-1","exps":{"x1":1}},{"coeff":"1","exps":{"x2":1}}]"#
        );
    }

    #[test]
    fn variable_order_is_t_then_y_then_x() {
        assert!(VarId::t() < VarId::y(1));
        assert!(VarId::y(9) < VarId::x(1));
        assert!(VarId::x(1) < VarId::x(2));
    }

    #[test]
    fn monomial_arithmetic() {
        let m = Monomial::var(VarId::x(1)).mul(&Monomial::var_neg(VarId::x(2)));
        assert!(m.negative);
        assert_eq!(m.degree_of(VarId::x(1)), 1);
        assert_eq!(m.negated().text(), "x1^1*x2^1");
        assert_eq!(Monomial::one().text(), "1");
        assert_eq!(m.sign_only(), Monomial::minus_one());
    }
}
