//! Directed acyclic graphs with structured vertex names, the layered graph
//! families under study, and exact topological-order counting.
//!
//! Convention: an edge `u -> v` forces `f(u) > f(v)` for every counted
//! labeling `f` (labels decrease along edges). A labeling assigns
//! `1..=|V|` bijectively.
//!
//! Counting uses a bitmask dynamic program over descendant-closed vertex
//! sets, so graphs are capped at 64 vertices (tighter via the
//! `SELBERG_MAX_VERTICES` environment variable).

use crate::payload::Payload;
use crate::poly::Monomial;
use crate::signed::{SignedElement, SignedSet};
use crate::{Error, Result};
use num::{BigUint, One, Zero};
use std::collections::HashMap;
use std::fmt;

/// Vertex families, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexTag {
    X,
    U,
    Y,
    P,
    Q,
    R,
    V,
    W,
}

impl VertexTag {
    fn letter(self) -> char {
        match self {
            VertexTag::X => 'x',
            VertexTag::U => 'u',
            VertexTag::Y => 'y',
            VertexTag::P => 'p',
            VertexTag::Q => 'q',
            VertexTag::R => 'r',
            VertexTag::V => 'v',
            VertexTag::W => 'w',
        }
    }
}

/// A structured vertex name: a family tag plus up to three indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexName {
    pub tag: VertexTag,
    arity: u8,
    idx: [u16; 3],
}

impl VertexName {
    pub fn new(tag: VertexTag, indices: &[u16]) -> Self {
        assert!(indices.len() <= 3, "at most three indices");
        let mut idx = [0u16; 3];
        idx[..indices.len()].copy_from_slice(indices);
        VertexName { tag, arity: indices.len() as u8, idx }
    }

    pub fn x(i: u16) -> Self {
        Self::new(VertexTag::X, &[i])
    }

    pub fn u(i: u16) -> Self {
        Self::new(VertexTag::U, &[i])
    }

    pub fn y(i: u16) -> Self {
        Self::new(VertexTag::Y, &[i])
    }

    pub fn p(i: u16, k: u16) -> Self {
        Self::new(VertexTag::P, &[i, k])
    }

    pub fn q(i: u16, k: u16) -> Self {
        Self::new(VertexTag::Q, &[i, k])
    }

    pub fn r(i: u16, j: u16, k: u16) -> Self {
        Self::new(VertexTag::R, &[i, j, k])
    }

    pub fn v(i: u16, j: u16) -> Self {
        Self::new(VertexTag::V, &[i, j])
    }

    pub fn w(i: u16, j: u16, k: u16) -> Self {
        Self::new(VertexTag::W, &[i, j, k])
    }

    pub fn w2(i: u16, j: u16) -> Self {
        Self::new(VertexTag::W, &[i, j])
    }

    pub fn indices(&self) -> &[u16] {
        &self.idx[..self.arity as usize]
    }

    /// Identifier-safe form for DOT output: `w_1_2_3`.
    pub fn dot_id(&self) -> String {
        let mut s = self.tag.letter().to_string();
        for i in self.indices() {
            s.push('_');
            s.push_str(&i.to_string());
        }
        s
    }
}

impl fmt::Display for VertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag.letter())?;
        match self.indices() {
            [] => Ok(()),
            [i] => write!(f, "{i}"),
            more => {
                write!(f, "(")?;
                for (n, i) in more.iter().enumerate() {
                    if n > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A DAG over named vertices. Vertices are stored in canonical name order;
/// all index-based APIs refer to that order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dag {
    names: Vec<VertexName>,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

/// Hard ceiling imposed by the u64 bitmask.
const MASK_CAP: usize = 64;

fn vertex_cap() -> usize {
    match std::env::var("SELBERG_MAX_VERTICES") {
        Ok(v) => v.parse::<usize>().unwrap_or(MASK_CAP).min(MASK_CAP),
        Err(_) => MASK_CAP,
    }
}

impl Dag {
    pub fn new(mut names: Vec<VertexName>, edges_by_name: &[(VertexName, VertexName)]) -> Result<Self> {
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::pre(format!("duplicate vertex {}", w[0])));
            }
        }
        let index: HashMap<VertexName, usize> =
            names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut edges = Vec::with_capacity(edges_by_name.len());
        for (a, b) in edges_by_name {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::pre(format!("edge endpoint {a} not a vertex")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::pre(format!("edge endpoint {b} not a vertex")))?;
            if ia == ib {
                return Err(Error::pre(format!("self loop at {a}")));
            }
            edges.push((ia, ib));
        }
        edges.sort();
        edges.dedup();
        let mut out = vec![Vec::new(); names.len()];
        for &(a, b) in &edges {
            out[a].push(b);
        }
        let dag = Dag { names, edges, out };
        dag.check_acyclic()?;
        Ok(dag)
    }

    fn check_acyclic(&self) -> Result<()> {
        // Kahn's algorithm on out-degrees
        let n = self.names.len();
        let mut deg = vec![0usize; n];
        for &(a, _) in &self.edges {
            deg[a] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 0).collect();
        let mut seen = 0usize;
        let mut incoming = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            incoming[b].push(a);
        }
        while let Some(v) = stack.pop() {
            seen += 1;
            for &a in &incoming[v] {
                deg[a] -= 1;
                if deg[a] == 0 {
                    stack.push(a);
                }
            }
        }
        if seen != n {
            return Err(Error::pre("graph contains a cycle"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[VertexName] {
        &self.names
    }

    pub fn index_of(&self, name: &VertexName) -> Result<usize> {
        self.names
            .binary_search(name)
            .map_err(|_| Error::pre(format!("vertex {name} not in graph")))
    }

    pub fn has_edge(&self, a: &VertexName, b: &VertexName) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Ok(ia), Ok(ib)) => self.edges.binary_search(&(ia, ib)).is_ok(),
            _ => false,
        }
    }

    pub fn edges_by_name(&self) -> Vec<(VertexName, VertexName)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.names[a], self.names[b]))
            .collect()
    }

    pub fn with_edge_removed(&self, a: &VertexName, b: &VertexName) -> Result<Dag> {
        if !self.has_edge(a, b) {
            return Err(Error::pre(format!("edge {a} -> {b} not present")));
        }
        let edges: Vec<_> = self
            .edges_by_name()
            .into_iter()
            .filter(|(u, v)| !(u == a && v == b))
            .collect();
        Dag::new(self.names.clone(), &edges)
    }

    pub fn with_edge_added(&self, a: &VertexName, b: &VertexName) -> Result<Dag> {
        let mut edges = self.edges_by_name();
        edges.push((*a, *b));
        Dag::new(self.names.clone(), &edges)
    }

    fn check_fixed(&self, fixed: &[(VertexName, usize)]) -> Result<(Vec<Option<usize>>, HashMap<usize, usize>)> {
        // per-vertex fixed label, and label -> vertex
        let mut by_vertex = vec![None; self.len()];
        let mut by_label = HashMap::new();
        for (name, label) in fixed {
            let v = self.index_of(name)?;
            if *label < 1 || *label > self.len() {
                return Err(Error::pre(format!(
                    "label {label} out of range 1..={}",
                    self.len()
                )));
            }
            if by_vertex[v].replace(*label).is_some() {
                return Err(Error::pre(format!("vertex {name} fixed twice")));
            }
            if by_label.insert(*label, v).is_some() {
                return Err(Error::pre(format!("label {label} fixed twice")));
            }
        }
        Ok((by_vertex, by_label))
    }

    /// Count labelings, optionally with some vertices pinned to given
    /// labels. Exact big-integer result.
    pub fn count_topo(&self, fixed: &[(VertexName, usize)]) -> Result<BigUint> {
        let cap = vertex_cap();
        if self.len() > cap {
            return Err(Error::SizeLimit(format!(
                "{} vertices exceeds cap {cap}",
                self.len()
            )));
        }
        let (by_vertex, by_label) = self.check_fixed(fixed)?;
        if self.is_empty() {
            return Ok(BigUint::one());
        }
        let full: u64 = if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 };
        let mut memo: HashMap<u64, BigUint> = HashMap::new();
        Ok(self.count_rec(0, full, &by_vertex, &by_label, &mut memo))
    }

    fn count_rec(
        &self,
        mask: u64,
        full: u64,
        by_vertex: &[Option<usize>],
        by_label: &HashMap<usize, usize>,
        memo: &mut HashMap<u64, BigUint>,
    ) -> BigUint {
        if mask == full {
            return BigUint::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let next_label = mask.count_ones() as usize + 1;
        let mut total = BigUint::zero();
        let candidates: Vec<usize> = match by_label.get(&next_label) {
            Some(&v) => vec![v],
            None => (0..self.len())
                .filter(|&v| by_vertex[v].is_none())
                .collect(),
        };
        for v in candidates {
            if mask & (1 << v) != 0 {
                continue;
            }
            // v may take the next (smallest remaining) label when every
            // out-neighbor already has a smaller label
            if self.out[v].iter().any(|&w| mask & (1 << w) == 0) {
                continue;
            }
            total += self.count_rec(mask | (1 << v), full, by_vertex, by_label, memo);
        }
        memo.insert(mask, total.clone());
        total
    }

    /// Enumerate labelings as vectors indexed by canonical vertex order;
    /// entry v is the label of vertex v.
    pub fn enumerate_topo(&self, fixed: &[(VertexName, usize)]) -> Result<Vec<Vec<usize>>> {
        let cap = vertex_cap();
        if self.len() > cap {
            return Err(Error::SizeLimit(format!(
                "{} vertices exceeds cap {cap}",
                self.len()
            )));
        }
        let (by_vertex, by_label) = self.check_fixed(fixed)?;
        let mut out = Vec::new();
        let mut labels = vec![0usize; self.len()];
        self.enum_rec(0, &by_vertex, &by_label, &mut labels, &mut out);
        Ok(out)
    }

    fn enum_rec(
        &self,
        mask: u64,
        by_vertex: &[Option<usize>],
        by_label: &HashMap<usize, usize>,
        labels: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let placed = mask.count_ones() as usize;
        if placed == self.len() {
            out.push(labels.clone());
            return;
        }
        let next_label = placed + 1;
        let candidates: Vec<usize> = match by_label.get(&next_label) {
            Some(&v) => vec![v],
            None => (0..self.len())
                .filter(|&v| by_vertex[v].is_none())
                .collect(),
        };
        for v in candidates {
            if mask & (1 << v) != 0 {
                continue;
            }
            if self.out[v].iter().any(|&w| mask & (1 << w) == 0) {
                continue;
            }
            labels[v] = next_label;
            self.enum_rec(mask | (1 << v), by_vertex, by_label, labels, out);
            labels[v] = 0;
        }
    }

    /// DOT export for visual inspection.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for name in &self.names {
            s.push_str(&format!("  {} [label=\"{}\"];\n", name.dot_id(), name));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!(
                "  {} -> {};\n",
                self.names[a].dot_id(),
                self.names[b].dot_id()
            ));
        }
        s.push_str("}\n");
        s
    }

    /// JSON adjacency form: vertex list plus per-vertex successor lists,
    /// all in canonical order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> =
            self.names.iter().map(|n| n.to_string().into()).collect();
        let mut adjacency = serde_json::Map::new();
        for (v, outs) in self.out.iter().enumerate() {
            let mut sorted = outs.clone();
            sorted.sort();
            adjacency.insert(
                self.names[v].to_string(),
                serde_json::Value::Array(
                    sorted
                        .iter()
                        .map(|&w| self.names[w].to_string().into())
                        .collect(),
                ),
            );
        }
        serde_json::json!({ "vertices": vertices, "adjacency": adjacency })
    }
}

/// All labelings with the given fixings, as an unweighted signed set whose
/// payloads are the label vectors in canonical vertex order.
pub fn topo_signed_set(dag: &Dag, fixed: &[(VertexName, usize)]) -> Result<SignedSet> {
    let elems = dag
        .enumerate_topo(fixed)?
        .into_iter()
        .map(|f| {
            SignedElement::new(
                Payload::ints(f.iter().map(|&l| l as i64)),
                Monomial::one(),
            )
        })
        .collect();
    SignedSet::from_elems(elems)
}

fn check_min(name: &str, value: u32, min: u32) -> Result<()> {
    if value < min {
        return Err(Error::pre(format!("{name} must be at least {min}, got {value}")));
    }
    Ok(())
}

/// The layered family `G_S(n, a, b, c)`:
/// a chain x_n -> ... -> x_1, with a-1 pendants below and b-1 pendants
/// above each x_i, and 2c interior vertices between each pair x_i < x_j.
pub fn graph_gs(n: u32, a: u32, b: u32, c: u32) -> Result<Dag> {
    check_min("a", a, 1)?;
    check_min("b", b, 1)?;
    check_min("c", c, 1)?;
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=n as u16 {
        names.push(VertexName::x(i));
        if i >= 2 {
            edges.push((VertexName::x(i), VertexName::x(i - 1)));
        }
        for k in 1..=(a - 1) as u16 {
            names.push(VertexName::p(i, k));
            edges.push((VertexName::x(i), VertexName::p(i, k)));
        }
        for k in 1..=(b - 1) as u16 {
            names.push(VertexName::q(i, k));
            edges.push((VertexName::q(i, k), VertexName::x(i)));
        }
    }
    for i in 1..=n as u16 {
        for j in (i + 1)..=n as u16 {
            for k in 1..=(2 * c) as u16 {
                names.push(VertexName::r(i, j, k));
                edges.push((VertexName::x(j), VertexName::r(i, j, k)));
                edges.push((VertexName::r(i, j, k), VertexName::x(i)));
            }
        }
    }
    Dag::new(names, &edges)
}

/// The interaction family `G_X(alpha)`: a chain u_m -> ... -> u_1 with
/// alpha_i * alpha_j interior vertices between u_i and u_j for each i < j.
pub fn graph_gx(alpha: &[u32]) -> Result<Dag> {
    let m = alpha.len() as u16;
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=m {
        names.push(VertexName::u(i));
        if i >= 2 {
            edges.push((VertexName::u(i), VertexName::u(i - 1)));
        }
    }
    for i in 1..=m {
        for j in (i + 1)..=m {
            let count = alpha[i as usize - 1] * alpha[j as usize - 1];
            for k in 1..=count as u16 {
                names.push(VertexName::w(i, j, k));
                edges.push((VertexName::u(j), VertexName::w(i, j, k)));
                edges.push((VertexName::w(i, j, k), VertexName::u(i)));
            }
        }
    }
    Dag::new(names, &edges)
}

fn check_prime_alpha(alpha: &[u32]) -> Result<()> {
    if alpha.len() % 2 == 0 {
        return Err(Error::pre("alpha must have odd length"));
    }
    for (i, &a) in alpha.iter().enumerate() {
        if (i + 1) % 2 == 0 && a != 1 {
            return Err(Error::pre(format!(
                "alpha at even position {} must be 1, got {a}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// `G_X(alpha)` with the interior vertices of odd-odd pairs removed.
/// Even positions of alpha must be 1.
pub fn graph_ga_prime(alpha: &[u32]) -> Result<Dag> {
    check_prime_alpha(alpha)?;
    let m = alpha.len() as u16;
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=m {
        names.push(VertexName::u(i));
        if i >= 2 {
            edges.push((VertexName::u(i), VertexName::u(i - 1)));
        }
    }
    for i in 1..=m {
        for j in (i + 1)..=m {
            if i % 2 == 1 && j % 2 == 1 {
                continue;
            }
            let count = alpha[i as usize - 1] * alpha[j as usize - 1];
            for k in 1..=count as u16 {
                names.push(VertexName::w(i, j, k));
                edges.push((VertexName::u(j), VertexName::w(i, j, k)));
                edges.push((VertexName::w(i, j, k), VertexName::u(i)));
            }
        }
    }
    Dag::new(names, &edges)
}

/// The odd-position companion of [`graph_ga_prime`]: only the odd chain
/// vertices survive, and each odd pair i < j carries
/// `alpha_i + alpha_j + 1` interior vertices.
pub fn graph_gb_prime(alpha: &[u32]) -> Result<Dag> {
    check_prime_alpha(alpha)?;
    let m = alpha.len() as u16;
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut i = 1u16;
    while i <= m {
        names.push(VertexName::u(i));
        if i >= 3 {
            edges.push((VertexName::u(i), VertexName::u(i - 2)));
        }
        i += 2;
    }
    let mut a = 1u16;
    while a <= m {
        let mut b = a + 2;
        while b <= m {
            let count = alpha[a as usize - 1] + alpha[b as usize - 1] + 1;
            for k in 1..=count as u16 {
                names.push(VertexName::w(a, b, k));
                edges.push((VertexName::u(b), VertexName::w(a, b, k)));
                edges.push((VertexName::w(a, b, k), VertexName::u(a)));
            }
            b += 2;
        }
        a += 2;
    }
    Dag::new(names, &edges)
}

/// The interleaved family `G_K(n, a, b, c)` with x and y chains, pair
/// vertices v (x-x) and w (y-y), pendants p/q on the x's, and c-1 vertices
/// r between each x_i and y_j.
pub fn graph_gk(n: u32, a: u32, b: u32, c: u32) -> Result<Dag> {
    check_min("n", n, 1)?;
    check_min("a", a, 1)?;
    check_min("b", b, 1)?;
    check_min("c", c, 1)?;
    let n = n as u16;
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=n {
        names.push(VertexName::x(i));
        for k in 1..=(a - 1) as u16 {
            names.push(VertexName::p(i, k));
            edges.push((VertexName::x(i), VertexName::p(i, k)));
        }
        for k in 1..=(b - 1) as u16 {
            names.push(VertexName::q(i, k));
            edges.push((VertexName::q(i, k), VertexName::x(i)));
        }
    }
    for i in 1..n {
        names.push(VertexName::y(i));
        edges.push((VertexName::x(i + 1), VertexName::y(i)));
        edges.push((VertexName::y(i), VertexName::x(i)));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            names.push(VertexName::v(i, j));
            edges.push((VertexName::x(j), VertexName::v(i, j)));
            edges.push((VertexName::v(i, j), VertexName::x(i)));
        }
    }
    for i in 1..n {
        for j in (i + 1)..n {
            names.push(VertexName::w2(i, j));
            edges.push((VertexName::y(j), VertexName::w2(i, j)));
            edges.push((VertexName::w2(i, j), VertexName::y(i)));
        }
    }
    // r(i,j,k): between x_i and y_j; direction depends on chain order
    for i in 1..=n {
        for j in 1..n {
            for k in 1..=(c - 1) as u16 {
                names.push(VertexName::r(i, j, k));
                if j >= i {
                    // y_j is above x_i in the chain
                    edges.push((VertexName::y(j), VertexName::r(i, j, k)));
                    edges.push((VertexName::r(i, j, k), VertexName::x(i)));
                } else {
                    edges.push((VertexName::x(i), VertexName::r(i, j, k)));
                    edges.push((VertexName::r(i, j, k), VertexName::y(j)));
                }
            }
        }
    }
    Dag::new(names, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts_for_families() {
        assert_eq!(graph_gs(3, 3, 2, 1).unwrap().len(), 18);
        assert_eq!(graph_gs(0, 5, 7, 2).unwrap().len(), 0);
        assert_eq!(graph_gx(&[2, 1, 3]).unwrap().len(), 14);
        assert_eq!(graph_gk(3, 3, 2, 1).unwrap().len(), 18);
        assert_eq!(graph_gk(1, 4, 5, 9).unwrap().len(), graph_gs(1, 4, 5, 9).unwrap().len());
    }

    #[test]
    fn primed_families_have_equal_sizes() {
        for alpha in [
            vec![0, 1, 0],
            vec![1, 1, 1],
            vec![2, 1, 1],
            vec![2, 1, 3],
            vec![1, 1, 2, 1, 1],
            vec![3, 1, 0, 1, 2],
        ] {
            let ga = graph_ga_prime(&alpha).unwrap();
            let gb = graph_gb_prime(&alpha).unwrap();
            assert_eq!(ga.len(), gb.len(), "alpha={alpha:?}");
        }
    }

    #[test]
    fn empty_graph_counts_one() {
        let g = graph_gs(0, 1, 1, 1).unwrap();
        assert_eq!(g.count_topo(&[]).unwrap(), BigUint::one());
        assert_eq!(g.enumerate_topo(&[]).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn chain_has_one_labeling_antichain_has_factorial() {
        let g = graph_gx(&[1, 1]).unwrap(); // u2 -> w -> u1 plus u2 -> u1
        assert_eq!(g.count_topo(&[]).unwrap(), BigUint::one());

        let loose = Dag::new(
            vec![VertexName::u(1), VertexName::u(2), VertexName::u(3)],
            &[],
        )
        .unwrap();
        assert_eq!(loose.count_topo(&[]).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn single_block_family_counts_pendant_arrangements() {
        // G_S(1,a,b,c): a-1 pendants below x1, b-1 above: (a-1)!(b-1)!
        let g = graph_gs(1, 3, 2, 9).unwrap();
        assert_eq!(g.count_topo(&[]).unwrap(), BigUint::from(2u32));
        let g2 = graph_gs(1, 4, 3, 1).unwrap();
        assert_eq!(g2.count_topo(&[]).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn fixed_label_example() {
        // alpha = (1,1,1), u1 -> 1 and u3 -> 6: four labelings
        let g = graph_gx(&[1, 1, 1]).unwrap();
        assert_eq!(g.len(), 6);
        let fixed = [(VertexName::u(1), 1), (VertexName::u(3), 6)];
        assert_eq!(g.count_topo(&fixed).unwrap(), BigUint::from(4u32));
        let all = g.enumerate_topo(&fixed).unwrap();
        assert_eq!(all.len(), 4);
        // enumeration agrees with counting without fixings too
        assert_eq!(
            BigUint::from(g.enumerate_topo(&[]).unwrap().len()),
            g.count_topo(&[]).unwrap()
        );
    }

    #[test]
    fn fixing_one_position_partitions_the_count() {
        let g = graph_gs(2, 2, 2, 1).unwrap();
        let total = g.count_topo(&[]).unwrap();
        let n = g.len();
        let mut sum = BigUint::zero();
        for label in 1..=n {
            sum += g.count_topo(&[(VertexName::x(1), label)]).unwrap();
        }
        assert_eq!(sum, total);
    }

    #[test]
    fn count_respects_labels_decreasing_along_edges() {
        // two vertices, one edge u2 -> u1: only f(u2)=2, f(u1)=1
        let g = Dag::new(
            vec![VertexName::u(1), VertexName::u(2)],
            &[(VertexName::u(2), VertexName::u(1))],
        )
        .unwrap();
        let fs = g.enumerate_topo(&[]).unwrap();
        assert_eq!(fs, vec![vec![1, 2]]);
    }

    #[test]
    fn cycle_rejected() {
        let e = Dag::new(
            vec![VertexName::u(1), VertexName::u(2)],
            &[
                (VertexName::u(1), VertexName::u(2)),
                (VertexName::u(2), VertexName::u(1)),
            ],
        );
        assert!(e.is_err());
    }

    #[test]
    fn dot_and_json_are_stable() {
        let g = graph_gx(&[1, 1]).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("u_2 -> u_1"));
        assert!(dot.contains("w_1_2_1 -> u_1"));
        let js = g.to_json_value();
        assert_eq!(js["vertices"][0], "u1");
        assert_eq!(js["adjacency"]["u2"][0], "u1");
    }

    #[test]
    fn topo_signed_set_payloads_are_label_vectors() {
        let g = graph_gx(&[1, 1]).unwrap();
        let s = topo_signed_set(&g, &[]).unwrap();
        assert_eq!(s.len(), 1);
        // canonical vertex order: u1, u2, w(1,2,1); chain forces 1, 3, 2
        assert!(s.contains(&Payload::ints([1, 3, 2])));
    }
}
