//! MOY graphs, quantum integers and the flag-variety side: graded ranks,
//! the Gram pairing of generalized theta webs, structure constants and
//! Littlewood–Richardson coefficients computed by closed foams.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foamcore::Decoration;
use crate::foameval::{eval, EvalError};
use crate::foamzoo::{build_gen_theta_closed, GenThetaDecorations, ZooError};
use crate::polyring::MultiPoly;
use crate::schur::{enumerate_box, SchurCombo, SchurError, YoungDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoyError {
    #[error("invalid MOY graph: {0}")]
    Invalid(String),
    #[error("labels sum to {got}, expected N = {n}")]
    SumMismatch { got: usize, n: usize },
    #[error("diagram {0} is outside the box T({1}, {2})")]
    OutOfBox(YoungDiagram, usize, usize),
    #[error("sizes do not match: |α| + |β| = {0} but |λ| = {1}")]
    DegreeMismatch(usize, usize),
    #[error("structure constant is not an integer: {0}")]
    NotInteger(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Split,
    Merge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyVertex {
    pub id: usize,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyEdge {
    pub id: usize,
    pub label: usize,
    pub tail: usize,
    pub head: usize,
}

/// A labeled trivalent graph with free circles. No planar embedding is kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyGraph {
    pub n: usize,
    #[serde(default)]
    pub vertices: Vec<MoyVertex>,
    #[serde(default)]
    pub edges: Vec<MoyEdge>,
    /// Labels of the free circles.
    #[serde(default)]
    pub circles: Vec<usize>,
}

impl MoyGraph {
    pub fn circle(n: usize, k: usize) -> MoyGraph {
        MoyGraph { n, vertices: vec![], edges: vec![], circles: vec![k] }
    }

    /// The generalized theta web: a chain of splits from the `N` edge down to
    /// the strands `a_1, ..., a_k`, then a chain of merges back up.
    pub fn theta(a_vec: &[usize]) -> MoyGraph {
        let n: usize = a_vec.iter().sum();
        let k = a_vec.len();
        if k <= 1 {
            return MoyGraph::circle(n, n);
        }
        let mut g = MoyGraph { n, vertices: vec![], edges: vec![], circles: vec![] };
        // splits s_i and merges m_i for i = 2..=k
        let s = |i: usize| i - 2;
        let m = |i: usize| k - 1 + i - 2;
        for _ in 2..=k {
            g.vertices.push(MoyVertex { id: g.vertices.len(), kind: VertexKind::Split });
        }
        for _ in 2..=k {
            g.vertices.push(MoyVertex { id: g.vertices.len(), kind: VertexKind::Merge });
        }
        let mut add = |label: usize, tail: usize, head: usize| {
            let id = g.edges.len();
            g.edges.push(MoyEdge { id, label, tail, head });
        };
        let partial = |i: usize| a_vec[..i].iter().sum::<usize>();
        // strand 1 runs from s_2 to m_2, strand i from s_i to m_i
        add(a_vec[0], s(2), m(2));
        for i in 2..=k {
            add(a_vec[i - 1], s(i), m(i));
        }
        for i in 2..k {
            add(partial(i), s(i + 1), s(i));
            add(partial(i), m(i), m(i + 1));
        }
        add(n, m(k), s(k));
        g
    }

    /// `(thin, thin, thick)` edge ids at a vertex; thin edges in id order.
    pub fn vertex_edges(&self, v: usize) -> Result<([usize; 2], usize), MoyError> {
        let kind = self.vertices.get(v).ok_or(MoyError::Invalid(format!("no vertex {v}")))?.kind;
        let ins: Vec<usize> = self.edges.iter().filter(|e| e.head == v).map(|e| e.id).collect();
        let outs: Vec<usize> = self.edges.iter().filter(|e| e.tail == v).map(|e| e.id).collect();
        let (thin, thick) = match kind {
            VertexKind::Split => (outs, ins),
            VertexKind::Merge => (ins, outs),
        };
        if thin.len() != 2 || thick.len() != 1 {
            return Err(MoyError::Invalid(format!("vertex {v} has {} thin and {} thick edges", thin.len(), thick.len())));
        }
        Ok(([thin[0], thin[1]], thick[0]))
    }

    pub fn validate(&self) -> Result<(), MoyError> {
        if self.n == 0 || self.n > crate::foamcore::MAX_N {
            return Err(MoyError::Invalid(format!("N = {} is out of range", self.n)));
        }
        for (k, v) in self.vertices.iter().enumerate() {
            if v.id != k {
                return Err(MoyError::Invalid(format!("vertex {k} has id {}", v.id)));
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.id != k {
                return Err(MoyError::Invalid(format!("edge {k} has id {}", e.id)));
            }
            if e.label > self.n {
                return Err(MoyError::Invalid(format!("edge {k} has label {} > N", e.label)));
            }
            if e.tail >= self.vertices.len() || e.head >= self.vertices.len() {
                return Err(MoyError::Invalid(format!("edge {k} refers to a missing vertex")));
            }
        }
        if let Some(&c) = self.circles.iter().find(|&&c| c > self.n) {
            return Err(MoyError::Invalid(format!("circle label {c} > N")));
        }
        for v in 0..self.vertices.len() {
            let ([x, y], z) = self.vertex_edges(v)?;
            if self.edges[x].label + self.edges[y].label != self.edges[z].label {
                return Err(MoyError::Invalid(format!("vertex {v}: flow condition fails")));
            }
        }
        Ok(())
    }
}

pub fn moy_from_json(s: &str) -> Result<MoyGraph, String> {
    let g: MoyGraph = serde_json::from_str(s).map_err(|e| crate::foamcore::json_error(&e))?;
    g.validate().map_err(|e| e.to_string())?;
    Ok(g)
}

pub fn moy_to_json(g: &MoyGraph) -> String {
    serde_json::to_string_pretty(g).expect("graph serializes")
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Number of colorings of the edges by pigment subsets of the right sizes
/// such that the thick edge carries the disjoint union at every vertex.
pub fn moy_coloring_count(g: &MoyGraph) -> Result<BigInt, MoyError> {
    g.validate()?;
    let n = g.n;
    let vert_edges: Vec<([usize; 2], usize)> =
        (0..g.vertices.len()).map(|v| g.vertex_edges(v)).collect::<Result<_, _>>()?;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.edges.len()];
    for (v, ([x, y], z)) in vert_edges.iter().enumerate() {
        for e in [x, y, z] {
            incident[*e].push(v);
        }
    }
    fn rec(
        k: usize,
        g: &MoyGraph,
        col: &mut Vec<Option<u32>>,
        vert_edges: &[([usize; 2], usize)],
        incident: &[Vec<usize>],
        choices: &[Vec<u32>],
    ) -> u64 {
        if k == g.edges.len() {
            return 1;
        }
        let mut total = 0;
        for &s in &choices[g.edges[k].label] {
            col[k] = Some(s);
            let ok = incident[k].iter().all(|&v| {
                let ([x, y], z) = vert_edges[v];
                match (col[x], col[y], col[z]) {
                    (Some(p), Some(q), Some(r)) => p & q == 0 && p | q == r,
                    (Some(p), Some(q), None) => p & q == 0,
                    (Some(p), None, Some(r)) | (None, Some(p), Some(r)) => p & !r == 0,
                    _ => true,
                }
            });
            if ok {
                total += rec(k + 1, g, col, vert_edges, incident, choices);
            }
        }
        col[k] = None;
        total
    }
    let choices: Vec<Vec<u32>> = (0..=n).map(|k| subsets_of_size(n, k)).collect();
    let mut col = vec![None; g.edges.len()];
    let mut count = BigInt::from(rec(0, g, &mut col, &vert_edges, &incident, &choices));
    for &c in &g.circles {
        count *= binomial(n, c);
    }
    Ok(count)
}

/// A Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c.into());
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.add_term(e, c.clone());
        }
        r
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Invariant under `q -> q^{-1}`.
    pub fn is_palindromic(&self) -> bool {
        self.terms.iter().all(|(&e, c)| self.coeff(-e) == *c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if !unit {
                        write!(f, "{a}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?
                    } else {
                        write!(f, "q^{e}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// `[k] = (q^k - q^{-k}) / (q - q^{-1})`.
pub fn qint(k: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    let sign = if k < 0 { -1 } else { 1 };
    let m = k.abs();
    for j in 0..m {
        p.add_term(m - 1 - 2 * j, BigInt::from(sign));
    }
    p
}

/// Quantum binomial `[l choose k]`, zero when `k < 0` or `k > l`.
pub fn qbinom(l: i64, k: i64) -> LaurentPoly {
    if k < 0 || l < 0 || k > l {
        return LaurentPoly::zero();
    }
    // row-by-row quantum Pascal rule
    let mut row = vec![LaurentPoly::one()];
    for n in 1..=l {
        let mut next = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let left = if j < n { row[j as usize].shift(-j) } else { LaurentPoly::zero() };
            let right = if j > 0 { row[j as usize - 1].shift(n - j) } else { LaurentPoly::zero() };
            next.push(left.add(&right));
        }
        row = next;
    }
    row[k as usize].clone()
}

/// `[a_1 + ... + a_k]! / ([a_1]! ... [a_k]!)`.
pub fn qmultinomial(a_vec: &[usize]) -> LaurentPoly {
    let mut r = LaurentPoly::one();
    let mut s = 0i64;
    for &a in a_vec {
        s += a as i64;
        r = r.mul(&qbinom(s, a as i64));
    }
    r
}

/// Graded rank of the state space of `θ(a_1, ..., a_k)` with `Σ a_i = N`.
pub fn graded_rank_theta(a_vec: &[usize], n: usize) -> Result<LaurentPoly, MoyError> {
    let got: usize = a_vec.iter().sum();
    if got != n {
        return Err(MoyError::SumMismatch { got, n });
    }
    Ok(qmultinomial(a_vec))
}

fn partial_sums(a_vec: &[usize]) -> Vec<usize> {
    a_vec.iter().scan(0, |s, &a| {
        *s += a;
        Some(*s)
    }).collect()
}

/// One element of the basis or the dual basis of a theta state space:
/// the index `(λ_2, ..., λ_k)`, a sign, and the decorations it places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaHalf {
    pub index: Vec<YoungDiagram>,
    pub sign: i64,
    pub decorations: GenThetaDecorations,
}

fn index_tuples(a_vec: &[usize]) -> Vec<Vec<YoungDiagram>> {
    let ps = partial_sums(a_vec);
    let mut out: Vec<Vec<YoungDiagram>> = vec![vec![]];
    for i in 1..a_vec.len() {
        let boxes = enumerate_box(a_vec[i], ps[i - 1]);
        out = out
            .into_iter()
            .flat_map(|t| {
                boxes.iter().map(move |d| {
                    let mut t2 = t.clone();
                    t2.push(d.clone());
                    t2
                })
            })
            .collect();
    }
    out
}

fn check_sum(a_vec: &[usize]) -> Result<usize, MoyError> {
    if a_vec.is_empty() || a_vec.contains(&0) {
        return Err(MoyError::Invalid("labels must be positive".into()));
    }
    Ok(a_vec.iter().sum())
}

/// Cups decorated by `π_{λ_i}` on strand `i`, with `λ_i ∈ T(a_i, a_1 + ... + a_{i-1})`.
pub fn theta_basis(a_vec: &[usize]) -> Result<Vec<ThetaHalf>, MoyError> {
    check_sum(a_vec)?;
    let k = a_vec.len();
    Ok(index_tuples(a_vec)
        .into_iter()
        .map(|idx| {
            let mut d = GenThetaDecorations::trivial(k);
            for (i, lam) in idx.iter().enumerate() {
                d.strands[i + 1] = Decoration::single(a_vec[i + 1], lam.clone());
            }
            ThetaHalf { index: idx, sign: 1, decorations: d }
        })
        .collect())
}

/// The dual caps: `π_{λ̂_i}` on the partial-sum facet below strand `i`,
/// with sign `(-1)^{Σ|λ̂_i| + N(N+1)/2}`.
pub fn theta_dual_basis(a_vec: &[usize]) -> Result<Vec<ThetaHalf>, MoyError> {
    let n = check_sum(a_vec)?;
    let ps = partial_sums(a_vec);
    let k = a_vec.len();
    index_tuples(a_vec)
        .into_iter()
        .map(|idx| {
            let mut d = GenThetaDecorations::trivial(k);
            let mut size = 0;
            for (i, lam) in idx.iter().enumerate() {
                let hat = lam.dual_in(a_vec[i + 1], ps[i])?;
                size += hat.size();
                d.partials[i] = Decoration::single(ps[i], hat);
            }
            let sign = if (size + n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
            Ok(ThetaHalf { index: idx, sign, decorations: d })
        })
        .collect()
}

/// `⟨cap_j ∘ cup_i⟩` for every pair.
pub fn gram_pairing(a_vec: &[usize], left: &[ThetaHalf], right: &[ThetaHalf]) -> Result<Vec<Vec<MultiPoly>>, MoyError> {
    let mut out = Vec::with_capacity(left.len());
    for l in left {
        let mut row = Vec::with_capacity(right.len());
        for r in right {
            let f = build_gen_theta_closed(a_vec, &l.decorations.times(&r.decorations))?;
            let v = eval(&f)?;
            row.push(v.scale(&BigInt::from(l.sign * r.sign)));
        }
        out.push(row);
    }
    Ok(out)
}

/// The Gram matrix of the basis against the dual basis.
pub fn gram_matrix(a_vec: &[usize]) -> Result<Vec<Vec<MultiPoly>>, MoyError> {
    gram_pairing(a_vec, &theta_basis(a_vec)?, &theta_dual_basis(a_vec)?)
}

pub fn is_identity(m: &[Vec<MultiPoly>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && row.iter().enumerate().all(|(j, x)| {
                if i == j {
                    x.as_constant() == Some(BigInt::one())
                } else {
                    x.is_zero()
                }
            })
    })
}

/// Rank of a polynomial matrix at a seeded random point with distinct coordinates.
pub fn numeric_rank(m: &[Vec<MultiPoly>], nvars: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pt: Vec<BigRational> = Vec::new();
    while pt.len() < nvars {
        let x = BigRational::from_integer(BigInt::from(rng.gen_range(-1000i64..=1000)));
        if !pt.contains(&x) {
            pt.push(x);
        }
    }
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|p| p.specialize(&pt).expect("arity matches")).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &piv;
                for cc in c..cols {
                    let d = &f * &a[rank][cc];
                    a[r][cc] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn check_box(d: &YoungDiagram, a: usize, b: usize) -> Result<(), MoyError> {
    if d.fits(a, b) {
        Ok(())
    } else {
        Err(MoyError::OutOfBox(d.clone(), a, b))
    }
}

/// `c^λ_{αβ}` for every index `λ`, as evaluations of decorated generalized
/// theta foams.
pub fn structure_constants(
    a_vec: &[usize],
    alpha: &[YoungDiagram],
    beta: &[YoungDiagram],
) -> Result<BTreeMap<Vec<YoungDiagram>, MultiPoly>, MoyError> {
    check_sum(a_vec)?;
    let ps = partial_sums(a_vec);
    let k = a_vec.len();
    if alpha.len() + 1 != k || beta.len() + 1 != k {
        return Err(MoyError::Invalid(format!("expected {} diagrams per tuple", k - 1)));
    }
    for i in 1..k {
        check_box(&alpha[i - 1], a_vec[i], ps[i - 1])?;
        check_box(&beta[i - 1], a_vec[i], ps[i - 1])?;
    }
    let mut base = GenThetaDecorations::trivial(k);
    for i in 1..k {
        let c = Decoration::single(a_vec[i], alpha[i - 1].clone())
            .times(&Decoration::single(a_vec[i], beta[i - 1].clone()));
        base.strands[i] = c;
    }
    let mut out = BTreeMap::new();
    for dual in theta_dual_basis(a_vec)? {
        let f = build_gen_theta_closed(a_vec, &base.times(&dual.decorations))?;
        let v = eval(&f)?.scale(&BigInt::from(dual.sign));
        out.insert(dual.index, v);
    }
    Ok(out)
}

/// `c^λ_{αβ}` from one closed foam over `θ(a, b)`.
pub fn lr_via_foam(
    alpha: &YoungDiagram,
    beta: &YoungDiagram,
    lam: &YoungDiagram,
    a: usize,
    b: usize,
) -> Result<BigInt, MoyError> {
    for d in [alpha, beta, lam] {
        check_box(d, b, a)?;
    }
    if alpha.size() + beta.size() != lam.size() {
        return Err(MoyError::DegreeMismatch(alpha.size() + beta.size(), lam.size()));
    }
    let n = a + b;
    let hat = lam.dual_in(b, a)?;
    let mut d = GenThetaDecorations::trivial(2);
    d.strands[0] = Decoration::single(a, hat.clone());
    let prod = SchurCombo::single(b, alpha.clone());
    d.strands[1] = Decoration::from_combo(prod).times(&Decoration::single(b, beta.clone()));
    let f = build_gen_theta_closed(&[a, b], &d)?;
    let v = eval(&f)?;
    let c = v.as_constant().ok_or_else(|| MoyError::NotInteger(v.to_string()))?;
    let sign = (hat.size() + n * (n + 1) / 2) % 2;
    Ok(if sign == 0 { c } else { -c })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_numbers() {
        assert_eq!(qbinom(2, 1).to_string(), "q + q^-1");
        assert_eq!(qbinom(5, 0), LaurentPoly::one());
        assert!(qbinom(3, -1).is_zero());
        assert_eq!(qmultinomial(&[1, 1, 1]), qint(3).mul(&qint(2)));
        assert_eq!(qbinom(4, 2).at_one(), BigInt::from(6));
        assert!(qbinom(5, 2).is_palindromic());
    }

    #[test]
    fn coloring_counts() {
        assert_eq!(moy_coloring_count(&MoyGraph::circle(4, 2)).unwrap(), BigInt::from(6));
        assert_eq!(moy_coloring_count(&MoyGraph::theta(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(moy_coloring_count(&MoyGraph::theta(&[1, 1, 1])).unwrap(), BigInt::from(6));
        assert_eq!(moy_coloring_count(&MoyGraph::theta(&[1, 2, 1])).unwrap(), BigInt::from(12));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(theta_basis(&[1, 1]).unwrap().len(), 2);
        assert_eq!(theta_basis(&[3]).unwrap().len(), 1);
        assert_eq!(theta_basis(&[1, 1, 1]).unwrap().len(), 6);
    }
}
