//! Young diagrams, Schur polynomials (three independent evaluators), the
//! Littlewood–Richardson rule, alternants and Vandermonde-type products.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{MultiPoly, PolyError, RationalFn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("diagram {0} does not fit in T({1},{2})")]
    DiagramTooBig(YoungDiagram, usize, usize),
    #[error("diagram {0} is not admissible in {1} variables")]
    InadmissibleDiagram(YoungDiagram, usize),
    #[error("variable sets overlap")]
    Overlap,
    #[error("rows must be weakly decreasing and positive: {0}")]
    Malformed(String),
    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A partition stored row-wise (English convention), no zero rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = SchurError;
    fn try_from(v: Vec<u32>) -> Result<Self, SchurError> {
        YoungDiagram::new(v)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Vec<u32> {
        d.rows
    }
}

impl YoungDiagram {
    /// Trailing zeros are dropped; rows must be weakly decreasing.
    pub fn new(mut rows: Vec<u32>) -> Result<Self, SchurError> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(SchurError::Malformed(format!("{rows:?}")));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram::default()
    }

    /// Panicking constructor for literals.
    pub fn from_rows(rows: &[u32]) -> Self {
        Self::new(rows.to_vec()).expect("malformed diagram literal")
    }

    /// `rho(a, b)`: `b` rows of length `a`.
    pub fn rect(a: usize, b: usize) -> Self {
        if a == 0 {
            return Self::empty();
        }
        YoungDiagram { rows: vec![a as u32; b] }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// At most `a` columns and `b` rows.
    pub fn fits(&self, a: usize, b: usize) -> bool {
        self.num_cols() <= a && self.num_rows() <= b
    }

    pub fn contains(&self, o: &YoungDiagram) -> bool {
        o.num_rows() <= self.num_rows() && o.rows.iter().enumerate().all(|(i, &r)| r <= self.rows[i])
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let c = self.num_cols();
        let rows = (0..c).map(|j| self.rows.iter().filter(|&&r| r as usize > j).count() as u32).collect();
        YoungDiagram { rows }
    }

    /// Boxes of `rho(a, b)` not in `self`, rotated by 180 degrees.
    pub fn complement_in(&self, a: usize, b: usize) -> Result<YoungDiagram, SchurError> {
        if !self.fits(a, b) {
            return Err(SchurError::DiagramTooBig(self.clone(), a, b));
        }
        let rows = (0..b).rev().map(|i| a as u32 - self.row(i)).collect();
        YoungDiagram::new(rows)
    }

    /// The dual `(d^t)^c`; lands in `T(b, a)`.
    pub fn dual_in(&self, a: usize, b: usize) -> Result<YoungDiagram, SchurError> {
        Ok(self.complement_in(a, b)?.conjugate())
    }

    /// `top` stacked above `bottom`; `None` if the result is not a partition.
    pub fn stack(top: &YoungDiagram, bottom: &YoungDiagram) -> Option<YoungDiagram> {
        let mut rows = top.rows.clone();
        rows.extend_from_slice(&bottom.rows);
        YoungDiagram::new(rows).ok()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for YoungDiagram {
    type Err = SchurError;
    fn from_str(s: &str) -> Result<Self, SchurError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| SchurError::Malformed(t.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(YoungDiagram::empty());
        }
        let rows = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| SchurError::Malformed(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        YoungDiagram::new(rows)
    }
}

pub fn conjugate(d: &YoungDiagram) -> YoungDiagram {
    d.conjugate()
}

pub fn complement_in(d: &YoungDiagram, a: usize, b: usize) -> Result<YoungDiagram, SchurError> {
    d.complement_in(a, b)
}

pub fn dual_in(d: &YoungDiagram, a: usize, b: usize) -> Result<YoungDiagram, SchurError> {
    d.dual_in(a, b)
}

/// All of `T(a, b)` in a fixed order (by size, then lexicographic rows).
pub fn enumerate_box(a: usize, b: usize) -> Vec<YoungDiagram> {
    fn rec(a: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        out.push(YoungDiagram { rows: cur.clone() });
        if rows_left == 0 {
            return;
        }
        for v in 1..=a {
            cur.push(v);
            rec(v, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a as u32, b, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| x.size().cmp(&y.size()).then_with(|| x.rows.cmp(&y.rows)));
    out
}

/// All partitions of `n`.
pub fn partitions_of(n: usize) -> Vec<YoungDiagram> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if n == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        for v in (1..=n.min(max)).rev() {
            cur.push(v);
            rec(n - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// How a diagram indexes a polynomial on a facet of a given label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Convention {
    /// `pi_lambda` is the Schur polynomial of the conjugate partition, so a
    /// facet labeled `a` takes diagrams with at most `a` columns.
    #[default]
    Conjugate,
    /// Plain Schur polynomial; at most `a` rows.
    Direct,
}

impl Convention {
    pub fn adjust(self, d: &YoungDiagram) -> YoungDiagram {
        match self {
            Convention::Conjugate => d.conjugate(),
            Convention::Direct => d.clone(),
        }
    }
}

/// A sorted set of distinct 0-based variable indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct VarSet(Vec<usize>);

impl VarSet {
    pub fn new(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        VarSet(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        VarSet((0..64).filter(|k| mask >> k & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_disjoint(&self, o: &VarSet) -> bool {
        self.0.iter().all(|x| !o.0.contains(x))
    }

    pub fn union(&self, o: &VarSet) -> VarSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        VarSet::new(v)
    }
}

fn admissible(d: &YoungDiagram, n: usize) -> Result<(), SchurError> {
    if d.num_rows() > n {
        Err(SchurError::InadmissibleDiagram(d.clone(), n))
    } else {
        Ok(())
    }
}

/// Sum over permutations of `sign * prod_r entry(r, sigma(r))`, where
/// `entry` returns a polynomial. Small sizes only.
fn det_by_permutations(n: usize, entry: &dyn Fn(usize, usize) -> MultiPoly, nvars: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(nvars);
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(&mut perm, n, &mut |p| {
        let mut t = MultiPoly::one(nvars);
        for (r, &c) in p.iter().enumerate() {
            let e = entry(r, c);
            if e.is_zero() {
                return;
            }
            t = &t * &e;
        }
        if permutation_sign(p) < 0 {
            t = -t;
        }
        acc = &acc + &t;
    });
    acc
}

fn heap_permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k {
        heap_permutations(v, k - 1, f);
        let j = if k % 2 == 0 { i } else { 0 };
        v.swap(j, k - 1);
    }
}

pub(crate) fn permutation_sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Schur polynomial in local variables `X1..Xn` via the bialternant.
fn schur_local_bialternant(lam: &YoungDiagram, n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::one(0);
    }
    let exps: Vec<u16> = (0..n).map(|c| (lam.row(c) as usize + n - 1 - c) as u16).collect();
    let mut num = MultiPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(&mut perm, n, &mut |p| {
        let mut e = vec![0u16; n];
        for (r, &c) in p.iter().enumerate() {
            e[r] = exps[c];
        }
        let s = permutation_sign(p);
        num = &num + &MultiPoly::monomial(n, s, e);
    });
    for a in 0..n {
        for b in a + 1..n {
            num = num.exact_div_linear(a, b).expect("alternant is divisible by the Vandermonde");
        }
    }
    num
}

/// Schur polynomial in local variables via semistandard tableaux.
fn schur_local_ssyt(lam: &YoungDiagram, n: usize) -> MultiPoly {
    let shape: Vec<usize> = lam.rows().iter().map(|&r| r as usize).collect();
    let mut out = MultiPoly::zero(n);
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut tab: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        tab: &mut Vec<Vec<usize>>,
        n: usize,
        out: &mut MultiPoly,
    ) {
        if k == cells.len() {
            let mut e = vec![0u16; n];
            for row in tab.iter() {
                for &v in row {
                    e[v] += 1;
                }
            }
            *out = &*out + &MultiPoly::monomial(n, 1, e);
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { tab[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { tab[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            tab[r][c] = v;
            rec(k + 1, cells, tab, n, out);
        }
    }
    rec(0, &cells, &mut tab, n, &mut out);
    out
}

/// Complete homogeneous symmetric polynomial `h_k` in local variables.
fn complete_local(k: i64, n: usize) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero(n);
    }
    let mut out = MultiPoly::zero(n);
    fn rec(i: usize, left: u16, e: &mut Vec<u16>, out: &mut MultiPoly) {
        let n = e.len();
        if i + 1 == n {
            e[i] = left;
            *out = &*out + &MultiPoly::monomial(n, 1, e.clone());
            return;
        }
        for v in 0..=left {
            e[i] = v;
            rec(i + 1, left - v, e, out);
        }
        e[i] = 0;
    }
    if n == 0 {
        return if k == 0 { MultiPoly::one(0) } else { out };
    }
    rec(0, k as u16, &mut vec![0; n], &mut out);
    out
}

/// Schur polynomial in local variables via the Jacobi–Trudi determinant.
fn schur_local_jacobi_trudi(lam: &YoungDiagram, n: usize) -> MultiPoly {
    let l = lam.num_rows();
    if l == 0 {
        return MultiPoly::one(n);
    }
    det_by_permutations(
        l,
        &|i, j| complete_local(lam.row(i) as i64 - i as i64 + j as i64, n),
        n,
    )
}

/// Which algorithm computes a Schur polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurMethod {
    Bialternant,
    Tableaux,
    JacobiTrudi,
}

/// `pi_d` on `vars`, as a polynomial in `nvars` variables.
pub fn schur_with(
    method: SchurMethod,
    d: &YoungDiagram,
    vars: &VarSet,
    nvars: usize,
    conv: Convention,
) -> Result<MultiPoly, SchurError> {
    let lam = conv.adjust(d);
    let n = vars.len();
    admissible(&lam, n)?;
    let local = match method {
        SchurMethod::Bialternant => schur_local_bialternant(&lam, n),
        SchurMethod::Tableaux => schur_local_ssyt(&lam, n),
        SchurMethod::JacobiTrudi => schur_local_jacobi_trudi(&lam, n),
    };
    Ok(local.embed(nvars, vars.as_slice()))
}

pub fn schur_eval(d: &YoungDiagram, vars: &VarSet, nvars: usize, conv: Convention) -> Result<MultiPoly, SchurError> {
    schur_with(SchurMethod::Bialternant, d, vars, nvars, conv)
}

pub fn schur_eval_ssyt(
    d: &YoungDiagram,
    vars: &VarSet,
    nvars: usize,
    conv: Convention,
) -> Result<MultiPoly, SchurError> {
    schur_with(SchurMethod::Tableaux, d, vars, nvars, conv)
}

pub fn schur_eval_jacobi_trudi(
    d: &YoungDiagram,
    vars: &VarSet,
    nvars: usize,
    conv: Convention,
) -> Result<MultiPoly, SchurError> {
    schur_with(SchurMethod::JacobiTrudi, d, vars, nvars, conv)
}

/// Like [`schur_eval`] but returns zero instead of an error when the
/// diagram has too many rows for the arity.
pub fn schur_or_zero(d: &YoungDiagram, vars: &VarSet, nvars: usize, conv: Convention) -> MultiPoly {
    schur_eval(d, vars, nvars, conv).unwrap_or_else(|_| MultiPoly::zero(nvars))
}

/// Alternant `det(x_a^{lambda_j + |A| - j})` over the variables of `A`
/// in increasing order.
pub fn alternant(d: &YoungDiagram, a: &VarSet, nvars: usize, conv: Convention) -> Result<MultiPoly, SchurError> {
    let lam = conv.adjust(d);
    let n = a.len();
    admissible(&lam, n)?;
    let vars = a.as_slice();
    let exps: Vec<u16> = (0..n).map(|c| (lam.row(c) as usize + n - 1 - c) as u16).collect();
    let mut out = MultiPoly::zero(nvars);
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(&mut perm, n, &mut |p| {
        let mut e = vec![0u16; nvars];
        for (r, &c) in p.iter().enumerate() {
            e[vars[r]] = exps[c];
        }
        out = &out + &MultiPoly::monomial(nvars, permutation_sign(p), e);
    });
    Ok(out)
}

/// `prod_{a<b in list order} (x_a - x_b)`.
pub fn vandermonde(a: &VarSet, nvars: usize) -> MultiPoly {
    crate::polyring::vandermonde_of(nvars, a.as_slice())
}

/// `prod_{a in A, b in B} (x_a - x_b)`.
pub fn nabla(a: &VarSet, b: &VarSet, nvars: usize) -> Result<MultiPoly, SchurError> {
    if !a.is_disjoint(b) {
        return Err(SchurError::Overlap);
    }
    let mut p = MultiPoly::one(nvars);
    for &x in a.as_slice() {
        for &y in b.as_slice() {
            p = p.mul_linear(x, y);
        }
    }
    Ok(p)
}

/// `|A < B|`: pairs `(a, b)` with `a < b`.
pub fn inversions(a: &VarSet, b: &VarSet) -> Result<usize, SchurError> {
    if !a.is_disjoint(b) {
        return Err(SchurError::Overlap);
    }
    Ok(a.as_slice().iter().map(|x| b.as_slice().iter().filter(|&&y| *x < y).count()).sum())
}

/// Littlewood–Richardson coefficients `c^lambda_{a b}` for all `lambda`,
/// counted as LR skew tableaux of shape `lambda / a` and content `b`.
pub fn lr_coeffs(a: &YoungDiagram, b: &YoungDiagram) -> BTreeMap<YoungDiagram, u64> {
    let mut out = BTreeMap::new();
    let total = a.size() + b.size();
    let max_rows = a.num_rows() + b.num_rows();
    let max_cols = a.num_cols() + b.num_cols();
    for lam in partitions_of(total) {
        if lam.num_rows() > max_rows || lam.num_cols() > max_cols || !lam.contains(a) {
            continue;
        }
        let c = lr_count(&lam, a, b);
        if c > 0 {
            out.insert(lam, c);
        }
    }
    out
}

/// Number of LR tableaux of shape `lam / mu` with content `nu`.
pub fn lr_count(lam: &YoungDiagram, mu: &YoungDiagram, nu: &YoungDiagram) -> u64 {
    if !lam.contains(mu) || lam.size() != mu.size() + nu.size() {
        return 0;
    }
    // cells in reading order: rows top to bottom, each right to left
    let mut cells = Vec::new();
    for r in 0..lam.num_rows() {
        for c in (mu.row(r) as usize..lam.row(r) as usize).rev() {
            cells.push((r, c));
        }
    }
    let content: Vec<u32> = nu.rows().to_vec();
    let mut filled: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut counts = vec![0u32; content.len()];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        mu: &YoungDiagram,
        content: &[u32],
        counts: &mut Vec<u32>,
        filled: &mut BTreeMap<(usize, usize), usize>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for v in 0..content.len() {
            if counts[v] >= content[v] {
                continue;
            }
            // lattice word: after placing v, count(v) <= count(v-1)
            if v > 0 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            // weakly increasing along rows: right neighbour already placed
            if let Some(&right) = filled.get(&(r, c + 1)) {
                if v > right {
                    continue;
                }
            }
            // strictly increasing down columns
            if r > 0 && c >= mu.row(r - 1) as usize {
                if let Some(&up) = filled.get(&(r - 1, c)) {
                    if v <= up {
                        continue;
                    }
                }
            }
            counts[v] += 1;
            filled.insert((r, c), v);
            total += rec(k + 1, cells, mu, content, counts, filled);
            filled.remove(&(r, c));
            counts[v] -= 1;
        }
        total
    }
    rec(0, &cells, mu, &content, &mut counts, &mut filled)
}

/// Integer combination of Schur basis elements, evaluated on facets of
/// label `arity` under the facet convention.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SchurCombo {
    pub arity: usize,
    pub terms: BTreeMap<YoungDiagram, BigInt>,
}

impl SchurCombo {
    pub fn one(arity: usize) -> Self {
        Self::single(arity, YoungDiagram::empty())
    }

    pub fn single(arity: usize, d: YoungDiagram) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(d, BigInt::one());
        SchurCombo { arity, terms }
    }

    pub fn from_terms(arity: usize, it: impl IntoIterator<Item = (YoungDiagram, BigInt)>) -> Self {
        let mut terms: BTreeMap<YoungDiagram, BigInt> = BTreeMap::new();
        for (d, c) in it {
            *terms.entry(d).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        SchurCombo { arity, terms }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&YoungDiagram::empty()) == Some(&BigInt::one())
    }

    /// Check that every diagram can be evaluated on `arity` variables.
    pub fn validate(&self, conv: Convention) -> Result<(), SchurError> {
        for d in self.terms.keys() {
            admissible(&conv.adjust(d), self.arity)?;
        }
        Ok(())
    }

    /// Graded degree (2 per box) when homogeneous.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|d| 2 * d.size() as i64);
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn eval(&self, vars: &VarSet, nvars: usize, conv: Convention) -> Result<MultiPoly, SchurError> {
        let mut p = MultiPoly::zero(nvars);
        for (d, c) in &self.terms {
            p = &p + &schur_eval(d, vars, nvars, conv)?.scale(c);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Sums over splittings of a set of pigments. Both return exact polynomials;
// the interesting content is which instances collapse to a constant.

fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All `(S, rest)` with `S ⊆ set`, `|S| = k`, in a fixed order.
fn subsets_of_size(set: &VarSet, k: usize) -> Vec<(VarSet, VarSet)> {
    let v = set.as_slice();
    let n = v.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &x) in v.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.push(x);
            } else {
                b.push(x);
            }
        }
        out.push((VarSet(a), VarSet(b)));
    }
    out
}

fn intersect(a: &VarSet, b: &VarSet) -> VarSet {
    VarSet(a.0.iter().copied().filter(|x| b.0.contains(x)).collect())
}

fn all_disjoint(sets: &[&VarSet]) -> bool {
    sets.iter().enumerate().all(|(i, s)| sets[i + 1..].iter().all(|t| s.is_disjoint(t)))
}

fn nvars_of(sets: &[&VarSet]) -> usize {
    sets.iter().flat_map(|s| s.as_slice().iter()).map(|&x| x + 1).max().unwrap_or(0)
}

fn nabla_pairs(a: &VarSet, b: &VarSet) -> Vec<((usize, usize), i64)> {
    a.0.iter().flat_map(|&x| b.0.iter().map(move |&y| ((x, y), 1))).collect()
}

fn vandermonde_pairs(a: &VarSet) -> Vec<((usize, usize), i64)> {
    let v = a.as_slice();
    (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| ((v[i], v[j]), 1))).collect()
}

/// One instance of the orthogonality sum over `A₁ ⊔ A₂ = A` with `|A₁| = p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityInstance {
    pub a: VarSet,
    pub p: usize,
    pub b1: VarSet,
    pub b2: VarSet,
    pub c: VarSet,
    pub l: VarSet,
    pub r: VarSet,
    pub alpha_t: YoungDiagram,
    pub alpha_b: YoungDiagram,
}

impl OrthogonalityInstance {
    fn sets(&self) -> [&VarSet; 6] {
        [&self.a, &self.b1, &self.b2, &self.c, &self.l, &self.r]
    }

    pub fn nvars(&self) -> usize {
        nvars_of(&self.sets())
    }

    /// The box `T(p - |B₁|, |A| - p - |B₂|)` in which `α_b` lives.
    pub fn box_dims(&self) -> Option<(usize, usize)> {
        let cols = self.p.checked_sub(self.b1.len())?;
        let rows = self.a.len().checked_sub(self.p)?.checked_sub(self.b2.len())?;
        Some((cols, rows))
    }

    /// `α_t = α̂_b` with the hat taken in the box of `α_b`.
    pub fn is_delta(&self) -> bool {
        match self.box_dims() {
            Some((c, r)) => self.alpha_b.dual_in(c, r).map(|h| h == self.alpha_t).unwrap_or(false),
            None => false,
        }
    }

    /// Value of the sum when [`is_delta`](Self::is_delta) holds:
    /// `(-1)^{|C|(|A₂|-|B₂|) + |A₁||B₂| + |α_b|}`.
    pub fn delta_sign(&self) -> i64 {
        let (a1, a2) = (self.p as i64, (self.a.len() - self.p) as i64);
        let (b2, c) = (self.b2.len() as i64, self.c.len() as i64);
        parity_sign(c * (a2 - b2) + a1 * b2 + self.alpha_b.size() as i64)
    }

    /// The sign as printed next to the sum, which carries an extra
    /// `|A₁||A₂|` (plus terms that cancel mod 2) compared with
    /// [`delta_sign`](Self::delta_sign).
    pub fn printed_delta_sign(&self) -> i64 {
        let (a1, a2) = (self.p as i64, (self.a.len() - self.p) as i64);
        let (b1, b2, c) = (self.b1.len() as i64, self.b2.len() as i64, self.c.len() as i64);
        parity_sign(c * (a2 - b2) + a2 * a1 + b1 * b2 + b2 * (a1 - b1) + self.alpha_b.size() as i64)
    }
}

/// `Σ_{A₁⊔A₂=A, |A₁|=p} (-1)^{|C|(|A₂|-|B₂|) + |A₁<A₂| + |B₁||B₂|}
///   ∇(A₁,B₂) ∇(A₂,B₁) Δ(A₁) Δ(A₂) π_{α_b}(A₁B₂CLR) π_{α_t}(A₂B₁CLR) / (∇(B₁,B₂) Δ(A))`.
pub fn orthogonality_sum(inst: &OrthogonalityInstance) -> Result<MultiPoly, SchurError> {
    if !all_disjoint(&inst.sets()) {
        return Err(SchurError::Overlap);
    }
    let nv = inst.nvars();
    let z = inst.c.union(&inst.l).union(&inst.r);
    let conv = Convention::Conjugate;
    let (nb1, nb2, nc) = (inst.b1.len() as i64, inst.b2.len() as i64, inst.c.len() as i64);
    let mut num = MultiPoly::zero(nv);
    for (a1, a2) in subsets_of_size(&inst.a, inst.p) {
        let s = nc * (a2.len() as i64 - nb2) + inversions(&a1, &a2)? as i64 + nb1 * nb2;
        let pb = schur_eval(&inst.alpha_b, &a1.union(&inst.b2).union(&z), nv, conv)?;
        let pt = schur_eval(&inst.alpha_t, &a2.union(&inst.b1).union(&z), nv, conv)?;
        let mut t = &nabla(&a1, &inst.b2, nv)? * &nabla(&a2, &inst.b1, nv)?;
        t = &(&t * &vandermonde(&a1, nv)) * &vandermonde(&a2, nv);
        t = &(&t * &pb) * &pt;
        num = &num + &t.scale(&BigInt::from(parity_sign(s)));
    }
    let mut den = nabla_pairs(&inst.b1, &inst.b2);
    den.extend(vandermonde_pairs(&inst.a));
    Ok(RationalFn::from_signed(num, den).normalize()?)
}

/// Sign rule used inside [`square_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SquareSign {
    /// `(-1)^{|α̂| + |C|(|A₂ᵗ|-|A₂ᵗ∩A₂ᵇ|) + |B₁||A₂ᵗ|}`; the identity holds.
    #[default]
    Corrected,
    /// `(-1)^{|α| + |C|(|A₂ᵗ|-|A₂ᵗ∩A₂ᵇ|) + |B₁|(|A₂ᵗ|-|B₂|)}`, as printed.
    Printed,
}

/// Data of the square sum: the four labels `n, m, l, k` and a coloring
/// `(A₁ᵗ, A₂ᵗ, A₁ᵇ, A₂ᵇ, B, C, L, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareInstance {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub k: usize,
    pub a1t: VarSet,
    pub a2t: VarSet,
    pub a1b: VarSet,
    pub a2b: VarSet,
    pub b: VarSet,
    pub c: VarSet,
    pub left: VarSet,
    pub right: VarSet,
}

impl SquareInstance {
    /// Labels read off the set sizes: `k = |A₁|`, `l = |A| - |B|`,
    /// `m = n = |B| + |C|`. Fails when `|B| > |A|`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_sets(
        a1t: VarSet,
        a2t: VarSet,
        a1b: VarSet,
        a2b: VarSet,
        b: VarSet,
        c: VarSet,
        left: VarSet,
        right: VarSet,
    ) -> Result<Self, SchurError> {
        let total = a1t.len() + a2t.len();
        let l = total
            .checked_sub(b.len())
            .ok_or_else(|| SchurError::Inconsistent(format!("|B| = {} exceeds |A| = {}", b.len(), total)))?;
        let m = b.len() + c.len();
        let inst = SquareInstance { n: m, m, l, k: a1t.len(), a1t, a2t, a1b, a2b, b, c, left, right };
        inst.validate()?;
        Ok(inst)
    }

    pub fn nvars(&self) -> usize {
        nvars_of(&[&self.a1t, &self.a2t, &self.a1b, &self.a2b, &self.b, &self.c, &self.left, &self.right])
    }

    pub fn validate(&self) -> Result<(), SchurError> {
        let a = self.a1t.union(&self.a2t);
        if !all_disjoint(&[&self.a1t, &self.a2t]) || !all_disjoint(&[&self.a1b, &self.a2b]) {
            return Err(SchurError::Overlap);
        }
        if !all_disjoint(&[&a, &self.b, &self.c, &self.left, &self.right]) {
            return Err(SchurError::Overlap);
        }
        let bad = |m: String| Err(SchurError::Inconsistent(m));
        if a != self.a1b.union(&self.a2b) {
            return bad("top and bottom split different sets".into());
        }
        if self.a1t.len() != self.k || self.a1b.len() != self.k {
            return bad(format!("|A₁| must equal k = {}", self.k));
        }
        if a.len() != self.l + self.b.len() {
            return bad(format!("|A| = {} but l + |B| = {}", a.len(), self.l + self.b.len()));
        }
        if self.m != self.b.len() + self.c.len() {
            return bad(format!("m = {} but |B| + |C| = {}", self.m, self.b.len() + self.c.len()));
        }
        // the lower end of the j-range may only cut splittings with an empty box
        let first = self.k.saturating_sub(self.l);
        if self.m.saturating_sub(self.n) > first {
            return bad(format!("n = {} cuts off admissible splittings", self.n));
        }
        Ok(())
    }

    pub fn is_delta(&self) -> bool {
        self.a1t == self.a1b
    }
}

/// Both sides of the square identity: the left side is
/// `∇(A₁ᵗ∩A₂ᵇ, B) Σ_j Σ_{|B₁|=j} Σ_{α∈T(k-j, l-k+j)} ± ∇(A₁ᵗ∩A₁ᵇ, B₂) ∇(A₂ᵗ∩A₂ᵇ, B₁)
/// π_α(A₁ᵗB₂CLR) π_α̂(A₂ᵇB₁CLR) / (∇(A₁ᵗ∩A₁ᵇ, A₂ᵗ∩A₂ᵇ) ∇(B₁,B₂))`, the right
/// side `(-1)^{|C|(|A₂ᵗ|-|A₂ᵗ∩A₂ᵇ|)} ∇(A₁ᵗ,A₂ᵇ) / (∇(A₁ᵇ∩A₁ᵗ, A₂ᵇ∩A₂ᵗ) ∇(A₁ᵇ∩A₂ᵗ, A₂ᵇ∩A₁ᵗ))`.
pub fn square_sum_sides(inst: &SquareInstance, rule: SquareSign) -> Result<(MultiPoly, MultiPoly), SchurError> {
    inst.validate()?;
    let nv = inst.nvars();
    let conv = Convention::Conjugate;
    let z = inst.c.union(&inst.left).union(&inst.right);
    let i11 = intersect(&inst.a1t, &inst.a1b);
    let i22 = intersect(&inst.a2t, &inst.a2b);
    let i12 = intersect(&inst.a1t, &inst.a2b);
    let i21 = intersect(&inst.a2t, &inst.a1b);
    let c_term = inst.c.len() as i64 * (inst.a2t.len() as i64 - i22.len() as i64);
    let prefactor = nabla(&i12, &inst.b, nv)?;

    let (k, l) = (inst.k as i64, inst.l as i64);
    let mut lhs = RationalFn::poly(MultiPoly::zero(nv));
    for j in inst.m.saturating_sub(inst.n)..=inst.m {
        let (cols, rows) = (k - j as i64, l - k + j as i64);
        if cols < 0 || rows < 0 {
            continue;
        }
        let (cols, rows) = (cols as usize, rows as usize);
        for (b1, b2) in subsets_of_size(&inst.b, j) {
            let base = &(&prefactor * &nabla(&i11, &b2, nv)?) * &nabla(&i22, &b1, nv)?;
            let top = inst.a1t.union(&b2).union(&z);
            let bottom = inst.a2b.union(&b1).union(&z);
            let mut num = MultiPoly::zero(nv);
            for alpha in enumerate_box(cols, rows) {
                let hat = alpha.dual_in(cols, rows)?;
                let e = match rule {
                    SquareSign::Corrected => hat.size() as i64 + c_term + (b1.len() * inst.a2t.len()) as i64,
                    SquareSign::Printed => {
                        alpha.size() as i64 + c_term + b1.len() as i64 * (inst.a2t.len() as i64 - b2.len() as i64)
                    }
                };
                let t = &schur_eval(&alpha, &top, nv, conv)? * &schur_eval(&hat, &bottom, nv, conv)?;
                num = &num + &t.scale(&BigInt::from(parity_sign(e)));
            }
            let mut den = nabla_pairs(&i11, &i22);
            den.extend(nabla_pairs(&b1, &b2));
            lhs = lhs.try_add(&RationalFn::from_signed(&base * &num, den))?;
        }
    }
    let rhs = if i12.is_empty() {
        let mut den = nabla_pairs(&i11, &i22);
        den.extend(nabla_pairs(&i21, &i12));
        let num = nabla(&inst.a1t, &inst.a2b, nv)?.scale(&BigInt::from(parity_sign(c_term)));
        RationalFn::from_signed(num, den).normalize()?
    } else {
        // ∇(A₁ᵗ, A₂ᵇ) has a vanishing factor
        MultiPoly::zero(nv)
    };
    Ok((lhs.normalize()?, rhs))
}

/// Left side minus right side of the square identity; zero when it holds.
pub fn square_sum(inst: &SquareInstance, rule: SquareSign) -> Result<MultiPoly, SchurError> {
    let (l, r) = square_sum_sides(inst, rule)?;
    Ok(&l - &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(r: &[u32]) -> YoungDiagram {
        YoungDiagram::from_rows(r)
    }

    fn vs(v: &[usize]) -> VarSet {
        VarSet::new(v.to_vec())
    }

    #[test]
    fn diagram_operations() {
        assert_eq!(conjugate(&yd(&[])), yd(&[]));
        assert_eq!(conjugate(&yd(&[2, 1])), yd(&[2, 1]));
        assert_eq!(conjugate(&yd(&[3, 1])), yd(&[2, 1, 1]));
        assert_eq!(complement_in(&yd(&[]), 1, 1).unwrap(), yd(&[1]));
        assert_eq!(complement_in(&YoungDiagram::rect(3, 2), 3, 2).unwrap(), yd(&[]));
        assert_eq!(complement_in(&yd(&[1]), 2, 2).unwrap(), yd(&[2, 1]));
        assert_eq!(dual_in(&yd(&[1]), 1, 1).unwrap(), yd(&[]));
        assert_eq!(dual_in(&yd(&[]), 1, 1).unwrap(), yd(&[1]));
        assert!(matches!(complement_in(&yd(&[3]), 2, 2), Err(SchurError::DiagramTooBig(..))));
    }

    #[test]
    fn dual_of_hook_in_wide_box() {
        // (2,1) in T(3,2): complement is (2,1) rotated -> (2,1); transposed -> (2,1)
        assert_eq!(dual_in(&yd(&[2, 1]), 3, 2).unwrap(), yd(&[2, 1]));
        // (3) in T(3,2): complement (3) -> dual (1,1,1) in T(2,3)
        assert_eq!(dual_in(&yd(&[3]), 3, 2).unwrap(), yd(&[1, 1, 1]));
        // (1) in T(3,2): complement (3,2) -> dual (2,2,1)
        assert_eq!(dual_in(&yd(&[1]), 3, 2).unwrap(), yd(&[2, 2, 1]));
    }

    #[test]
    fn box_counts() {
        assert_eq!(enumerate_box(1, 1), vec![yd(&[]), yd(&[1])]);
        assert_eq!(enumerate_box(0, 5), vec![yd(&[])]);
        assert_eq!(enumerate_box(2, 2).len(), 6);
        assert_eq!(enumerate_box(3, 3).len(), 20);
    }

    #[test]
    fn schur_examples() {
        let x = |i| MultiPoly::var(2, i);
        assert_eq!(schur_eval(&yd(&[1]), &vs(&[0]), 1, Convention::Direct).unwrap(), MultiPoly::var(1, 0));
        assert_eq!(schur_eval(&yd(&[]), &vs(&[0, 1]), 2, Convention::Conjugate).unwrap(), MultiPoly::one(2));
        assert_eq!(schur_eval(&yd(&[1, 1]), &vs(&[0, 1]), 2, Convention::Direct).unwrap(), &x(0) * &x(1));
        let h2 = MultiPoly::parse(2, "+1 * X1^2 +1 * X1 X2 +1 * X2^2").unwrap();
        assert_eq!(schur_eval_ssyt(&yd(&[2]), &vs(&[0, 1]), 2, Convention::Direct).unwrap(), h2);
        let e1 = MultiPoly::parse(3, "+1 * X1 +1 * X2 +1 * X3").unwrap();
        assert_eq!(schur_eval_ssyt(&yd(&[1]), &vs(&[0, 1, 2]), 3, Convention::Direct).unwrap(), e1);
        // the facet convention makes pi_(1,1) = X^2 in one variable
        assert_eq!(
            schur_eval(&yd(&[1, 1]), &vs(&[2]), 3, Convention::Conjugate).unwrap(),
            MultiPoly::var(3, 2).pow(2)
        );
        assert!(matches!(
            schur_eval(&yd(&[2]), &vs(&[0]), 1, Convention::Conjugate),
            Err(SchurError::InadmissibleDiagram(..))
        ));
    }

    #[test]
    fn alternants() {
        assert_eq!(alternant(&yd(&[]), &vs(&[0, 1]), 2, Convention::Direct).unwrap(), MultiPoly::linear(2, 0, 1));
        assert_eq!(alternant(&yd(&[]), &vs(&[0]), 1, Convention::Direct).unwrap(), MultiPoly::one(1));
        assert_eq!(
            alternant(&yd(&[1]), &vs(&[0, 1]), 2, Convention::Direct).unwrap(),
            MultiPoly::parse(2, "+1 * X1^2 -1 * X2^2").unwrap()
        );
    }

    #[test]
    fn products_and_counts() {
        assert_eq!(vandermonde(&vs(&[1]), 3), MultiPoly::one(3));
        let n = nabla(&vs(&[0]), &vs(&[1, 2]), 3).unwrap();
        assert_eq!(n, MultiPoly::linear(3, 0, 1) * MultiPoly::linear(3, 0, 2));
        let a = vs(&[0, 3]);
        let b = vs(&[1, 2]);
        assert_eq!(inversions(&a, &b).unwrap(), 2);
        assert_eq!(inversions(&a, &b).unwrap() + inversions(&b, &a).unwrap(), 4);
        assert_eq!(nabla(&a, &a, 4), Err(SchurError::Overlap));
    }

    #[test]
    fn lr_examples() {
        let one = yd(&[1]);
        let m = lr_coeffs(&one, &one);
        assert_eq!(m.len(), 2);
        assert_eq!(m[&yd(&[2])], 1);
        assert_eq!(m[&yd(&[1, 1])], 1);
        let e = lr_coeffs(&yd(&[]), &yd(&[2, 1]));
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(yd(&[2, 1]), 1)]);
        let h = lr_coeffs(&yd(&[2, 1]), &yd(&[2, 1]));
        assert_eq!(h[&yd(&[3, 2, 1])], 2);
        assert_eq!(h.values().sum::<u64>(), 8);
    }

    #[test]
    fn diagram_text() {
        assert_eq!("[2,1]".parse::<YoungDiagram>().unwrap(), yd(&[2, 1]));
        assert_eq!("[]".parse::<YoungDiagram>().unwrap(), yd(&[]));
        assert!("[1,2]".parse::<YoungDiagram>().is_err());
        assert_eq!(yd(&[3, 1]).to_string(), "[3,1]");
    }

    fn orth(a: &[usize], p: usize, b1: &[usize], b2: &[usize], at: &[u32], ab: &[u32]) -> OrthogonalityInstance {
        OrthogonalityInstance {
            a: vs(a),
            p,
            b1: vs(b1),
            b2: vs(b2),
            c: vs(&[]),
            l: vs(&[]),
            r: vs(&[]),
            alpha_t: yd(at),
            alpha_b: yd(ab),
        }
    }

    #[test]
    fn orthogonality_small_cases() {
        // empty A: a single term with an empty box
        let i = orth(&[], 0, &[], &[], &[], &[]);
        assert!(i.is_delta());
        assert_eq!(orthogonality_sum(&i).unwrap(), MultiPoly::constant(0, i.delta_sign()));
        // |A| = 2, |B₁| = |B₂| = 1: the box of α_b is T(0, 0)
        let i = orth(&[0, 1], 1, &[2], &[3], &[], &[]);
        assert!(i.is_delta());
        assert_eq!(orthogonality_sum(&i).unwrap(), MultiPoly::constant(4, i.delta_sign()));
        // any other α_t lies outside the transposed box and the sum is not a polynomial
        let i = orth(&[0, 1], 1, &[2], &[3], &[1], &[]);
        assert!(matches!(orthogonality_sum(&i), Err(SchurError::Poly(_))));
        // |A| = 2, p = 1, no B: α_b ∈ T(1, 1)
        for (at, ab, want) in [(&[][..], &[1][..], true), (&[1][..], &[][..], true), (&[][..], &[][..], false)] {
            let i = orth(&[0, 1], 1, &[], &[], at, ab);
            assert_eq!(i.is_delta(), want);
            let expect = if want { i.delta_sign() } else { 0 };
            assert_eq!(orthogonality_sum(&i).unwrap(), MultiPoly::constant(2, expect));
        }
    }

    #[test]
    fn orthogonality_rejects_overlap() {
        let i = orth(&[0, 1], 1, &[1], &[], &[], &[]);
        assert_eq!(orthogonality_sum(&i), Err(SchurError::Overlap));
    }

    #[test]
    fn square_small_cases() {
        let e = || vs(&[]);
        let inst = SquareInstance::from_sets(e(), e(), e(), e(), e(), e(), e(), e()).unwrap();
        assert_eq!((inst.m, inst.l, inst.k), (0, 0, 0));
        assert!(square_sum(&inst, SquareSign::Corrected).unwrap().is_zero());

        // n = m = l = k = 1
        let inst =
            SquareInstance::from_sets(vs(&[0]), vs(&[2]), vs(&[2]), vs(&[0]), vs(&[1]), e(), e(), e()).unwrap();
        assert_eq!((inst.n, inst.m, inst.l, inst.k), (1, 1, 1, 1));
        assert!(square_sum(&inst, SquareSign::Corrected).unwrap().is_zero());

        // delta case: the right side is a unit over its denominator
        let inst =
            SquareInstance::from_sets(vs(&[0]), vs(&[2]), vs(&[0]), vs(&[2]), vs(&[1]), e(), e(), e()).unwrap();
        assert!(inst.is_delta());
        let (lhs, rhs) = square_sum_sides(&inst, SquareSign::Corrected).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!rhs.is_zero());
    }

    #[test]
    fn square_printed_sign_fails_somewhere() {
        let e = || vs(&[]);
        let inst = SquareInstance::from_sets(vs(&[2]), vs(&[0]), vs(&[2]), vs(&[0]), e(), vs(&[1]), e(), e()).unwrap();
        assert!(square_sum(&inst, SquareSign::Corrected).unwrap().is_zero());
        assert!(!square_sum(&inst, SquareSign::Printed).unwrap().is_zero());
    }

    #[test]
    fn square_rejects_inconsistent_sizes() {
        let e = || vs(&[]);
        assert!(matches!(
            SquareInstance::from_sets(vs(&[0]), e(), vs(&[0]), e(), vs(&[1, 2]), e(), e(), e()),
            Err(SchurError::Inconsistent(_))
        ));
        let mut inst = SquareInstance::from_sets(vs(&[0]), vs(&[1]), vs(&[1]), vs(&[0]), e(), e(), e(), e()).unwrap();
        inst.k = 0;
        assert!(inst.validate().is_err());
    }
}
