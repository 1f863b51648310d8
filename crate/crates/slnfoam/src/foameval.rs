//! The state sum: the value of a coloring and the evaluation of a closed foam.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::foamcore::{
    bichrome_euler, check_coloring, enumerate_colorings, foam_degree, monochrome_euler, theta_counts, validate_foam,
    Coloring, Foam, FoamError,
};
use crate::polyring::{MultiPoly, PolyError, RationalFn};
use crate::schur::{Convention, SchurError, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Foam(#[from] FoamError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error("invalid foam: {0}")]
    Invalid(String),
    #[error("evaluation is not a polynomial: {0}")]
    NotPolynomial(PolyError),
    #[error("evaluation is not symmetric")]
    NotSymmetric,
    #[error("evaluation has degree {got:?}, expected {expected}")]
    DegreeMismatch { expected: i64, got: Option<i64> },
    #[error("specialization point has repeated coordinates")]
    RepeatedPoint,
    #[error("linear combination mixes N = {0} and N = {1}")]
    MixedN(usize, usize),
}

/// `(-1)^s * p / prod_{i<j} (Xi - Xj)^{q[(i,j)]}` with possibly negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredValue {
    pub s: i64,
    pub p: MultiPoly,
    pub q: BTreeMap<(usize, usize), i64>,
}

impl ColoredValue {
    pub fn to_rational(&self) -> RationalFn {
        let num = if self.s.rem_euclid(2) == 1 { -&self.p } else { self.p.clone() };
        RationalFn::from_signed(num, self.q.iter().map(|(&k, &e)| (k, e)))
    }
}

#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub convention: Convention,
    /// Assert that the result is symmetric.
    pub check_symmetry: bool,
    /// Assert homogeneity of degree `foam_degree` when decorations are homogeneous.
    pub check_degree: bool,
    /// Validate the foam before evaluating.
    pub validate: bool,
    /// Worker threads; 0 or 1 evaluates sequentially.
    pub jobs: usize,
    /// Sum colorings in groups keyed by the pigment set of this facet.
    pub group_by_facet: Option<usize>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            convention: Convention::Conjugate,
            check_symmetry: true,
            check_degree: true,
            validate: true,
            jobs: 1,
            group_by_facet: None,
        }
    }
}

/// `s(F,c) = Σ_i i·χ(F_i)/2 + Σ_{i<j} θ⁺_ij`, pigments 1-based.
pub fn s_invariant(f: &Foam, c: &Coloring) -> Result<i64, FoamError> {
    let mut s = 0;
    for i in 1..=f.n {
        s += i as i64 * monochrome_euler(f, c, i)? / 2;
    }
    for i in 1..=f.n {
        for j in i + 1..=f.n {
            s += theta_counts(f, c, i, j)?.0 as i64;
        }
    }
    Ok(s)
}

/// Product of all facet decorations evaluated on the colors.
pub fn decoration_product(f: &Foam, c: &Coloring, conv: Convention) -> Result<MultiPoly, SchurError> {
    let mut p = MultiPoly::one(f.n);
    for (k, fc) in f.facets.iter().enumerate() {
        let vars = VarSet::from_mask(c.get(k) as u64);
        for fac in &fc.decoration.factors {
            if fac.is_one() {
                continue;
            }
            p = &p * &fac.eval(&vars, f.n, conv)?;
            if p.is_zero() {
                return Ok(p);
            }
        }
    }
    Ok(p)
}

pub fn colored_value(f: &Foam, c: &Coloring, conv: Convention) -> Result<ColoredValue, EvalError> {
    let s = s_invariant(f, c)?;
    let p = decoration_product(f, c, conv)?;
    let mut q = BTreeMap::new();
    for i in 1..=f.n {
        for j in i + 1..=f.n {
            let chi = bichrome_euler(f, c, i, j)?;
            if chi != 0 {
                q.insert((i - 1, j - 1), chi / 2);
            }
        }
    }
    Ok(ColoredValue { s, p, q })
}

/// `⟨F, c⟩` as a rational function.
pub fn eval_colored(f: &Foam, c: &Coloring) -> Result<RationalFn, EvalError> {
    check_coloring(f, c)?;
    Ok(colored_value(f, c, Convention::Conjugate)?.to_rational())
}

fn run_parallel<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return work();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn values(f: &Foam, colorings: &[Coloring], opts: &EvalOptions) -> Result<Vec<RationalFn>, EvalError> {
    let conv = opts.convention;
    let one = |c: &Coloring| colored_value(f, c, conv).map(|v| v.to_rational());
    if opts.jobs > 1 {
        run_parallel(opts.jobs, || colorings.par_iter().map(one).collect())
    } else {
        colorings.iter().map(one).collect()
    }
}

/// Sums rational functions over one common denominator.
fn sum_common(nvars: usize, vals: &[RationalFn]) -> RationalFn {
    let mut den: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for v in vals {
        for (&k, &e) in &v.den {
            let slot = den.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let mut num = MultiPoly::zero(nvars);
    for v in vals {
        if !v.num.is_zero() {
            num = &num + &v.lift_to(&den);
        }
    }
    RationalFn { num, den }
}

/// `⟨F⟩` with explicit options.
pub fn eval_with(f: &Foam, opts: &EvalOptions) -> Result<MultiPoly, EvalError> {
    if opts.validate {
        let rep = validate_foam(f);
        if !rep.is_ok() {
            return Err(EvalError::Invalid(rep.to_string()));
        }
    }
    let colorings = enumerate_colorings(f);
    let vals = values(f, &colorings, opts)?;
    let result = match opts.group_by_facet {
        Some(g) if g < f.facets.len() => {
            let mut groups: BTreeMap<u32, Vec<RationalFn>> = BTreeMap::new();
            for (c, v) in colorings.iter().zip(vals) {
                groups.entry(c.get(g)).or_default().push(v);
            }
            let partial: Vec<RationalFn> = groups.values().map(|vs| sum_common(f.n, vs)).collect();
            sum_common(f.n, &partial).normalize()
        }
        _ => sum_common(f.n, &vals).normalize(),
    }
    .map_err(EvalError::NotPolynomial)?;
    if opts.check_symmetry && !result.is_symmetric() {
        return Err(EvalError::NotSymmetric);
    }
    if opts.check_degree && !result.is_zero() {
        if let Some(d) = foam_degree(f) {
            if !result.is_homogeneous_of(d) {
                let got = result.homogeneous_degree().map(|x| 2 * x as i64);
                return Err(EvalError::DegreeMismatch { expected: d, got });
            }
        }
    }
    Ok(result)
}

/// `⟨F⟩ = Σ_c ⟨F, c⟩`, a symmetric polynomial.
pub fn eval(f: &Foam) -> Result<MultiPoly, EvalError> {
    eval_with(f, &EvalOptions::default())
}

/// A formal combination `Σ coeff · foam`.
#[derive(Debug, Clone, Default)]
pub struct FoamLinComb {
    pub terms: Vec<(MultiPoly, Foam)>,
}

impl FoamLinComb {
    pub fn new() -> Self {
        FoamLinComb { terms: Vec::new() }
    }

    pub fn single(f: Foam) -> Self {
        let n = f.n;
        FoamLinComb { terms: vec![(MultiPoly::one(n), f)] }
    }

    pub fn push(&mut self, coeff: MultiPoly, f: Foam) {
        self.terms.push((coeff, f));
    }

    pub fn push_int(&mut self, coeff: i64, f: Foam) {
        let n = f.n;
        self.terms.push((MultiPoly::constant(n, coeff), f));
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn eval_lincomb(l: &FoamLinComb) -> Result<MultiPoly, EvalError> {
    eval_lincomb_with(l, &EvalOptions::default())
}

pub fn eval_lincomb_with(l: &FoamLinComb, opts: &EvalOptions) -> Result<MultiPoly, EvalError> {
    let Some((_, first)) = l.terms.first() else {
        return Ok(MultiPoly::zero(0));
    };
    let n = first.n;
    let mut acc = MultiPoly::zero(n);
    for (c, f) in &l.terms {
        if f.n != n {
            return Err(EvalError::MixedN(n, f.n));
        }
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(c * &eval_with(f, opts)?);
    }
    Ok(acc)
}

/// Sum of the colored values at a point with pairwise distinct coordinates.
pub fn eval_numeric(f: &Foam, point: &[BigRational]) -> Result<BigRational, EvalError> {
    for i in 0..point.len() {
        for j in i + 1..point.len() {
            if point[i] == point[j] {
                return Err(EvalError::RepeatedPoint);
            }
        }
    }
    if point.len() != f.n {
        return Err(EvalError::Poly(PolyError::PointLength { got: point.len(), expected: f.n }));
    }
    let mut total = BigRational::zero();
    for c in enumerate_colorings(f) {
        let v = colored_value(f, &c, Convention::Conjugate)?.to_rational();
        total += v.specialize(point)?.ok_or(EvalError::RepeatedPoint)?;
    }
    Ok(total)
}

/// Integer point helper for [`eval_numeric`].
pub fn int_point(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Value of a constant evaluation, if it is one.
pub fn constant_value(p: &MultiPoly) -> Option<BigInt> {
    if p.is_zero() {
        return Some(BigInt::zero());
    }
    p.as_constant()
}
