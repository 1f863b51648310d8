//! Sparse multivariate integer polynomials in `X1..XN`, and rational
//! functions whose denominators are products of linear factors `(Xi - Xj)`.
//!
//! Variable indices are 0-based in the API and 1-based in text form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1} variables")]
    Arity(usize, usize),
    #[error("not divisible by (X{} - X{})", .0 + 1, .1 + 1)]
    NotDivisible(usize, usize),
    #[error("not a polynomial: (X{} - X{}) does not divide the numerator", .0 + 1, .1 + 1)]
    NotPolynomial(usize, usize),
    #[error("bad variable pair ({0}, {1})")]
    BadPair(usize, usize),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector. Ordered graded reverse-lexicographically with X1 > ... > XN.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn times(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn bumped(&self, i: usize) -> Mono {
        let mut v = self.0.clone();
        v[i] += 1;
        Mono(v)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for k in (0..self.0.len()).rev() {
                if self.0[k] != o.0[k] {
                    // smaller power of the last differing variable wins
                    return o.0[k].cmp(&self.0[k]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(nvars), c);
        }
        MultiPoly { nvars, terms }
    }

    /// The variable `X{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, BigInt::one(), {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
    }

    /// `X{i+1} - X{j+1}`.
    pub fn linear(nvars: usize, i: usize, j: usize) -> Self {
        Self::var(nvars, i) - Self::var(nvars, j)
    }

    pub fn monomial(nvars: usize, c: impl Into<BigInt>, exps: Vec<u16>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(exps), c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u16>, BigInt)>>(nvars: usize, it: I) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending grevlex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u16]) -> BigInt {
        self.terms.get(&Mono(exps.to_vec())).cloned().unwrap_or_default()
    }

    /// The constant value, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, o: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != o.nvars {
            Err(PolyError::Arity(self.nvars, o.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(o)?;
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(m1.times(m2)).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { nvars: self.nvars, terms: acc })
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = MultiPoly::one(self.nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Multiply by `(Xi - Xj)`.
    pub fn mul_linear(&self, i: usize, j: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.bumped(i), c.clone());
            r.add_term(m.bumped(j), -c);
        }
        r
    }

    /// Multiply by `(Xi - Xj)^e`.
    pub fn mul_linear_pow(&self, i: usize, j: usize, e: u32) -> MultiPoly {
        let mut r = self.clone();
        for _ in 0..e {
            r = r.mul_linear(i, j);
        }
        r
    }

    /// The polynomial with `Xi` replaced by `Xj`.
    pub fn identify(&self, i: usize, j: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut v = m.0.clone();
            v[j] += v[i];
            v[i] = 0;
            r.add_term(Mono(v), c.clone());
        }
        r
    }

    /// Exact quotient by `(Xi - Xj)`. Fails when `p(Xi := Xj)` is nonzero.
    pub fn exact_div_linear(&self, i: usize, j: usize) -> Result<MultiPoly, PolyError> {
        if i == j || i >= self.nvars || j >= self.nvars {
            return Err(PolyError::BadPair(i, j));
        }
        if !self.identify(i, j).is_zero() {
            return Err(PolyError::NotDivisible(i, j));
        }
        // (Xi^d - Xj^d) / (Xi - Xj) = sum_t Xi^t Xj^(d-1-t)
        let mut q = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let d = m.0[i];
            for t in 0..d {
                let mut v = m.0.clone();
                v[i] = t;
                v[j] += d - 1 - t;
                q.add_term(Mono(v), c.clone());
            }
        }
        Ok(q)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// `Some(d)` when every term has exponent sum `d` (`None` for zero or mixed).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Mono::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Homogeneity with the convention that each variable has degree 2.
    pub fn is_homogeneous_of(&self, graded_degree: i64) -> bool {
        self.terms.keys().all(|m| 2 * m.degree() as i64 == graded_degree)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut v = m.0.clone();
            v.swap(i, j);
            r.terms.insert(Mono(v), c.clone());
        }
        r
    }

    /// Rename variables: `X{k}` becomes `X{map[k]}` in a ring of `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut r = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut v = vec![0u16; nvars];
            for (k, &e) in m.0.iter().enumerate() {
                v[map[k]] += e;
            }
            r.add_term(Mono(v), c.clone());
        }
        r
    }

    /// Invariance under every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        for k in 0..self.nvars.saturating_sub(1) {
            for (m, c) in &self.terms {
                if m.0[k] == m.0[k + 1] {
                    continue;
                }
                let mut v = m.0.clone();
                v.swap(k, k + 1);
                if self.terms.get(&Mono(v)) != Some(c) {
                    return false;
                }
            }
        }
        true
    }

    pub fn specialize_int(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { got: point.len(), expected: self.nvars });
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn specialize(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { got: point.len(), expected: self.nvars });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(o).expect("polynomial arity")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.try_sub(o).expect("polynomial arity")
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.try_mul(o).expect("polynomial arity")
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

/// Checked product, as a free function.
pub fn poly_mul(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
    p.try_mul(q)
}

pub fn exact_div_linear(p: &MultiPoly, i: usize, j: usize) -> Result<MultiPoly, PolyError> {
    p.exact_div_linear(i, j)
}

/// Canonical text: `+3 * X1^2 X3^1 -1 * X2^1`, or `0`. A constant term is
/// printed as a bare signed integer.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{}{}", sign, c.abs())?;
            if m.degree() > 0 {
                write!(f, " *")?;
                for (k, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        write!(f, " X{}^{}", k + 1, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Parse the canonical text form in a ring of `nvars` variables.
    /// Accepts terms in any order; `X3` without exponent means `X3^1`.
    pub fn parse(nvars: usize, s: &str) -> Result<MultiPoly, PolyError> {
        let s = s.trim();
        let mut p = MultiPoly::zero(nvars);
        if s == "0" {
            return Ok(p);
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        let mut k = 0;
        while k < toks.len() {
            let t = toks[k];
            if !(t.starts_with('+') || t.starts_with('-')) {
                return Err(PolyError::Parse(format!("expected signed coefficient, got `{t}`")));
            }
            let c = BigInt::from_str(t.trim_start_matches('+'))
                .map_err(|_| PolyError::Parse(format!("bad coefficient `{t}`")))?;
            k += 1;
            let mut e = vec![0u16; nvars];
            if k < toks.len() && toks[k] == "*" {
                k += 1;
                while k < toks.len() && toks[k].starts_with('X') {
                    let body = &toks[k][1..];
                    let (ix, ex) = match body.split_once('^') {
                        Some((a, b)) => (a, b),
                        None => (body, "1"),
                    };
                    let ix: usize =
                        ix.parse().map_err(|_| PolyError::Parse(format!("bad variable `{}`", toks[k])))?;
                    let ex: u16 =
                        ex.parse().map_err(|_| PolyError::Parse(format!("bad exponent `{}`", toks[k])))?;
                    if ix == 0 || ix > nvars {
                        return Err(PolyError::Parse(format!("variable X{ix} out of range")));
                    }
                    e[ix - 1] += ex;
                    k += 1;
                }
            }
            p.add_term(Mono(e), c);
        }
        Ok(p)
    }
}

/// `num / prod_{i<j} (Xi - Xj)^{den[(i,j)]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    pub num: MultiPoly,
    pub den: BTreeMap<(usize, usize), u32>,
}

impl RationalFn {
    pub fn poly(p: MultiPoly) -> Self {
        RationalFn { num: p, den: BTreeMap::new() }
    }

    /// Build from signed exponents on arbitrary ordered pairs. Pairs with
    /// `i > j` are flipped (with a sign), negative exponents are folded into
    /// the numerator.
    pub fn from_signed(num: MultiPoly, exps: impl IntoIterator<Item = ((usize, usize), i64)>) -> Self {
        let mut num = num;
        let mut den: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for ((i, j), e) in exps {
            assert_ne!(i, j, "degenerate factor");
            if e == 0 {
                continue;
            }
            let key = if i < j {
                (i, j)
            } else {
                if e.rem_euclid(2) == 1 {
                    num = -num;
                }
                (j, i)
            };
            *den.entry(key).or_insert(0) += e;
        }
        let mut out = BTreeMap::new();
        for ((i, j), e) in den {
            if e < 0 {
                num = num.mul_linear_pow(i, j, (-e) as u32);
            } else if e > 0 {
                out.insert((i, j), e as u32);
            }
        }
        RationalFn { num, den: out }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    /// Rewrite over a larger denominator.
    pub fn lift_to(&self, den: &BTreeMap<(usize, usize), u32>) -> MultiPoly {
        let mut num = self.num.clone();
        for (&(i, j), &e) in den {
            let have = self.den.get(&(i, j)).copied().unwrap_or(0);
            assert!(have <= e, "target denominator too small");
            num = num.mul_linear_pow(i, j, e - have);
        }
        num
    }

    pub fn try_add(&self, o: &RationalFn) -> Result<RationalFn, PolyError> {
        if self.nvars() != o.nvars() {
            return Err(PolyError::Arity(self.nvars(), o.nvars()));
        }
        let mut den = self.den.clone();
        for (&k, &e) in &o.den {
            let slot = den.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let num = &self.lift_to(&den) + &o.lift_to(&den);
        Ok(RationalFn { num, den })
    }

    /// Divide out every denominator factor; fails if the result is not a polynomial.
    pub fn normalize(&self) -> Result<MultiPoly, PolyError> {
        let mut p = self.num.clone();
        for (&(i, j), &e) in &self.den {
            for _ in 0..e {
                if p.is_zero() {
                    return Ok(p);
                }
                p = p.exact_div_linear(i, j).map_err(|_| PolyError::NotPolynomial(i, j))?;
            }
        }
        Ok(p)
    }

    /// Exact value at a point with pairwise distinct coordinates on every
    /// denominator pair. Returns `None` when a denominator vanishes.
    pub fn specialize(&self, point: &[BigRational]) -> Result<Option<BigRational>, PolyError> {
        let n = self.num.specialize(point)?;
        let mut d = BigRational::one();
        for (&(i, j), &e) in &self.den {
            let f = &point[i] - &point[j];
            if f.is_zero() {
                return Ok(None);
            }
            d *= num_traits::pow(f, e as usize);
        }
        Ok(Some(n / d))
    }

    /// Graded degree (variables of degree 2), if the numerator is homogeneous.
    pub fn graded_degree(&self) -> Option<i64> {
        let d = self.num.homogeneous_degree()? as i64;
        let den: i64 = self.den.values().map(|&e| e as i64).sum();
        Some(2 * (d - den))
    }
}

pub fn rf_add(a: &RationalFn, b: &RationalFn) -> Result<RationalFn, PolyError> {
    a.try_add(b)
}

pub fn rf_normalize(a: &RationalFn) -> Result<MultiPoly, PolyError> {
    a.normalize()
}

pub fn specialize(p: &MultiPoly, point: &[BigRational]) -> Result<BigRational, PolyError> {
    p.specialize(point)
}

pub fn is_symmetric(p: &MultiPoly) -> bool {
    p.is_symmetric()
}

/// `prod_{i<j} (Xi - Xj)` over the listed variables, in list order.
pub fn vandermonde_of(nvars: usize, vars: &[usize]) -> MultiPoly {
    let mut p = MultiPoly::one(nvars);
    for a in 0..vars.len() {
        for b in a + 1..vars.len() {
            p = p.mul_linear(vars[a], vars[b]);
        }
    }
    p
}

/// Elementary symmetric polynomial `e_k` in the listed variables.
pub fn elementary(nvars: usize, vars: &[usize], k: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for_each_subset(vars, k, &mut |s| {
        let mut e = vec![0u16; nvars];
        for &v in s {
            e[v] += 1;
        }
        p.add_term(Mono(e), BigInt::one());
    });
    p
}

fn for_each_subset(vars: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(vars: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for s in start..vars.len() {
            if vars.len() - s < k - cur.len() {
                break;
            }
            cur.push(vars[s]);
            rec(vars, k, s + 1, cur, f);
            cur.pop();
        }
    }
    rec(vars, k, 0, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &x(2, 0) + &x(2, 1);
        let q = &x(2, 0) - &x(2, 1);
        let r = poly_mul(&p, &q).unwrap();
        assert_eq!(r.to_string(), "+1 * X1^2 -1 * X2^2");
        assert_eq!(poly_mul(&p, &MultiPoly::one(2)).unwrap(), p);
    }

    #[test]
    fn vandermonde_three() {
        let v = vandermonde_of(3, &[0, 1, 2]);
        let expect = MultiPoly::parse(3, "+1 * X1^2 X2^1 -1 * X1^2 X3^1 -1 * X1^1 X2^2 +1 * X1^1 X3^2 +1 * X2^2 X3^1 -1 * X2^1 X3^2").unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn linear_division() {
        let p = MultiPoly::parse(2, "+1 * X1^2 -1 * X2^2").unwrap();
        assert_eq!(p.exact_div_linear(0, 1).unwrap(), &x(2, 0) + &x(2, 1));
        let s = &x(2, 0) + &x(2, 1);
        assert_eq!(s.exact_div_linear(0, 1), Err(PolyError::NotDivisible(0, 1)));
        let v = vandermonde_of(3, &[0, 1, 2]);
        let q = v.exact_div_linear(1, 2).unwrap();
        assert_eq!(q, MultiPoly::parse(3, "+1 * X1^2 -1 * X1 X2 -1 * X1 X3 +1 * X2 X3").unwrap());
        assert_eq!(q.mul_linear(1, 2), v);
    }

    #[test]
    fn rational_sums() {
        let d = |p: MultiPoly| RationalFn::from_signed(p, [((0, 1), 1)]);
        let a = d(MultiPoly::one(2));
        let b = d(-MultiPoly::one(2));
        assert!(rf_add(&a, &b).unwrap().normalize().unwrap().is_zero());
        let t = rf_add(&d(x(2, 1)), &d(-x(2, 0))).unwrap();
        assert_eq!(t.normalize().unwrap(), MultiPoly::constant(2, -1));
        let flip = RationalFn::from_signed(&x(2, 1) - &x(2, 0), [((0, 1), 1)]);
        assert_eq!(flip.normalize().unwrap().to_string(), "-1");
        let z = RationalFn::from_signed(MultiPoly::zero(2), [((0, 1), 3)]);
        assert!(z.normalize().unwrap().is_zero());
    }

    #[test]
    fn sphere_quotient() {
        // -X1^2 (X2 - X3) + X2^2 (X1 - X3) - X3^2 (X1 - X2) over the Vandermonde
        let n = 3;
        let sq = |i| x(n, i).pow(2);
        let num = -(sq(0).mul_linear(1, 2)) + sq(1).mul_linear(0, 2) - sq(2).mul_linear(0, 1);
        let r = RationalFn::from_signed(num, [((0, 1), 1), ((0, 2), 1), ((1, 2), 1)]);
        assert_eq!(r.normalize().unwrap(), MultiPoly::constant(3, -1));
    }

    #[test]
    fn specialization_and_symmetry() {
        let p = &x(2, 0) - &x(2, 1);
        let pt = |v: &[i64]| v.iter().map(|&a| BigRational::from_integer(a.into())).collect::<Vec<_>>();
        assert_eq!(p.specialize(&pt(&[3, 1])).unwrap(), BigRational::from_integer(2.into()));
        let e2 = elementary(3, &[0, 1, 2], 2);
        assert_eq!(e2.specialize(&pt(&[1, 2, 3])).unwrap(), BigRational::from_integer(11.into()));
        assert!(e2.is_symmetric());
        assert!(!p.is_symmetric());
        assert!((&x(2, 0) + &x(2, 1)).is_symmetric());
    }

    #[test]
    fn arity_is_checked() {
        assert_eq!(x(2, 0).try_mul(&x(3, 0)), Err(PolyError::Arity(2, 3)));
    }

    #[test]
    fn text_round_trip() {
        let v = vandermonde_of(4, &[0, 1, 2, 3]);
        let s = v.to_string();
        assert_eq!(MultiPoly::parse(4, &s).unwrap(), v);
    }
}
