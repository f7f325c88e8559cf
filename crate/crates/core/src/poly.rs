//! Polynomials on C^6 in the antisymmetric coordinates `z^{ab}`, `a < b`.
//!
//! Index values are 0-based throughout the library (0..4); the six
//! coordinates are ordered (01, 02, 03, 12, 13, 23), i.e. z^{12}, z^{13},
//! z^{14}, z^{23}, z^{24}, z^{34} in 1-based notation.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{int, Coeff, Rational};

pub const NVARS: usize = 6;

/// The six coordinate pairs `(a, b)`, `a < b`, in canonical order.
pub const COORDS: [(usize, usize); NVARS] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Position of `z^{ab}` among the stored coordinates together with the sign
/// relating it to the stored one (`z^{ba} = -z^{ab}`). `None` when `a == b`.
pub fn coord_index(a: usize, b: usize) -> Option<(i8, usize)> {
    if a == b {
        return None;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let k = COORDS.iter().position(|&p| p == (lo, hi))?;
    Some((sign, k))
}

/// Sign of the permutation `abcd` of (0,1,2,3), zero on repeated indices.
pub fn epsilon(a: usize, b: usize, c: usize, d: usize) -> i8 {
    let p = [a, b, c, d];
    for i in 0..4 {
        if p[i] > 3 || p[i + 1..].contains(&p[i]) {
            return 0;
        }
    }
    let inversions = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The complementary pair `(c, d)`, `c < d`, of `{a, b}` and the sign
/// `epsilon(a, b, c, d)`; expresses `z_{ab} = eps * z^{cd}` and
/// `nabla^{ab} = eps * nabla_{cd}`.
pub fn dual_coord(a: usize, b: usize) -> Option<(i8, usize)> {
    if a == b || a > 3 || b > 3 {
        return None;
    }
    let rest: Vec<usize> = (0..4).filter(|&i| i != a && i != b).collect();
    let (c, d) = (rest[0], rest[1]);
    let (_, k) = coord_index(c, d)?;
    Some((epsilon(a, b, c, d), k))
}

pub type Monomial = [u8; NVARS];

pub fn degree_of(m: &Monomial) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// All exponent vectors of total degree `d`, in increasing lexicographic order.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if pos == NVARS - 1 {
            cur[pos] = left as u8;
            out.push(*cur);
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u8;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut [0; NVARS], &mut out);
    out.sort();
    out
}

/// gl(4) weight of a monomial: each `z^{ab}` adds one to slots `a` and `b`.
pub fn monomial_weight(m: &Monomial) -> [i64; 4] {
    let mut w = [0i64; 4];
    for (k, &(a, b)) in COORDS.iter().enumerate() {
        w[a] += m[k] as i64;
        w[b] += m[k] as i64;
    }
    w
}

/// Sparse polynomial with exact coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C: Coeff = Rational> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term([0; NVARS], c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// The stored coordinate with index `k`.
    pub fn var(k: usize) -> Self {
        let mut m = [0; NVARS];
        m[k] = 1;
        Self::term(m, C::one())
    }

    /// `z^{ab}`, with `z^{ba} = -z^{ab}` and `z^{aa} = 0`.
    pub fn z_upper(a: usize, b: usize) -> Self {
        match coord_index(a, b) {
            Some((s, k)) => Self::var(k).scale_i(s as i64),
            None => Self::zero(),
        }
    }

    /// `z_{ab} = 1/2 eps_{abcd} z^{cd}`.
    pub fn z_lower(a: usize, b: usize) -> Self {
        match dual_coord(a, b) {
            Some((s, k)) => Self::var(k).scale_i(s as i64),
            None => Self::zero(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(*m, v.clone() * c.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect(),
        }
    }

    pub fn scale_i(&self, n: i64) -> Self {
        self.scale(&C::from_rational(int(n)))
    }

    /// Sorted set of total degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(degree_of).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        match self.degrees().as_slice() {
            [] => Ok(None),
            [d] => Ok(Some(*d)),
            ds => Err(Error::NotHomogeneous(ds.to_vec())),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree_of(m) == d)
                .map(|(m, v)| (*m, v.clone()))
                .collect(),
        }
    }

    /// Partial derivative in the stored coordinate `k`.
    pub fn derivative(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m[k] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[k] -= 1;
            out.add_term(m2, v.clone() * C::from_rational(int(m[k] as i64)));
        }
        out
    }

    /// Multiplication by the stored coordinate `k`.
    pub fn mul_var(&self, k: usize) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut m2 = *m;
                    m2[k] += 1;
                    (m2, v.clone())
                })
                .collect(),
        }
    }

    /// `nabla_{ab} P`, the derivative in `z^{ab}` with `nabla_{ba} = -nabla_{ab}`.
    pub fn nabla_lower(&self, a: usize, b: usize) -> Result<Self> {
        let (s, k) = coord_index(a, b).ok_or(Error::InvalidIndexPair(a, b))?;
        Ok(self.derivative(k).scale_i(s as i64))
    }

    /// `nabla^{ab} P = 1/2 eps^{abcd} nabla_{cd} P`.
    pub fn nabla_upper(&self, a: usize, b: usize) -> Result<Self> {
        let (s, k) = dual_coord(a, b).ok_or(Error::InvalidIndexPair(a, b))?;
        Ok(self.derivative(k).scale_i(s as i64))
    }

    /// `Delta = 1/2 nabla_{ab} nabla^{ab}`, which expands to
    /// `2 (d12 d34 - d13 d24 + d14 d23)`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, s) in HYPERBOLIC_PAIRS {
            out.add_scaled(&self.derivative(i).derivative(j), &C::from_rational(int(2 * s)));
        }
        out
    }

    /// `r^2 = 1/2 z_{ab} z^{ab} = 2 (z12 z34 - z13 z24 + z14 z23)`.
    pub fn r2() -> Self {
        let mut out = Self::zero();
        for (i, j, s) in HYPERBOLIC_PAIRS {
            let mut m = [0; NVARS];
            m[i] += 1;
            m[j] += 1;
            out.add_term(m, C::from_rational(int(2 * s)));
        }
        out
    }

    pub fn mul_r2(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, s) in HYPERBOLIC_PAIRS {
            out.add_scaled(&self.mul_var(i).mul_var(j), &C::from_rational(int(2 * s)));
        }
        out
    }

    /// Euler operator `E = 1/2 z_{ab} nabla^{ab}`; scales each degree-m part by m.
    pub fn euler(&self) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v.clone() * C::from_rational(int(degree_of(m) as i64)));
        }
        out
    }

    /// Fischer product `(P, Q)_0 = conj(Q)(d) P` evaluated at the origin.
    pub fn fischer_inner(&self, other: &Self) -> C {
        let mut acc = C::zero();
        for (m, v) in &self.terms {
            if let Some(w) = other.terms.get(m) {
                acc = acc + v.clone() * w.conj() * C::from_rational(multi_factorial(m));
            }
        }
        acc
    }

    /// Evaluate after substituting each coordinate by a polynomial.
    pub fn substitute<D: Coeff + From<C>>(&self, images: &[Polynomial<D>; NVARS]) -> Polynomial<D> {
        let mut out = Polynomial::<D>::zero();
        for (m, v) in &self.terms {
            let mut t = Polynomial::<D>::constant(D::from(v.clone()));
            for k in 0..NVARS {
                for _ in 0..m[k] {
                    t = &t * &images[k];
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({ "exponents": m.to_vec(), "coeff": c.to_json() }))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("polynomial must be a list".into()))?;
        let mut p = Self::zero();
        for t in arr {
            let ex = t
                .get("exponents")
                .and_then(Value::as_array)
                .filter(|e| e.len() == NVARS)
                .ok_or_else(|| Error::Parse("term needs six exponents".into()))?;
            let mut m = [0u8; NVARS];
            for (k, e) in ex.iter().enumerate() {
                m[k] = e
                    .as_u64()
                    .and_then(|e| u8::try_from(e).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent {e}")))?;
            }
            let c = t.get("coeff").ok_or_else(|| Error::Parse("term needs coeff".into()))?;
            p.add_term(m, C::from_json(c)?);
        }
        Ok(p)
    }
}

impl Polynomial<Rational> {
    /// `P = sum_j r^{2j} h_j` with each `h_j` harmonic of degree `m - 2j`.
    ///
    /// Uses `Delta^k (r^{2j} h) = C(j,k) r^{2(j-k)} h` for harmonic `h`, with
    /// `Delta (r^{2j} h) = 4 j (deg h + j + 2) r^{2j-2} h`, peeling the
    /// components from the top.
    pub fn harmonic_decompose(&self) -> Result<Vec<(u32, Self)>> {
        let m = match self.homogeneous_degree()? {
            None => return Ok(Vec::new()),
            Some(m) => m,
        };
        let top = m / 2;
        let mut powers = vec![self.clone()];
        for _ in 0..top {
            let next = powers.last().unwrap().laplacian();
            powers.push(next);
        }
        // c(j,k): factor with Delta^k r^{2j} h_j = c(j,k) r^{2(j-k)} h_j.
        let c = |j: u32, k: u32| -> Rational {
            let d = (m - 2 * j) as i64;
            (0..k).fold(Rational::one(), |acc, i| {
                let jj = (j - i) as i64;
                acc * int(4 * jj * (d + jj + 2))
            })
        };
        let mut comps: BTreeMap<u32, Self> = BTreeMap::new();
        for k in (0..=top).rev() {
            let mut rest = powers[k as usize].clone();
            for (&j, h) in &comps {
                let mut t = h.clone();
                for _ in 0..(j - k) {
                    t = t.mul_r2();
                }
                rest.add_scaled(&t, &-c(j, k));
            }
            let hk = rest.scale(&(Rational::one() / c(k, k)));
            comps.insert(k, hk);
        }
        Ok(comps.into_iter().filter(|(_, h)| !h.is_zero()).collect())
    }
}

/// `(i, j, sign)` with `r^2 = 2 sum sign z_i z_j`.
const HYPERBOLIC_PAIRS: [(usize, usize, i64); 3] = [(0, 5, 1), (1, 4, -1), (2, 3, 1)];

fn multi_factorial(m: &Monomial) -> Rational {
    let mut f = num::BigInt::one();
    for &e in m {
        for i in 2..=e as u64 {
            f *= i;
        }
    }
    Rational::from_integer(f)
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, -v.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.iter().map(|(m, v)| (*m, -v.clone())).collect() }
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &rhs.terms {
                let mut m = *m1;
                for k in 0..NVARS {
                    m[k] += m2[k];
                }
                out.add_term(m, v1.clone() * v2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type P = Polynomial<Rational>;

    fn z(a: usize, b: usize) -> P {
        P::z_upper(a - 1, b - 1)
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(0, 1, 2, 3), 1);
        assert_eq!(epsilon(1, 0, 2, 3), -1);
        assert_eq!(epsilon(0, 0, 2, 3), 0);
        assert_eq!(epsilon(1, 3, 0, 2), -1);
    }

    #[test]
    fn lowered_coordinates() {
        let zl = |a: usize, b: usize| P::z_lower(a - 1, b - 1);
        assert_eq!(zl(1, 2), z(3, 4));
        assert_eq!(zl(1, 3), -z(2, 4));
        assert_eq!(zl(1, 4), z(2, 3));
        assert_eq!(zl(2, 3), z(1, 4));
        assert_eq!(zl(2, 4), -z(1, 3));
        assert_eq!(zl(3, 4), z(1, 2));
        assert_eq!(zl(2, 1), -z(3, 4));
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(z(1, 2).nabla_lower(0, 1).unwrap(), P::one());
        assert!(z(3, 4).nabla_lower(0, 1).unwrap().is_zero());
        let sq = &z(1, 2) * &z(1, 2);
        assert_eq!(sq.nabla_lower(0, 1).unwrap(), z(1, 2).scale_i(2));
        assert_eq!(z(1, 2).nabla_lower(1, 0).unwrap(), -P::one());
        assert!(z(1, 2).nabla_lower(2, 2).is_err());
        assert_eq!(z(3, 4).nabla_upper(0, 1).unwrap(), P::one());
        assert!(z(1, 2).nabla_upper(0, 1).unwrap().is_zero());
        assert_eq!(sq.nabla_upper(2, 3).unwrap(), z(1, 2).scale_i(2));
    }

    /// Delta and r^2 assembled straight from the index contractions over all
    /// ordered pairs, as a cross-check of the expanded formulas.
    fn laplacian_by_contraction(p: &P) -> P {
        let mut out = P::zero();
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let inner = p.nabla_upper(a, b).unwrap();
                out = &out + &inner.nabla_lower(a, b).unwrap();
            }
        }
        out.scale(&rat(1, 2))
    }

    fn r2_by_contraction() -> P {
        let mut out = P::zero();
        for a in 0..4 {
            for b in 0..4 {
                out = &out + &(&P::z_lower(a, b) * &P::z_upper(a, b));
            }
        }
        out.scale(&rat(1, 2))
    }

    fn euler_by_contraction(p: &P) -> P {
        let mut out = P::zero();
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                out = &out + &(&P::z_lower(a, b) * &p.nabla_upper(a, b).unwrap());
            }
        }
        out.scale(&rat(1, 2))
    }

    #[test]
    fn contractions_match_expanded_forms() {
        assert_eq!(r2_by_contraction(), P::r2());
        let p = &(&z(1, 2) * &z(3, 4)) + &(&(&z(1, 3) * &z(1, 3)) * &z(2, 4));
        assert_eq!(laplacian_by_contraction(&p), p.laplacian());
        assert_eq!(euler_by_contraction(&p), p.euler());
    }

    #[test]
    fn delta_r2_constants() {
        assert_eq!(P::r2().laplacian(), P::constant(rat(12, 1)));
        assert_eq!(z(1, 2).mul_r2().laplacian(), z(1, 2).scale_i(16));
        for m in 1..4 {
            let mut p = P::one();
            for _ in 0..m {
                p = &p * &z(1, 2);
            }
            assert!(p.laplacian().is_zero());
        }
        let expect = P::from_terms([
            ([1, 0, 0, 0, 0, 1], rat(2, 1)),
            ([0, 1, 0, 0, 1, 0], rat(-2, 1)),
            ([0, 0, 1, 1, 0, 0], rat(2, 1)),
        ]);
        assert_eq!(P::r2(), expect);
        assert!(P::zero().mul_r2().is_zero());
    }

    #[test]
    fn euler_grading() {
        let p = &z(1, 2) + &(&z(1, 3) * &z(1, 3));
        let e = &z(1, 2) + &(&z(1, 3) * &z(1, 3)).scale_i(2);
        assert_eq!(p.euler(), e);
        assert!(P::one().euler().is_zero());
    }

    #[test]
    fn fischer_examples() {
        assert_eq!(z(1, 2).fischer_inner(&z(1, 2)), rat(1, 1));
        assert_eq!(z(1, 2).fischer_inner(&z(1, 3)), rat(0, 1));
        let sq = &z(1, 2) * &z(1, 2);
        assert_eq!(sq.fischer_inner(&sq), rat(2, 1));
    }

    #[test]
    fn harmonic_small_cases() {
        let h = z(1, 2).harmonic_decompose().unwrap();
        assert_eq!(h, vec![(0, z(1, 2))]);
        let h = P::r2().harmonic_decompose().unwrap();
        assert_eq!(h, vec![(1, P::one())]);
        assert!(P::zero().harmonic_decompose().unwrap().is_empty());
        assert!((&z(1, 2) + &P::one()).harmonic_decompose().is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(0).len(), 1);
        assert_eq!(monomials_of_degree(2).len(), 21);
        assert_eq!(monomials_of_degree(5).len(), 252);
    }

    #[test]
    fn json_round_trip() {
        let p = &z(1, 2).scale(&rat(-3, 7)) + &P::r2();
        let v = p.to_json();
        assert_eq!(P::from_json(&v).unwrap(), p);
        let first = &v.as_array().unwrap()[0];
        assert_eq!(first["exponents"], json!([0, 0, 1, 1, 0, 0]));
    }
}
