//! Polynomial-valued spinor tensors with the index symmetries of the value
//! modules, their projectors, and the gl(4) action.
//!
//! Entries are stored densely over all index tuples: upper indices first,
//! then lower ones, as base-4 digits of a slot number.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{monomial_weight, Monomial, Polynomial};
use crate::scalar::{int, Rational};

pub type Poly = Polynomial<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// The value modules: the scalar plus the eight summands of V.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueShape {
    /// C, no indices.
    S000,
    /// `f_{abc}` symmetric.
    S300,
    /// `f^a_{bc}`, symmetric in `bc`, traceless.
    S311,
    /// `f^{ab}_c`, symmetric in `ab`, traceless.
    S322,
    /// `f^{abc}` symmetric.
    S333,
    /// `f^{ab}_c`, antisymmetric in `ab`, traceless.
    S210,
    /// `f^a_{bc}`, antisymmetric in `bc`, traceless.
    S221,
    /// `f_a`.
    S100,
    /// `f^a`.
    S111,
}

pub use ValueShape::*;

impl ValueShape {
    /// The eight summands of V in a fixed order.
    pub const V: [ValueShape; 8] = [S300, S311, S322, S333, S210, S221, S100, S111];
    /// The six value modules of the spin 3/2 system.
    pub const SPIN_THREE_HALVES: [ValueShape; 6] = [S300, S311, S322, S333, S210, S221];

    pub fn upper(self) -> usize {
        match self {
            S000 | S300 | S100 => 0,
            S311 | S221 | S111 => 1,
            S322 | S210 => 2,
            S333 => 3,
        }
    }

    pub fn lower(self) -> usize {
        match self {
            S000 | S333 | S111 => 0,
            S322 | S210 | S100 => 1,
            S311 | S221 => 2,
            S300 => 3,
        }
    }

    pub fn arity(self) -> usize {
        self.upper() + self.lower()
    }

    pub fn upper_symmetry(self) -> Symmetry {
        if self == S210 {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Symmetric
        }
    }

    pub fn lower_symmetry(self) -> Symmetry {
        if self == S221 {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Symmetric
        }
    }

    pub fn traceless(self) -> bool {
        self.upper() > 0 && self.lower() > 0
    }

    /// Highest weight `(l1, l2, l3)` with `l4 = 0`.
    pub fn label(self) -> [i64; 3] {
        match self {
            S000 => [0, 0, 0],
            S300 => [3, 0, 0],
            S311 => [3, 1, 1],
            S322 => [3, 2, 2],
            S333 => [3, 3, 3],
            S210 => [2, 1, 0],
            S221 => [2, 2, 1],
            S100 => [1, 0, 0],
            S111 => [1, 1, 1],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            S000 => "000",
            S300 => "300",
            S311 => "311",
            S322 => "322",
            S333 => "333",
            S210 => "210",
            S221 => "221",
            S100 => "100",
            S111 => "111",
        }
    }

    /// The dual module, obtained by exchanging upper and lower indices.
    pub fn dual(self) -> ValueShape {
        match self {
            S000 => S000,
            S300 => S333,
            S333 => S300,
            S311 => S322,
            S322 => S311,
            S210 => S221,
            S221 => S210,
            S100 => S111,
            S111 => S100,
        }
    }

    pub fn slots(self) -> usize {
        4usize.pow(self.arity() as u32)
    }

    pub fn dim(self) -> usize {
        module(self).dim()
    }

    /// Highest weight vector of the value module as a dense slot vector.
    pub fn hwv(self) -> Vec<(usize, Rational)> {
        let idx: (Vec<usize>, Vec<usize>) = match self {
            S000 => (vec![], vec![]),
            S300 => (vec![], vec![0, 0, 0]),
            S333 => (vec![3, 3, 3], vec![]),
            S311 => (vec![3], vec![0, 0]),
            S322 => (vec![3, 3], vec![0]),
            S100 => (vec![], vec![0]),
            S111 => (vec![3], vec![]),
            // delta^{[a}_3 delta^{b]}_4 delta^1_c and delta^1_{[a} delta^2_{b]} delta^c_4
            S210 => {
                let s = slot_of(&[2, 3], &[0]);
                let t = slot_of(&[3, 2], &[0]);
                return vec![(s, Rational::new(1.into(), 2.into())), (t, Rational::new((-1).into(), 2.into()))];
            }
            S221 => {
                let s = slot_of(&[3], &[0, 1]);
                let t = slot_of(&[3], &[1, 0]);
                return vec![(s, Rational::new(1.into(), 2.into())), (t, Rational::new((-1).into(), 2.into()))];
            }
        };
        vec![(slot_of(&idx.0, &idx.1), Rational::one())]
    }
}

impl fmt::Display for ValueShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ValueShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect();
        let t = match t.as_str() {
            "3,0,0,0" | "3,0,0" => "300",
            "3,1,1,0" | "3,1,1" => "311",
            "3,2,2,0" | "3,2,2" => "322",
            "3,3,3,0" | "3,3,3" => "333",
            "2,1,0,0" | "2,1,0" => "210",
            "2,2,1,0" | "2,2,1" => "221",
            "1,0,0,0" | "1,0,0" => "100",
            "1,1,1,0" | "1,1,1" => "111",
            "0,0,0,0" | "0,0,0" => "000",
            other => other,
        };
        [S000, S300, S311, S322, S333, S210, S221, S100, S111]
            .into_iter()
            .find(|v| v.tag() == t)
            .ok_or_else(|| Error::Parse(format!("unknown value module '{s}'")))
    }
}

/// Slot number of an index tuple (upper indices first).
pub fn slot_of(upper: &[usize], lower: &[usize]) -> usize {
    upper.iter().chain(lower).fold(0, |acc, &i| acc * 4 + i)
}

/// Digits of a slot, most significant first.
pub fn digits(slot: usize, arity: usize) -> Vec<usize> {
    let mut d = vec![0; arity];
    let mut s = slot;
    for i in (0..arity).rev() {
        d[i] = s % 4;
        s /= 4;
    }
    d
}

/// gl(4) weight of a value slot: lower index adds one, upper index subtracts one.
pub fn slot_weight(shape: ValueShape, slot: usize) -> [i64; 4] {
    let d = digits(slot, shape.arity());
    let mut w = [0i64; 4];
    for (p, &i) in d.iter().enumerate() {
        if p < shape.upper() {
            w[i] -= 1;
        } else {
            w[i] += 1;
        }
    }
    w
}

/// Representative of a weight modulo the shift by (1,1,1,1): last entry zero.
pub fn normalize_weight(w: [i64; 4]) -> [i64; 4] {
    [w[0] - w[3], w[1] - w[3], w[2] - w[3], 0]
}

pub fn add_weights(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

type SparseMap = Vec<Vec<(usize, Rational)>>;

/// Dense-slot data of a value module: its projector and a weight basis.
#[derive(Debug)]
pub struct ValueModule {
    pub shape: ValueShape,
    /// Row `o` lists the input slots feeding output slot `o`.
    projector: SparseMap,
    /// Basis vectors grouped by weight; each in reduced echelon form on its slots.
    basis: Vec<BasisVector>,
}

#[derive(Clone, Debug)]
pub struct BasisVector {
    pub weight: [i64; 4],
    pub pivot: usize,
    pub entries: Vec<(usize, Rational)>,
}

impl ValueModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn projector(&self) -> &SparseMap {
        &self.projector
    }

    /// Apply the projector to a dense vector of slot values.
    pub fn project_vec<T, F>(&self, input: &[T], mut combine: F) -> Vec<T>
    where
        F: FnMut(&[(usize, Rational)], &[T]) -> T,
    {
        self.projector.iter().map(|row| combine(row, input)).collect()
    }
}

fn dense_identity(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Rational::one());
    }
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut c = Matrix::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.ncols() {
                let y = b.get(k, j);
                if !y.is_zero() {
                    let v = c.get(i, j) + x * y;
                    c.set(i, j, v);
                }
            }
        }
    }
    c
}

/// Matrix averaging over all permutations of `group` (positions within the
/// slot digits), with signs when antisymmetric.
pub fn group_symmetrizer(arity: usize, group: &[usize], sym: Symmetry) -> Matrix {
    let n = 4usize.pow(arity as u32);
    let perms = permutations(group.len());
    let norm = Rational::new(1.into(), (perms.len() as i64).into());
    let mut m = Matrix::zeros(n, n);
    for slot in 0..n {
        let d = digits(slot, arity);
        for (perm, sign) in &perms {
            let mut e = d.clone();
            for (k, &pos) in group.iter().enumerate() {
                e[pos] = d[group[perm[k]]];
            }
            let src = e.iter().fold(0, |acc, &i| acc * 4 + i);
            let s = if sym == Symmetry::Antisymmetric { *sign } else { 1 };
            let v = m.get(slot, src) + &norm * int(s);
            m.set(slot, src, v);
        }
    }
    m
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn symmetrizer(shape: ValueShape) -> Matrix {
    let arity = shape.arity();
    let up: Vec<usize> = (0..shape.upper()).collect();
    let lo: Vec<usize> = (shape.upper()..arity).collect();
    let a = group_symmetrizer(arity, &up, shape.upper_symmetry());
    let b = group_symmetrizer(arity, &lo, shape.lower_symmetry());
    matmul(&a, &b)
}

/// Positions contracted by the trace: the first upper and first lower index.
fn trace_positions(shape: ValueShape) -> (usize, usize) {
    (0, shape.upper())
}

/// Trace map from the shape's slots to slots of the remaining indices.
fn trace_matrix(shape: ValueShape) -> Matrix {
    let arity = shape.arity();
    let (pu, pl) = trace_positions(shape);
    let n = shape.slots();
    let rest = 4usize.pow(arity as u32 - 2);
    let mut t = Matrix::zeros(rest, n);
    for slot in 0..n {
        let d = digits(slot, arity);
        if d[pu] != d[pl] {
            continue;
        }
        let r: Vec<usize> = d.iter().enumerate().filter(|(p, _)| *p != pu && *p != pl).map(|(_, &i)| i).collect();
        let rs = r.iter().fold(0, |acc, &i| acc * 4 + i);
        let v = t.get(rs, slot) + Rational::one();
        t.set(rs, slot, v);
    }
    t
}

/// `t -> delta (x) t` placed at the trace positions.
fn delta_insertion(shape: ValueShape) -> Matrix {
    let arity = shape.arity();
    let (pu, pl) = trace_positions(shape);
    let n = shape.slots();
    let rest = 4usize.pow(arity as u32 - 2);
    let mut m = Matrix::zeros(n, rest);
    for slot in 0..n {
        let d = digits(slot, arity);
        if d[pu] != d[pl] {
            continue;
        }
        let r: Vec<usize> = d.iter().enumerate().filter(|(p, _)| *p != pu && *p != pl).map(|(_, &i)| i).collect();
        let rs = r.iter().fold(0, |acc, &i| acc * 4 + i);
        m.set(slot, rs, Rational::one());
    }
    m
}

fn build_projector(shape: ValueShape) -> Matrix {
    let s = symmetrizer(shape);
    if !shape.traceless() {
        return s;
    }
    // Ansatz A = S . delta; trace(A t) = k t on the trace space.
    let tr = trace_matrix(shape);
    let ansatz = matmul(&s, &delta_insertion(shape));
    let ta = matmul(&tr, &ansatz);
    let k = ta.get(0, 0).clone();
    assert!(!k.is_zero(), "degenerate trace ansatz for {shape}");
    for i in 0..ta.nrows() {
        for j in 0..ta.ncols() {
            let expect = if i == j { k.clone() } else { Rational::zero() };
            assert_eq!(ta.get(i, j), &expect, "trace ansatz is not scalar for {shape}");
        }
    }
    let mut corr = matmul(&ansatz, &tr);
    let n = shape.slots();
    let inv = Rational::one() / k;
    let mut p = dense_identity(n);
    for i in 0..n {
        for j in 0..n {
            let c = corr.get(i, j).clone();
            if !c.is_zero() {
                let v = p.get(i, j) - &c * &inv;
                p.set(i, j, v);
            }
        }
    }
    corr = matmul(&p, &s);
    corr
}

fn build_module(shape: ValueShape) -> ValueModule {
    let p = build_projector(shape);
    let n = shape.slots();
    let projector: SparseMap = (0..n)
        .map(|i| (0..n).filter(|&j| !p.get(i, j).is_zero()).map(|j| (j, p.get(i, j).clone())).collect())
        .collect();
    // Columns of P grouped by slot weight span the module weight spaces.
    let mut by_weight: BTreeMap<[i64; 4], Vec<usize>> = BTreeMap::new();
    for s in 0..n {
        by_weight.entry(slot_weight(shape, s)).or_default().push(s);
    }
    let mut basis = Vec::new();
    for (w, slots) in by_weight.iter().rev() {
        // Rows = projected delta vectors restricted to this weight's slots.
        let rows: Vec<Vec<Rational>> = slots.iter().map(|&src| slots.iter().map(|&o| p.get(o, src).clone()).collect()).collect();
        let mut m = Matrix::from_rows(rows, slots.len());
        let pivots = m.rref();
        for (r, &pc) in pivots.iter().enumerate() {
            let entries: Vec<(usize, Rational)> = slots
                .iter()
                .enumerate()
                .filter(|(c, _)| !m.get(r, *c).is_zero())
                .map(|(c, &s)| (s, m.get(r, c).clone()))
                .collect();
            basis.push(BasisVector { weight: *w, pivot: slots[pc], entries });
        }
    }
    ValueModule { shape, projector, basis }
}

/// Cached module data for a shape.
pub fn module(shape: ValueShape) -> &'static ValueModule {
    static CELLS: [OnceLock<ValueModule>; 9] = [const { OnceLock::new() }; 9];
    let i = shape as usize;
    CELLS[i].get_or_init(|| build_module(shape))
}

/// Polynomial-valued tensor with the index structure of `shape`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField {
    shape: ValueShape,
    entries: Vec<Poly>,
}

impl TensorField {
    pub fn zero(shape: ValueShape) -> Self {
        TensorField { shape, entries: vec![Poly::zero(); shape.slots()] }
    }

    /// `p (x) v` with `v` a sparse slot vector.
    pub fn from_product(shape: ValueShape, p: &Poly, v: &[(usize, Rational)]) -> Self {
        let mut f = Self::zero(shape);
        for (s, c) in v {
            f.entries[*s].add_scaled(p, c);
        }
        f
    }

    /// Build from raw dense entries; symmetries are not enforced.
    pub fn from_entries(shape: ValueShape, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != shape.slots() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", shape.slots()),
                got: format!("{} entries", entries.len()),
            });
        }
        Ok(TensorField { shape, entries })
    }

    /// Field defined entrywise by a closure on (upper, lower) indices.
    pub fn from_fn(shape: ValueShape, mut f: impl FnMut(&[usize], &[usize]) -> Poly) -> Self {
        let entries = (0..shape.slots())
            .map(|s| {
                let d = digits(s, shape.arity());
                f(&d[..shape.upper()], &d[shape.upper()..])
            })
            .collect();
        TensorField { shape, entries }
    }

    pub fn shape(&self) -> ValueShape {
        self.shape
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn get(&self, upper: &[usize], lower: &[usize]) -> &Poly {
        &self.entries[slot_of(upper, lower)]
    }

    pub fn entry(&self, slot: usize) -> &Poly {
        &self.entries[slot]
    }

    pub fn entry_mut(&mut self, slot: usize) -> &mut Poly {
        &mut self.entries[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch { expected: self.shape.to_string(), got: other.shape.to_string() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        TensorField { shape: self.shape, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() }
    }

    /// `self += c * other`; shapes must agree.
    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!(self.shape, other.shape, "shape mismatch in add_scaled");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_scaled(b, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        TensorField { shape: self.shape, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.map(|e| e * p)
    }

    pub fn laplacian(&self) -> Self {
        self.map(Poly::laplacian)
    }

    pub fn mul_r2(&self) -> Self {
        self.map(Poly::mul_r2)
    }

    pub fn euler(&self) -> Self {
        self.map(Poly::euler)
    }

    /// Sorted degrees present in any entry.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.entries.iter().flat_map(|p| p.degrees()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Projection onto the value module (symmetrization plus trace removal).
    pub fn project(&self) -> Self {
        let entries = module(self.shape).project_vec(&self.entries, |row, input| {
            let mut acc = Poly::zero();
            for (j, c) in row {
                acc.add_scaled(&input[*j], c);
            }
            acc
        });
        TensorField { shape: self.shape, entries }
    }

    /// True when the entries satisfy the shape's symmetries and trace condition.
    pub fn is_in_module(&self) -> bool {
        self.project() == *self
    }

    /// Traceless projection; unsupported for shapes without a trace.
    pub fn traceless_project(&self) -> Result<Self> {
        if !self.shape.traceless() {
            return Err(Error::Unsupported(format!("shape {} has no trace", self.shape)));
        }
        Ok(self.project())
    }

    /// Contraction of the first upper with the first lower index.
    pub fn trace(&self) -> Vec<Poly> {
        if !self.shape.traceless() {
            return Vec::new();
        }
        let arity = self.shape.arity();
        let (pu, pl) = trace_positions(self.shape);
        let rest = 4usize.pow(arity as u32 - 2);
        let mut out = vec![Poly::zero(); rest];
        for (slot, p) in self.entries.iter().enumerate() {
            let d = digits(slot, arity);
            if d[pu] != d[pl] {
                continue;
            }
            let r = d.iter().enumerate().filter(|(q, _)| *q != pu && *q != pl).fold(0, |acc, (_, &i)| acc * 4 + i);
            out[r] = &out[r] + p;
        }
        out
    }

    /// Action of `E^i_j` (0-based, `i != j`): the derivation
    /// `z^{ja} nabla_{ia}` on coefficients plus the index action
    /// `(E s)_a = s_i delta^j_a`, `(E t)^a = -t^j delta^a_i`.
    pub fn sl4(&self, i: usize, j: usize) -> Result<Self> {
        if i == j || i > 3 || j > 3 {
            return Err(Error::Unsupported(format!("E^{}_{} is not a root vector", i + 1, j + 1)));
        }
        let shape = self.shape;
        let arity = shape.arity();
        let mut out = self.map(|p| poly_sl4(p, i, j));
        for (slot, p) in self.entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = digits(slot, arity);
            for pos in 0..arity {
                let upper = pos < shape.upper();
                let (from, to, sign) = if upper { (j, i, -1) } else { (i, j, 1) };
                if d[pos] != from {
                    continue;
                }
                let mut e = d.clone();
                e[pos] = to;
                let t = e.iter().fold(0, |acc, &x| acc * 4 + x);
                out.entries[t].add_scaled(p, &int(sign));
            }
        }
        Ok(out)
    }

    /// The gl(4) weight when every term carries the same one.
    pub fn weight_of(&self) -> Result<[i64; 4]> {
        let mut w: Option<[i64; 4]> = None;
        for (slot, p) in self.entries.iter().enumerate() {
            let sw = slot_weight(self.shape, slot);
            for (m, _) in p.terms() {
                let tw = add_weights(sw, monomial_weight(m));
                match w {
                    None => w = Some(tw),
                    Some(x) if x != tw => return Err(Error::MixedWeight),
                    _ => {}
                }
            }
        }
        w.ok_or(Error::MixedWeight)
    }

    /// Killed by every raising operator `E^i_j`, `i > j`.
    pub fn is_highest_weight_vector(&self) -> bool {
        if self.is_zero() || self.weight_of().is_err() {
            return false;
        }
        (0..4).all(|i| (0..i).all(|j| self.sl4(i, j).map(|f| f.is_zero()).unwrap_or(false)))
    }

    /// Hermitian product: Fischer product summed over all dense slots.
    pub fn inner(&self, other: &Self) -> Result<Rational> {
        self.check_same(other)?;
        Ok(self.entries.iter().zip(&other.entries).fold(Rational::zero(), |acc, (a, b)| acc + a.fischer_inner(b)))
    }

    /// Nonzero `(slot, monomial, coefficient)` triples in a fixed order.
    pub fn coordinates(&self) -> impl Iterator<Item = (usize, &Monomial, &Rational)> {
        self.entries.iter().enumerate().flat_map(|(s, p)| p.terms().map(move |(m, c)| (s, m, c)))
    }

    /// JSON listing the canonical index representatives with nonzero entries.
    pub fn to_json(&self) -> Value {
        let shape = self.shape;
        let arity = shape.arity();
        let mut out = Vec::new();
        for (slot, p) in self.entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = digits(slot, arity);
            let (u, l) = d.split_at(shape.upper());
            if !canonical_group(u, shape.upper_symmetry()) || !canonical_group(l, shape.lower_symmetry()) {
                continue;
            }
            out.push(json!({
                "upper": u.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "lower": l.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "poly": p.to_json(),
            }));
        }
        json!({ "shape": shape.tag(), "entries": out })
    }

    /// Inverse of [`TensorField::to_json`]: fills the orbit of each listed entry.
    pub fn from_json(v: &Value) -> Result<Self> {
        let shape: ValueShape = v
            .get("shape")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing shape".into()))?
            .parse()?;
        let mut raw = Self::zero(shape);
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing entries".into()))?;
        let read = |e: &Value, key: &str, n: usize| -> Result<Vec<usize>> {
            let a = e.get(key).and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("missing {key}")))?;
            let ix: Option<Vec<usize>> = a.iter().map(|x| x.as_u64().filter(|&i| (1..=4).contains(&i)).map(|i| i as usize - 1)).collect();
            ix.filter(|ix| ix.len() == n).ok_or_else(|| Error::Parse(format!("bad {key} indices")))
        };
        for e in entries {
            let u = read(e, "upper", shape.upper())?;
            let l = read(e, "lower", shape.lower())?;
            let p = Poly::from_json(e.get("poly").ok_or_else(|| Error::Parse("missing poly".into()))?)?;
            let s = slot_of(&u, &l);
            raw.entries[s] = p;
        }
        // Restore the full orbit from the canonical representatives.
        let f = TensorField::from_fn(shape, |u, l| {
            let (cu, su) = canonicalize(u, shape.upper_symmetry());
            let (cl, sl) = canonicalize(l, shape.lower_symmetry());
            if su == 0 || sl == 0 {
                return Poly::zero();
            }
            raw.get(&cu, &cl).scale_i(su * sl)
        });
        Ok(f)
    }
}

fn canonical_group(g: &[usize], sym: Symmetry) -> bool {
    match sym {
        Symmetry::Symmetric => g.windows(2).all(|w| w[0] <= w[1]),
        Symmetry::Antisymmetric => g.windows(2).all(|w| w[0] < w[1]),
    }
}

/// Sorted representative and the sign relating it to `g` (0 if forced zero).
fn canonicalize(g: &[usize], sym: Symmetry) -> (Vec<usize>, i64) {
    let mut v = g.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    match sym {
        Symmetry::Symmetric => (v, 1),
        Symmetry::Antisymmetric => {
            if v.windows(2).any(|w| w[0] == w[1]) {
                (v, 0)
            } else {
                (v, sign)
            }
        }
    }
}

/// `z^{ja} nabla_{ia} P`, summed over `a`.
pub fn poly_sl4(p: &Poly, i: usize, j: usize) -> Poly {
    let mut out = Poly::zero();
    for a in 0..4 {
        if a == i || a == j {
            continue;
        }
        let d = p.nabla_lower(i, a).expect("distinct indices");
        out = &out + &(&Poly::z_upper(j, a) * &d);
    }
    out
}

/// Average or alternate a raw dense tensor over the index positions in `group`.
pub fn symmetrize(entries: &[Poly], arity: usize, group: &[usize]) -> Vec<Poly> {
    apply_dense(&group_symmetrizer(arity, group, Symmetry::Symmetric), entries)
}

pub fn antisymmetrize(entries: &[Poly], arity: usize, group: &[usize]) -> Vec<Poly> {
    apply_dense(&group_symmetrizer(arity, group, Symmetry::Antisymmetric), entries)
}

fn apply_dense(m: &Matrix, entries: &[Poly]) -> Vec<Poly> {
    (0..m.nrows())
        .map(|i| {
            let mut acc = Poly::zero();
            for (j, e) in entries.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() {
                    acc.add_scaled(e, c);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn module_dimensions() {
        let dims: Vec<usize> = ValueShape::V.iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![20, 36, 36, 20, 20, 20, 4, 4]);
        assert_eq!(S000.dim(), 1);
    }

    #[test]
    fn projector_is_idempotent() {
        for shape in ValueShape::V {
            let m = module(shape);
            for (o, row) in m.projector().iter().enumerate() {
                // (P^2)_{o,j} = sum_k P_{o,k} P_{k,j}
                let mut sq: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, c) in row {
                    for (j, d) in &m.projector()[*k] {
                        *sq.entry(*j).or_insert_with(Rational::zero) += c * d;
                    }
                }
                sq.retain(|_, v| !v.is_zero());
                let direct: BTreeMap<usize, Rational> = row.iter().cloned().collect();
                assert_eq!(sq, direct, "{shape} row {o}");
            }
        }
    }

    #[test]
    fn symmetrize_examples() {
        let mut e = vec![Poly::zero(); 16];
        e[slot_of(&[], &[0, 1])] = Poly::one();
        let s = symmetrize(&e, 2, &[0, 1]);
        assert_eq!(s[slot_of(&[], &[0, 1])], Poly::constant(rat(1, 2)));
        assert_eq!(s[slot_of(&[], &[1, 0])], Poly::constant(rat(1, 2)));
        let a = antisymmetrize(&e, 2, &[0, 1]);
        assert_eq!(a[slot_of(&[], &[0, 1])], Poly::constant(rat(1, 2)));
        assert!(symmetrize(&a, 2, &[0, 1]).iter().all(Poly::is_zero));
        assert_eq!(antisymmetrize(&a, 2, &[0, 1]), a);
    }

    #[test]
    fn example_hwvs() {
        for shape in ValueShape::V {
            let f = TensorField::from_product(shape, &Poly::one(), &shape.hwv());
            assert!(f.is_in_module(), "{shape}");
            assert!(f.is_highest_weight_vector(), "{shape}");
            let l = shape.label();
            assert_eq!(normalize_weight(f.weight_of().unwrap()), [l[0], l[1], l[2], 0], "{shape}");
        }
    }

    #[test]
    fn traceless_projection_of_delta() {
        let t = TensorField::from_fn(S322, |u, l| if u == [0, 0] && l == [0] { Poly::one() } else { Poly::zero() });
        let p = t.traceless_project().unwrap();
        assert!(p.trace().iter().all(Poly::is_zero));
        assert_eq!(p.traceless_project().unwrap(), p);
        assert!(TensorField::zero(S311).traceless_project().unwrap().is_zero());
        assert!(TensorField::zero(S300).traceless_project().is_err());
    }

    #[test]
    fn lowering_examples() {
        let s = TensorField::from_product(S100, &Poly::one(), &S100.hwv());
        let e = s.sl4(0, 1).unwrap();
        assert_eq!(e, TensorField::from_product(S100, &Poly::one(), &[(1, Rational::one())]));
        let t = TensorField::from_product(S111, &Poly::one(), &S111.hwv());
        let e = t.sl4(2, 3).unwrap();
        assert_eq!(e, TensorField::from_product(S111, &Poly::one(), &[(2, -Rational::one())]));
        assert!(t.sl4(1, 1).is_err());
    }

    #[test]
    fn weight_examples() {
        let z12 = Poly::z_upper(0, 1);
        let mut p = Poly::one();
        for _ in 0..2 {
            p = &p * &z12;
        }
        let f = TensorField::from_product(S300, &p, &S300.hwv());
        assert_eq!(f.weight_of().unwrap(), [5, 2, 0, 0]);
        let g = TensorField::from_product(S311, &p, &S311.hwv());
        assert_eq!(g.weight_of().unwrap(), [4, 2, 0, -1]);
        assert_eq!(normalize_weight([4, 2, 0, -1]), [5, 3, 1, 0]);
        let mixed = TensorField::from_product(S000, &(&Poly::z_upper(0, 1) + &Poly::z_upper(0, 2)), &[(0, Rational::one())]);
        assert_eq!(mixed.weight_of(), Err(Error::MixedWeight));
    }

    #[test]
    fn json_round_trip() {
        let z13 = Poly::z_upper(0, 2);
        let f = TensorField::from_product(S221, &z13, &S221.hwv());
        let back = TensorField::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let g = TensorField::from_product(S311, &z13, &S311.hwv()).project();
        assert_eq!(TensorField::from_json(&g.to_json()).unwrap(), g);
    }
}
