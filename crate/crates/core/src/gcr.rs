//! Stein-Weiss component operators, their multiplication counterparts, the
//! generalized Cauchy-Riemann operators and the invariant composites.
//!
//! Each differential component is an index contraction of the gradient
//! `nabla_{pq} f` (or `nabla^{pq} f`) followed by projection onto the target
//! module. Nine formulas are written out; the other nine are produced by
//! exchanging upper and lower indices everywhere.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::Zero;

use crate::error::{Error, Result};
use crate::poly::{coord_index, dual_coord};
use crate::scalar::{int, Rational};
use crate::tensor::{module, slot_of, TensorField, ValueShape, ValueShape::*};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Upper,
    Lower,
}

impl Height {
    fn flip(self) -> Height {
        match self {
            Height::Upper => Height::Lower,
            Height::Lower => Height::Upper,
        }
    }
}

/// An index contraction `grad_{pq} f -> g` written with letter labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub source: ValueShape,
    pub target: ValueShape,
    pub grad: Height,
    pub grad_labels: String,
    pub src_upper: String,
    pub src_lower: String,
    pub out_upper: String,
    pub out_lower: String,
}

impl Formula {
    #[allow(clippy::too_many_arguments)]
    fn new(source: ValueShape, target: ValueShape, grad: Height, g: &str, su: &str, sl: &str, ou: &str, ol: &str) -> Self {
        Formula {
            source,
            target,
            grad,
            grad_labels: g.into(),
            src_upper: su.into(),
            src_lower: sl.into(),
            out_upper: ou.into(),
            out_lower: ol.into(),
        }
    }

    /// Exchange upper and lower indices throughout.
    pub fn transpose(&self) -> Formula {
        Formula {
            source: self.source.dual(),
            target: self.target.dual(),
            grad: self.grad.flip(),
            grad_labels: self.grad_labels.clone(),
            src_upper: self.src_lower.clone(),
            src_lower: self.src_upper.clone(),
            out_upper: self.out_lower.clone(),
            out_lower: self.out_upper.clone(),
        }
    }

    /// Abstract-index rendering, e.g. `nabla^{bd} f^{a}_{bc} -> g^{da}_{c}`.
    pub fn render(&self, symbol: &str) -> String {
        let g = match self.grad {
            Height::Upper => format!("{symbol}^{{{}}}", self.grad_labels),
            Height::Lower => format!("{symbol}_{{{}}}", self.grad_labels),
        };
        format!(
            "{g} f^{{{}}}_{{{}}} -> g^{{{}}}_{{{}}}",
            self.src_upper, self.src_lower, self.out_upper, self.out_lower
        )
    }
}

fn primal_formulas() -> Vec<Formula> {
    use Height::*;
    vec![
        Formula::new(S300, S311, Upper, "ab", "", "acd", "b", "cd"),
        Formula::new(S311, S322, Upper, "bd", "a", "bc", "da", "c"),
        Formula::new(S311, S210, Upper, "bd", "a", "bc", "da", "c"),
        Formula::new(S311, S300, Lower, "ad", "a", "bc", "", "dbc"),
        Formula::new(S210, S311, Lower, "bd", "bc", "a", "c", "da"),
        Formula::new(S210, S221, Lower, "bd", "bc", "a", "c", "da"),
        Formula::new(S210, S100, Lower, "bc", "bc", "a", "", "a"),
        Formula::new(S100, S210, Upper, "ab", "", "c", "ab", "c"),
        Formula::new(S100, S111, Upper, "ab", "", "b", "a", ""),
    ]
}

/// All eighteen component formulas: the primal table and its transposes.
pub fn formula_table() -> &'static [Formula] {
    static TABLE: OnceLock<Vec<Formula>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let primal = primal_formulas();
        let mut all: Vec<Formula> = primal.iter().map(Formula::transpose).collect();
        all.extend(primal);
        all.sort_by_key(|f| (f.source, f.target));
        all
    })
}

pub fn formula(source: ValueShape, target: ValueShape) -> Option<&'static Formula> {
    formula_table().iter().find(|f| f.source == source && f.target == target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Differential,
    Multiplication,
}

/// `D^source_target` or its multiplication counterpart `z^source_target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentOp {
    pub kind: OpKind,
    pub source: ValueShape,
    pub target: ValueShape,
}

impl ComponentOp {
    pub fn d(source: ValueShape, target: ValueShape) -> Self {
        ComponentOp { kind: OpKind::Differential, source, target }
    }

    pub fn z(source: ValueShape, target: ValueShape) -> Self {
        ComponentOp { kind: OpKind::Multiplication, source, target }
    }

    pub fn all() -> Vec<ComponentOp> {
        let mut v: Vec<ComponentOp> = formula_table().iter().map(|f| Self::d(f.source, f.target)).collect();
        v.extend(formula_table().iter().map(|f| Self::z(f.source, f.target)));
        v
    }

    pub fn formula(&self) -> &'static Formula {
        formula(self.source, self.target).expect("component ops are built from the table")
    }

    /// The same arrow with the other kind.
    pub fn counterpart(&self) -> ComponentOp {
        let kind = match self.kind {
            OpKind::Differential => OpKind::Multiplication,
            OpKind::Multiplication => OpKind::Differential,
        };
        ComponentOp { kind, ..*self }
    }

    /// The reversed arrow of the other kind: the adjoint partner.
    pub fn adjoint_partner(&self) -> ComponentOp {
        ComponentOp { kind: self.counterpart().kind, source: self.target, target: self.source }
    }

    pub fn degree_shift(&self) -> i32 {
        match self.kind {
            OpKind::Differential => -1,
            OpKind::Multiplication => 1,
        }
    }

    pub fn apply(&self, f: &TensorField) -> Result<TensorField> {
        if f.shape() != self.source {
            return Err(Error::ShapeMismatch { expected: self.source.to_string(), got: f.shape().to_string() });
        }
        Ok(compiled(*self).apply(f))
    }
}

impl fmt::Display for ComponentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.kind {
            OpKind::Differential => "D",
            OpKind::Multiplication => "z",
        };
        write!(f, "{s}^{}_{}", self.source, self.target)
    }
}

impl FromStr for ComponentOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown component operator '{s}'"));
        let (head, rest) = s.split_once('^').ok_or_else(bad)?;
        let (src, tgt) = rest.split_once('_').ok_or_else(bad)?;
        let (src, tgt): (ValueShape, ValueShape) = (src.parse()?, tgt.parse()?);
        formula(src, tgt).ok_or_else(bad)?;
        match head {
            "D" => Ok(Self::d(src, tgt)),
            "z" => Ok(Self::z(src, tgt)),
            _ => Err(bad()),
        }
    }
}

/// Operator in the form `sum_k C_k (x) X_k`: for each (input slot, coordinate)
/// the list of weighted output slots, where `X_k` is `d/dz_k` or `z_k`.
#[derive(Debug)]
pub struct CompiledOp {
    pub op: ComponentOp,
    pub terms: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl CompiledOp {
    pub fn apply(&self, f: &TensorField) -> TensorField {
        let mut out = TensorField::zero(self.op.target);
        for (&(i, k), targets) in &self.terms {
            let p = f.entry(i);
            if p.is_zero() {
                continue;
            }
            let x = match self.op.kind {
                OpKind::Differential => p.derivative(k),
                OpKind::Multiplication => p.mul_var(k),
            };
            if x.is_zero() {
                continue;
            }
            for (o, c) in targets {
                out.entry_mut(*o).add_scaled(&x, c);
            }
        }
        out
    }
}

fn compile(op: ComponentOp) -> CompiledOp {
    let fm = op.formula();
    let mut labels: Vec<char> = Vec::new();
    for c in fm.grad_labels.chars().chain(fm.src_upper.chars()).chain(fm.src_lower.chars()).chain(fm.out_upper.chars()).chain(fm.out_lower.chars()) {
        if !labels.contains(&c) {
            labels.push(c);
        }
    }
    let pos = |c: char| labels.iter().position(|&l| l == c).unwrap();
    let g: Vec<usize> = fm.grad_labels.chars().map(pos).collect();
    let su: Vec<usize> = fm.src_upper.chars().map(pos).collect();
    let sl: Vec<usize> = fm.src_lower.chars().map(pos).collect();
    let ou: Vec<usize> = fm.out_upper.chars().map(pos).collect();
    let ol: Vec<usize> = fm.out_lower.chars().map(pos).collect();
    // Upper gradient indices with differentiation, or lower ones with
    // multiplication, go through the epsilon dual.
    let via_dual = matches!(
        (op.kind, fm.grad),
        (OpKind::Differential, Height::Upper) | (OpKind::Multiplication, Height::Lower)
    );
    let n = labels.len();
    let mut raw: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
    for code in 0..4usize.pow(n as u32) {
        let asg: Vec<usize> = (0..n).map(|i| (code / 4usize.pow(i as u32)) % 4).collect();
        let (p, q) = (asg[g[0]], asg[g[1]]);
        let resolved = if via_dual { dual_coord(p, q) } else { coord_index(p, q) };
        let Some((sign, k)) = resolved else { continue };
        let pick = |v: &[usize]| v.iter().map(|&i| asg[i]).collect::<Vec<_>>();
        let i = slot_of(&pick(&su), &pick(&sl));
        let o = slot_of(&pick(&ou), &pick(&ol));
        *raw.entry((i, k, o)).or_insert_with(Rational::zero) += int(sign as i64);
    }
    // Compose with the target projector, column by column.
    let proj = module(op.target).projector();
    let mut columns: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for (o2, row) in proj.iter().enumerate() {
        for (o, c) in row {
            columns.entry(*o).or_default().push((o2, c.clone()));
        }
    }
    let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
    for ((i, k, o), c) in raw {
        if c.is_zero() {
            continue;
        }
        if let Some(col) = columns.get(&o) {
            let slot = acc.entry((i, k)).or_default();
            for (o2, w) in col {
                *slot.entry(*o2).or_insert_with(Rational::zero) += &c * w;
            }
        }
    }
    let terms = acc
        .into_iter()
        .map(|(key, outs)| (key, outs.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
        .filter(|(_, v)| !v.is_empty())
        .collect();
    CompiledOp { op, terms }
}

/// Cached compiled form of a component operator.
pub fn compiled(op: ComponentOp) -> &'static CompiledOp {
    static CACHE: OnceLock<Mutex<HashMap<ComponentOp, &'static CompiledOp>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&op) {
        return c;
    }
    let c: &'static CompiledOp = Box::leak(Box::new(compile(op)));
    cache.lock().unwrap().entry(op).or_insert(c)
}

/// Targets of the components of the GCR operator on `shape`.
pub fn gcr_targets(shape: ValueShape) -> Vec<ValueShape> {
    match shape {
        S300 => vec![S311],
        S333 => vec![S322],
        S311 => vec![S322, S210, S300],
        S322 => vec![S311, S221, S333],
        S210 => vec![S311, S221, S100],
        S221 => vec![S322, S210, S111],
        S100 => vec![S111],
        S111 => vec![S100],
        S000 => vec![],
    }
}

/// All components `D^shape_mu f` of the GCR operator.
pub fn gcr(shape: ValueShape, f: &TensorField) -> Result<Vec<TensorField>> {
    gcr_targets(shape).into_iter().map(|t| ComponentOp::d(shape, t).apply(f)).collect()
}

/// One optional field per summand of V; absent summands are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MixedField {
    parts: BTreeMap<ValueShape, TensorField>,
}

impl MixedField {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(f: TensorField) -> Self {
        let mut m = Self::new();
        m.insert(f);
        m
    }

    /// Add `f` to the component of its shape.
    pub fn insert(&mut self, f: TensorField) {
        match self.parts.get_mut(&f.shape()) {
            Some(g) => g.add_scaled(&f, &Rational::from_integer(1.into())),
            None => {
                self.parts.insert(f.shape(), f);
            }
        }
    }

    pub fn get(&self, shape: ValueShape) -> Option<&TensorField> {
        self.parts.get(&shape).filter(|f| !f.is_zero())
    }

    pub fn component(&self, shape: ValueShape) -> TensorField {
        self.parts.get(&shape).cloned().unwrap_or_else(|| TensorField::zero(shape))
    }

    pub fn parts(&self) -> impl Iterator<Item = &TensorField> {
        self.parts.values().filter(|f| !f.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(TensorField::is_zero)
    }

    pub fn map(&self, f: impl Fn(&TensorField) -> TensorField) -> MixedField {
        MixedField { parts: self.parts.iter().map(|(k, v)| (*k, f(v))).collect() }
    }

    pub fn add_scaled(&mut self, other: &MixedField, c: &Rational) {
        for f in other.parts.values() {
            let g = f.scale(c);
            self.insert(g);
        }
    }
}

/// The invariant operators acting on mixed fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompositeOp {
    /// `D^+_-`.
    DPlusMinus,
    /// `D^-_+`.
    DMinusPlus,
    /// `D^{--}`.
    DUpperMinus,
    /// `D_{--}`.
    DLowerMinus,
    /// `D^{++}`.
    DUpperPlus,
    /// `D_{++}`.
    DLowerPlus,
    ZPlusMinus,
    ZMinusPlus,
    ZUpperMinus,
    ZLowerMinus,
    ZUpperPlus,
    ZLowerPlus,
    Laplacian,
    R2,
    Euler,
}

impl CompositeOp {
    pub const ALL: [CompositeOp; 15] = [
        CompositeOp::DPlusMinus,
        CompositeOp::DMinusPlus,
        CompositeOp::DUpperMinus,
        CompositeOp::DLowerMinus,
        CompositeOp::DUpperPlus,
        CompositeOp::DLowerPlus,
        CompositeOp::ZPlusMinus,
        CompositeOp::ZMinusPlus,
        CompositeOp::ZUpperMinus,
        CompositeOp::ZLowerMinus,
        CompositeOp::ZUpperPlus,
        CompositeOp::ZLowerPlus,
        CompositeOp::Laplacian,
        CompositeOp::R2,
        CompositeOp::Euler,
    ];

    pub fn label(self) -> &'static str {
        use CompositeOp::*;
        match self {
            DPlusMinus => "D+-",
            DMinusPlus => "D-+",
            DUpperMinus => "D--",
            DLowerMinus => "D_--",
            DUpperPlus => "D++",
            DLowerPlus => "D_++",
            ZPlusMinus => "z+-",
            ZMinusPlus => "z-+",
            ZUpperMinus => "z--",
            ZLowerMinus => "z_--",
            ZUpperPlus => "z++",
            ZLowerPlus => "z_++",
            Laplacian => "Delta",
            R2 => "r2",
            Euler => "E",
        }
    }

    /// Component arrows `(source, target)` and their kind; empty for Delta, r2, E.
    pub fn components(self) -> Vec<ComponentOp> {
        use CompositeOp::*;
        let plus_minus = [
            (S300, S311),
            (S322, S311),
            (S210, S311),
            (S322, S221),
            (S210, S221),
            (S311, S322),
            (S221, S322),
            (S311, S210),
            (S221, S210),
            (S322, S333),
            (S100, S111),
        ];
        let arrows: Vec<(ValueShape, ValueShape)> = match self {
            DPlusMinus | ZPlusMinus => plus_minus.to_vec(),
            DMinusPlus | ZMinusPlus => plus_minus.iter().map(|(s, t)| (s.dual(), t.dual())).collect(),
            DUpperMinus | ZUpperMinus => vec![(S210, S100)],
            DLowerMinus | ZLowerMinus => vec![(S221, S111)],
            DUpperPlus | ZUpperPlus => vec![(S100, S210)],
            DLowerPlus | ZLowerPlus => vec![(S111, S221)],
            Laplacian | R2 | Euler => vec![],
        };
        let mult = matches!(self, ZPlusMinus | ZMinusPlus | ZUpperMinus | ZLowerMinus | ZUpperPlus | ZLowerPlus);
        arrows
            .into_iter()
            .map(|(s, t)| if mult { ComponentOp::z(s, t) } else { ComponentOp::d(s, t) })
            .collect()
    }

    pub fn apply(self, phi: &MixedField) -> MixedField {
        match self {
            CompositeOp::Laplacian => phi.map(TensorField::laplacian),
            CompositeOp::R2 => phi.map(TensorField::mul_r2),
            CompositeOp::Euler => phi.map(TensorField::euler),
            _ => {
                let mut out = MixedField::new();
                for op in self.components() {
                    if let Some(f) = phi.get(op.source) {
                        out.insert(compiled(op).apply(f));
                    }
                }
                out
            }
        }
    }
}

impl FromStr for CompositeOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CompositeOp::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown composite operator '{s}'")))
    }
}

/// `((D f, g), (f, z g))` for the arrow `op` and its reversed counterpart.
pub fn adjoint_pair_check(op: ComponentOp, f: &TensorField, g: &TensorField) -> Result<(Rational, Rational)> {
    let d = if op.kind == OpKind::Differential { op } else { op.adjoint_partner() };
    let z = d.adjoint_partner();
    let lhs = d.apply(f)?.inner(g)?;
    let rhs = f.inner(&z.apply(g)?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Poly;

    fn z12_power(m: u32) -> Poly {
        let mut p = Poly::one();
        for _ in 0..m {
            p = &p * &Poly::z_upper(0, 1);
        }
        p
    }

    #[test]
    fn table_is_closed_under_transpose() {
        assert_eq!(formula_table().len(), 18);
        for f in formula_table() {
            let t = f.transpose();
            assert!(formula_table().contains(&t), "{}", f.render("nabla"));
            assert_eq!(t.transpose(), *f);
        }
        assert_eq!(ComponentOp::all().len(), 36);
    }

    #[test]
    fn names_round_trip() {
        for op in ComponentOp::all() {
            let s = op.to_string();
            assert_eq!(s.parse::<ComponentOp>().unwrap(), op);
        }
        assert!("D^300_322".parse::<ComponentOp>().is_err());
        for c in CompositeOp::ALL {
            assert_eq!(c.label().parse::<CompositeOp>().unwrap(), c);
        }
    }

    #[test]
    fn z_300_311_on_box_one() {
        for m in 0..3 {
            let f1 = TensorField::from_product(S300, &z12_power(m), &S300.hwv());
            let got = ComponentOp::z(S300, S311).apply(&f1).unwrap();
            // (z12)^m z^{1a} delta^1_b delta^1_c
            let expect = TensorField::from_fn(S311, |u, l| {
                if l == [0, 0] {
                    &z12_power(m) * &Poly::z_upper(0, u[0])
                } else {
                    Poly::zero()
                }
            });
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn gcr_component_counts() {
        assert_eq!(gcr_targets(S311), vec![S322, S210, S300]);
        let f = TensorField::from_product(S300, &Poly::one(), &S300.hwv());
        assert!(gcr(S300, &f).unwrap().iter().all(TensorField::is_zero));
        assert!(gcr(S311, &f).is_err());
    }

    #[test]
    fn composite_supports() {
        let f = TensorField::from_product(S300, &Poly::z_upper(2, 3), &S300.hwv());
        let out = CompositeOp::DPlusMinus.apply(&MixedField::single(f.clone()));
        assert_eq!(out.parts().map(|p| p.shape()).collect::<Vec<_>>(), vec![S311]);
        assert_eq!(out.component(S311), ComponentOp::d(S300, S311).apply(&f).unwrap());
        let g = TensorField::from_product(S111, &Poly::z_upper(0, 2), &S111.hwv());
        assert!(CompositeOp::DUpperPlus.apply(&MixedField::single(g)).is_zero());
    }
}
