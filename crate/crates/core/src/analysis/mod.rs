//! Homogeneous field spaces split into weight blocks, GCR kernels, monomial
//! bases, highest weight vectors and the verifications built on them.
//!
//! Every operator used here commutes with the gl(4) action, so all linear
//! algebra runs one weight block at a time.

pub mod catalog;
pub mod diagram;
pub mod howe;

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::error::Result;
use crate::gcr::{compiled, gcr_targets, ComponentOp, MixedField};
use crate::linalg::Matrix;
use crate::par;
use crate::poly::{monomial_weight, monomials_of_degree, Monomial};
use crate::rep::{gt_patterns, pol_multiplicity, GtPattern, HighestWeight};
use crate::scalar::Rational;
use crate::tensor::{add_weights, module, normalize_weight, Poly, TensorField, ValueShape};

pub use catalog::{fischer_identities, hwv_catalog, IdentityCheck};
pub use diagram::{verify_diagram, DiagramId, DiagramReport, DiagramSpec};
pub use howe::{howe_generation_check, witness_box8, HoweReport};

/// Coordinate key `(tag, slot, monomial)`; the tag separates stacked outputs.
pub type Key = (usize, usize, Monomial);

pub type SparseVec = Vec<(Key, Rational)>;

pub fn keyed(tag: usize, f: &TensorField) -> SparseVec {
    f.coordinates().map(|(s, m, c)| ((tag, s, *m), c.clone())).collect()
}

pub fn keyed_mixed(phi: &MixedField) -> SparseVec {
    phi.parts().flat_map(|f| keyed(f.shape() as usize, f)).collect()
}

/// Matrix with the given sparse columns over the union of their keys.
pub fn assemble(columns: &[SparseVec]) -> Matrix {
    let mut index: BTreeMap<Key, usize> = BTreeMap::new();
    for col in columns {
        for (k, _) in col {
            let n = index.len();
            index.entry(*k).or_insert(n);
        }
    }
    let sparse: Vec<Vec<(usize, Rational)>> =
        columns.iter().map(|c| c.iter().map(|(k, v)| (index[k], v.clone())).collect()).collect();
    Matrix::from_sparse_columns(index.len(), &sparse)
}

pub fn rank(columns: &[SparseVec]) -> usize {
    if columns.is_empty() {
        return 0;
    }
    assemble(columns).rank()
}

/// One basis element `monomial (x) basis vector` of `P_h(shape)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockElement {
    pub monomial: Monomial,
    pub basis: usize,
}

#[derive(Clone, Debug)]
pub struct WeightBlock {
    /// Normalized gl(4) weight shared by the elements.
    pub weight: [i64; 4],
    pub elements: Vec<BlockElement>,
}

/// `P_h(shape)`: homogeneous polynomials of degree `h` with values in `shape`.
#[derive(Clone, Debug)]
pub struct HomogeneousComponent {
    pub shape: ValueShape,
    pub degree: u32,
    pub blocks: Vec<WeightBlock>,
}

impl HomogeneousComponent {
    pub fn new(shape: ValueShape, degree: u32) -> Self {
        let basis = module(shape).basis();
        let mut groups: BTreeMap<[i64; 4], Vec<BlockElement>> = BTreeMap::new();
        for m in monomials_of_degree(degree) {
            let mw = monomial_weight(&m);
            for (i, b) in basis.iter().enumerate() {
                let w = normalize_weight(add_weights(mw, b.weight));
                groups.entry(w).or_default().push(BlockElement { monomial: m, basis: i });
            }
        }
        let blocks = groups.into_iter().rev().map(|(weight, elements)| WeightBlock { weight, elements }).collect();
        HomogeneousComponent { shape, degree, blocks }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.elements.len()).sum()
    }

    pub fn block(&self, weight: [i64; 4]) -> Option<&WeightBlock> {
        let w = normalize_weight(weight);
        self.blocks.iter().find(|b| b.weight == w)
    }

    pub fn elements(&self) -> impl Iterator<Item = &BlockElement> {
        self.blocks.iter().flat_map(|b| b.elements.iter())
    }

    pub fn field(&self, e: &BlockElement) -> TensorField {
        let b = &module(self.shape).basis()[e.basis];
        TensorField::from_product(self.shape, &Poly::term(e.monomial, Rational::one()), &b.entries)
    }

    /// `sum_i coeffs[i] * field(elements[i])`.
    pub fn combine(&self, elements: &[BlockElement], coeffs: &[Rational]) -> TensorField {
        let mut out = TensorField::zero(self.shape);
        for (e, c) in elements.iter().zip(coeffs) {
            if !c.is_zero() {
                out.add_scaled(&self.field(e), c);
            }
        }
        out
    }

    /// Coefficient of `field(e)` in a field of this component.
    pub fn coordinate(&self, f: &TensorField, e: &BlockElement) -> Rational {
        let pivot = module(self.shape).basis()[e.basis].pivot;
        f.entry(pivot).coeff(&e.monomial)
    }
}

fn gcr_columns(comp: &HomogeneousComponent, block: &WeightBlock) -> Vec<SparseVec> {
    let targets = gcr_targets(comp.shape);
    block
        .elements
        .iter()
        .map(|e| {
            let f = comp.field(e);
            targets
                .iter()
                .enumerate()
                .flat_map(|(t, &tgt)| keyed(t, &compiled(ComponentOp::d(comp.shape, tgt)).apply(&f)))
                .collect()
        })
        .collect()
}

/// Basis of `M_m(shape)`: the kernel of every GCR component on `P_m(shape)`.
pub fn solution_space_kernel(shape: ValueShape, m: u32) -> Vec<TensorField> {
    let comp = HomogeneousComponent::new(shape, m);
    par::map(&comp.blocks, |block| {
        let cols = gcr_columns(&comp, block);
        let mat = assemble(&cols);
        mat.kernel().iter().map(|x| comp.combine(&block.elements, x)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// `dim M_m(shape)` from block ranks.
pub fn kernel_dim(shape: ValueShape, m: u32) -> usize {
    let comp = HomogeneousComponent::new(shape, m);
    par::map(&comp.blocks, |block| block.elements.len() - rank(&gcr_columns(&comp, block))).into_iter().sum()
}

/// Highest weight of `M_m(shape)`: `(m + l1, m + l2, l3)`.
pub fn solution_label(shape: ValueShape, m: u32) -> HighestWeight {
    let l = shape.label();
    let m = m as i64;
    HighestWeight([m + l[0], m + l[1], l[2], 0])
}

/// `(z^{12})^m`.
pub fn z12_power(m: u32) -> Poly {
    let mut mono = [0u8; 6];
    mono[0] = m as u8;
    Poly::term(mono, Rational::one())
}

/// Highest weight vector `(z^{12})^m v` of `M_m(shape)`.
pub fn solution_seed(shape: ValueShape, m: u32) -> TensorField {
    TensorField::from_product(shape, &z12_power(m), &shape.hwv())
}

/// Lowering word of a pattern as `((i, j), exponent)` in application order;
/// `(i, j)` are 0-based arguments of [`TensorField::sl4`].
pub fn lowering_word(p: &GtPattern) -> [((usize, usize), i64); 6] {
    let e = |i, k| p.entry(i, k);
    [
        ((2, 3), e(3, 4) - e(3, 3)),
        ((1, 3), e(2, 4) - e(2, 3)),
        ((0, 3), e(1, 4) - e(1, 3)),
        ((1, 2), e(2, 3) - e(2, 2)),
        ((0, 2), e(1, 3) - e(1, 2)),
        ((0, 1), e(1, 2) - e(1, 1)),
    ]
}

/// One field per Gelfand-Tsetlin pattern of the solution label, obtained by
/// lowering the seed.
pub fn monomial_basis(shape: ValueShape, m: u32) -> Result<Vec<(GtPattern, TensorField)>> {
    let seed = solution_seed(shape, m);
    let patterns = gt_patterns(solution_label(shape, m));
    let mut cache: HashMap<Vec<i64>, TensorField> = HashMap::new();
    cache.insert(Vec::new(), seed);
    let mut out = Vec::with_capacity(patterns.len());
    for p in patterns {
        let word = lowering_word(&p);
        let mut prefix: Vec<i64> = Vec::new();
        let mut cur = cache[&prefix].clone();
        for ((i, j), n) in word {
            for _ in 0..n {
                prefix.push((i * 4 + j) as i64);
                if let Some(f) = cache.get(&prefix) {
                    cur = f.clone();
                } else {
                    cur = cur.sl4(i, j)?;
                    cache.insert(prefix.clone(), cur.clone());
                }
            }
        }
        out.push((p, cur));
    }
    Ok(out)
}

/// Multiplicity of `mu` in `P_h(shape)`, from the tensor product rules.
pub fn isotypic_multiplicity(shape: ValueShape, h: u32, mu: HighestWeight) -> u64 {
    pol_multiplicity(HighestWeight::of_shape(shape), h as i64, mu)
}

/// Basis of the highest weight vectors of weight `mu` in `P_h(shape)`.
pub fn hwv_space(shape: ValueShape, h: u32, mu: HighestWeight) -> Vec<TensorField> {
    let comp = HomogeneousComponent::new(shape, h);
    let Some(block) = comp.block(mu.normalize().0) else {
        return Vec::new();
    };
    let cols: Vec<SparseVec> = par::map(&block.elements, |e| {
        let f = comp.field(e);
        [(1, 0), (2, 1), (3, 2)]
            .iter()
            .enumerate()
            .flat_map(|(t, &(i, j))| keyed(t, &f.sl4(i, j).expect("root vector")))
            .collect()
    });
    assemble(&cols).kernel().iter().map(|x| comp.combine(&block.elements, x)).collect()
}

/// Exact matrix of a component operator from `P_h(source)` to `P_{h+shift}(target)`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub op: ComponentOp,
    pub source_degree: u32,
    pub cols: Vec<BlockElement>,
    pub rows: Vec<BlockElement>,
    pub matrix: Matrix,
}

pub fn operator_matrix(op: ComponentOp, degree: u32) -> OperatorMatrix {
    let src = HomogeneousComponent::new(op.source, degree);
    let cols: Vec<BlockElement> = src.elements().cloned().collect();
    let target_degree = degree as i64 + op.degree_shift() as i64;
    let rows: Vec<BlockElement> = if target_degree < 0 {
        Vec::new()
    } else {
        HomogeneousComponent::new(op.target, target_degree as u32).elements().cloned().collect()
    };
    let tgt = HomogeneousComponent { shape: op.target, degree: target_degree.max(0) as u32, blocks: Vec::new() };
    let mut matrix = Matrix::zeros(rows.len(), cols.len());
    let row_index: HashMap<(Monomial, usize), usize> =
        rows.iter().enumerate().map(|(i, e)| ((e.monomial, e.basis), i)).collect();
    let images = par::map(&cols, |e| compiled(op).apply(&src.field(e)));
    for (j, img) in images.iter().enumerate() {
        for e in rows.iter() {
            let c = tgt.coordinate(img, e);
            if !c.is_zero() {
                matrix.set(row_index[&(e.monomial, e.basis)], j, c);
            }
        }
    }
    OperatorMatrix { op, source_degree: degree, cols, rows, matrix }
}

/// `c` with `a = c b`, read off one coordinate and then confirmed on all.
pub fn proportionality(a: &TensorField, b: &TensorField) -> Option<Rational> {
    if a.shape() != b.shape() {
        return None;
    }
    if b.is_zero() {
        return a.is_zero().then(Rational::zero);
    }
    let (slot, mono, cb) = b.coordinates().next()?;
    let c = a.entry(slot).coeff(mono) / cb;
    (b.scale(&c) == *a).then_some(c)
}

/// `c` with `a = c b` for mixed fields.
pub fn proportionality_mixed(a: &MixedField, b: &MixedField) -> Option<Rational> {
    let bv = keyed_mixed(b);
    let Some(((tag, slot, mono), cb)) = bv.first() else {
        return a.is_zero().then(Rational::zero);
    };
    let av: BTreeMap<Key, Rational> = keyed_mixed(a).into_iter().collect();
    let c = av.get(&(*tag, *slot, *mono)).cloned().unwrap_or_else(Rational::zero) / cb;
    let mut scaled = b.clone();
    scaled = scaled.map(|f| f.scale(&c));
    (keyed_mixed(&scaled).into_iter().collect::<BTreeMap<_, _>>() == av).then_some(c)
}
