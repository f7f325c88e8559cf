//! Fischer decomposition diagrams of the isotypic components: generation,
//! transposition and verification on highest weight vectors.

use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde_json::{json, Value};

use super::{assemble, hwv_space, isotypic_multiplicity, keyed, rank, SparseVec};
use crate::error::{Error, Result};
use crate::gcr::{compiled, formula_table, ComponentOp, CompositeOp, MixedField};
use crate::par;
use crate::rep::HighestWeight;
use crate::tensor::{TensorField, ValueShape, ValueShape::*};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramId {
    D1,
    D2,
    D3,
    D4,
    D5a,
    D5b,
    D6a,
    D6b,
}

impl DiagramId {
    pub const ALL: [DiagramId; 8] =
        [DiagramId::D1, DiagramId::D2, DiagramId::D3, DiagramId::D4, DiagramId::D5a, DiagramId::D5b, DiagramId::D6a, DiagramId::D6b];

    pub fn name(self) -> &'static str {
        match self {
            DiagramId::D1 => "1",
            DiagramId::D2 => "2",
            DiagramId::D3 => "3",
            DiagramId::D4 => "4",
            DiagramId::D5a => "5a",
            DiagramId::D5b => "5b",
            DiagramId::D6a => "6a",
            DiagramId::D6b => "6b",
        }
    }

    pub fn dual(self) -> DiagramId {
        match self {
            DiagramId::D1 => DiagramId::D4,
            DiagramId::D4 => DiagramId::D1,
            DiagramId::D2 => DiagramId::D3,
            DiagramId::D3 => DiagramId::D2,
            DiagramId::D5a => DiagramId::D6a,
            DiagramId::D6a => DiagramId::D5a,
            DiagramId::D5b => DiagramId::D6b,
            DiagramId::D6b => DiagramId::D5b,
        }
    }

    /// Diagrams built directly; the others are transposes of these.
    pub fn is_primal(self) -> bool {
        matches!(self, DiagramId::D1 | DiagramId::D2 | DiagramId::D5a | DiagramId::D5b)
    }

    /// Isotypic label; the last two diagrams do not depend on `m`.
    pub fn label(self, m: u32) -> HighestWeight {
        let m = m as i64;
        let t = match self {
            DiagramId::D1 => [m + 3, m, 0],
            DiagramId::D2 => [m + 3, m + 1, 1],
            DiagramId::D3 => [m + 3, m + 2, 2],
            DiagramId::D4 => [m + 3, m + 3, 3],
            DiagramId::D5a => [m + 2, m + 2, 1],
            DiagramId::D5b => [1, 1, 1],
            DiagramId::D6a => [m + 2, m + 1, 0],
            DiagramId::D6b => [1, 0, 0],
        };
        HighestWeight([t[0], t[1], t[2], 0])
    }

    /// Homogeneity of the first column.
    pub fn base_degree(self, m: u32) -> u32 {
        match self {
            DiagramId::D5b | DiagramId::D6b => 0,
            _ => m,
        }
    }
}

impl fmt::Display for DiagramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DiagramId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DiagramId::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown diagram '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub shape: ValueShape,
    pub degree: u32,
    pub multiplicity: u64,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowOp {
    /// A multiplication component; its inverse is the adjoint differential one.
    Z(ComponentOp),
    /// Multiplication by `r^2`; its inverse is the Laplacian.
    R2,
}

impl ArrowOp {
    pub fn forward(self, f: &TensorField) -> TensorField {
        match self {
            ArrowOp::Z(op) => compiled(op).apply(f),
            ArrowOp::R2 => f.mul_r2(),
        }
    }

    pub fn inverse(self, f: &TensorField) -> TensorField {
        match self {
            ArrowOp::Z(op) => compiled(op.adjoint_partner()).apply(f),
            ArrowOp::R2 => f.laplacian(),
        }
    }

    fn transpose(self) -> ArrowOp {
        match self {
            ArrowOp::Z(op) => ArrowOp::Z(ComponentOp::z(op.source.dual(), op.target.dual())),
            ArrowOp::R2 => ArrowOp::R2,
        }
    }
}

impl fmt::Display for ArrowOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowOp::Z(op) => write!(f, "{op}"),
            ArrowOp::R2 => f.write_str("r2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arrow {
    pub op: ArrowOp,
    pub source: usize,
    pub target: usize,
    /// Drawn explicitly in the published diagram.
    pub declared: bool,
}

/// Box with the multiplicity the diagram assigns to it.
#[derive(Clone, Debug, PartialEq)]
pub struct DeclaredBox {
    pub label: String,
    pub shape: ValueShape,
    pub degree: u32,
    pub multiplicity: u64,
}

/// `op` maps the harmonic vector of `source` to a nonzero harmonic field
/// with a component in `target_shape`.
#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub op: CompositeOp,
    pub source: usize,
    pub target_shape: ValueShape,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramSpec {
    pub id: DiagramId,
    pub m: u32,
    pub depth: u32,
    pub mu: HighestWeight,
    pub nodes: Vec<Node>,
    pub arrows: Vec<Arrow>,
    pub boxes: Vec<DeclaredBox>,
    pub claims: Vec<Claim>,
}

type BoxRow = (&'static str, ValueShape, u32, u64);

fn box_table(id: DiagramId) -> Vec<BoxRow> {
    match id {
        DiagramId::D1 => vec![("1", S300, 0, 1), ("2", S311, 1, 1), ("3", S322, 2, 1), ("4", S333, 3, 1)],
        DiagramId::D2 => vec![
            ("1", S311, 0, 1),
            ("2", S300, 1, 1),
            ("3", S322, 1, 1),
            ("4", S210, 1, 1),
            ("5/6", S311, 2, 2),
            ("7", S333, 2, 1),
            ("8", S221, 2, 1),
            ("9/10", S322, 3, 2),
        ],
        DiagramId::D5b => vec![("1", S111, 0, 1), ("2", S100, 1, 1)],
        _ => vec![],
    }
}

/// Arrows named in the proofs, as `(operator, source box, target box)`.
fn declared_arrows(id: DiagramId) -> Vec<(ArrowOp, &'static str, &'static str)> {
    let z = |s, t| ArrowOp::Z(ComponentOp::z(s, t));
    match id {
        DiagramId::D1 => vec![(z(S300, S311), "1", "2"), (z(S311, S322), "2", "3"), (z(S322, S333), "3", "4")],
        DiagramId::D2 => vec![
            (z(S311, S300), "1", "2"),
            (z(S311, S322), "1", "3"),
            (z(S311, S210), "1", "4"),
            (z(S300, S311), "2", "5/6"),
            (z(S322, S311), "3", "5/6"),
            (z(S210, S311), "4", "5/6"),
            (ArrowOp::R2, "1", "5/6"),
            (z(S322, S333), "3", "7"),
            (z(S322, S221), "3", "8"),
            (z(S333, S322), "7", "9/10"),
            (z(S221, S322), "8", "9/10"),
            (ArrowOp::R2, "3", "9/10"),
        ],
        DiagramId::D5b => vec![(z(S111, S100), "1", "2")],
        _ => vec![],
    }
}

fn claims_table(id: DiagramId) -> Vec<(CompositeOp, &'static str, ValueShape)> {
    match id {
        DiagramId::D2 => vec![(CompositeOp::DMinusPlus, "5/6", S300), (CompositeOp::DMinusPlus, "9/10", S311)],
        _ => vec![],
    }
}

fn dual_composite(op: CompositeOp) -> CompositeOp {
    use CompositeOp::*;
    match op {
        DPlusMinus => DMinusPlus,
        DMinusPlus => DPlusMinus,
        DUpperMinus => DLowerMinus,
        DLowerMinus => DUpperMinus,
        DUpperPlus => DLowerPlus,
        DLowerPlus => DUpperPlus,
        ZPlusMinus => ZMinusPlus,
        ZMinusPlus => ZPlusMinus,
        ZUpperMinus => ZLowerMinus,
        ZLowerMinus => ZUpperMinus,
        ZUpperPlus => ZLowerPlus,
        ZLowerPlus => ZUpperPlus,
        other => other,
    }
}

impl DiagramSpec {
    /// Nodes from the tensor product rules, every candidate arrow between
    /// them, and the boxes and arrows drawn in the published diagram.
    pub fn generate(id: DiagramId, m: u32, depth: u32) -> DiagramSpec {
        if !id.is_primal() {
            return DiagramSpec::generate(id.dual(), m, depth).transpose();
        }
        let mu = id.label(m);
        let base = id.base_degree(m);
        let table = box_table(id);
        let boxes: Vec<DeclaredBox> = table
            .iter()
            .map(|&(label, shape, off, mult)| DeclaredBox { label: label.into(), shape, degree: base + off, multiplicity: mult })
            .filter(|b| b.degree <= depth)
            .collect();
        let mut nodes = Vec::new();
        for shape in ValueShape::V {
            for h in 0..=depth {
                let mult = isotypic_multiplicity(shape, h, mu);
                if mult > 0 {
                    let label = boxes
                        .iter()
                        .find(|b| b.shape == shape && b.degree == h)
                        .map(|b| b.label.clone())
                        .unwrap_or_else(|| format!("{shape}@{h}"));
                    nodes.push(Node { shape, degree: h, multiplicity: mult, label });
                }
            }
        }
        nodes.sort_by_key(|n| (n.degree, n.shape));
        let find = |shape: ValueShape, h: u32| nodes.iter().position(|n| n.shape == shape && n.degree == h);
        let declared = declared_arrows(id);
        let mut arrows = Vec::new();
        for (s, src) in nodes.iter().enumerate() {
            let mut ops: Vec<(ArrowOp, u32)> = formula_table()
                .iter()
                .filter(|f| f.source == src.shape)
                .map(|f| (ArrowOp::Z(ComponentOp::z(f.source, f.target)), src.degree + 1))
                .collect();
            ops.push((ArrowOp::R2, src.degree + 2));
            for (op, h) in ops {
                let tshape = match op {
                    ArrowOp::Z(c) => c.target,
                    ArrowOp::R2 => src.shape,
                };
                if let Some(t) = find(tshape, h) {
                    let is_declared =
                        declared.iter().any(|(dop, a, b)| *dop == op && nodes[s].label == *a && nodes[t].label == *b);
                    arrows.push(Arrow { op, source: s, target: t, declared: is_declared });
                }
            }
        }
        let claims = claims_table(id)
            .into_iter()
            .filter_map(|(op, label, target_shape)| {
                nodes.iter().position(|n| n.label == label).map(|source| Claim { op, source, target_shape })
            })
            .collect();
        DiagramSpec { id, m, depth, mu, nodes, arrows, boxes, claims }
    }

    /// Dual diagram: dual modules, dual operators, same boxes and columns.
    pub fn transpose(&self) -> DiagramSpec {
        DiagramSpec {
            id: self.id.dual(),
            m: self.m,
            depth: self.depth,
            mu: self.mu.dual(),
            nodes: self.nodes.iter().map(|n| Node { shape: n.shape.dual(), ..n.clone() }).collect(),
            arrows: self.arrows.iter().map(|a| Arrow { op: a.op.transpose(), ..a.clone() }).collect(),
            boxes: self.boxes.iter().map(|b| DeclaredBox { shape: b.shape.dual(), ..b.clone() }).collect(),
            claims: self
                .claims
                .iter()
                .map(|c| Claim { op: dual_composite(c.op), source: c.source, target_shape: c.target_shape.dual() })
                .collect(),
        }
    }

    pub fn node_name(&self, i: usize) -> String {
        let n = &self.nodes[i];
        format!("[{}] ({}, h={})", n.label, n.shape, n.degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    NodeMultiplicity,
    ArrowIsomorphism,
    SumIsomorphism,
    Claim,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::NodeMultiplicity => "node-multiplicity",
            CheckKind::ArrowIsomorphism => "arrow-isomorphism",
            CheckKind::SumIsomorphism => "sum-isomorphism",
            CheckKind::Claim => "claim",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub kind: CheckKind,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

/// Status of an arrow between multiplicity one nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowStatus {
    Isomorphism,
    Absent,
    Failed,
    /// Not between multiplicity one nodes.
    Unchecked,
}

#[derive(Clone, Debug)]
pub struct DiagramReport {
    pub spec: DiagramSpec,
    pub hwv_dims: Vec<usize>,
    pub arrow_status: Vec<ArrowStatus>,
    pub checks: Vec<CheckResult>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, kind: CheckKind) -> (usize, usize) {
        let of_kind: Vec<&CheckResult> = self.checks.iter().filter(|c| c.kind == kind).collect();
        (of_kind.iter().filter(|c| c.passed).count(), of_kind.len())
    }

    pub fn to_json(&self) -> Value {
        let s = &self.spec;
        json!({
            "diagram": s.id.name(),
            "m": s.m,
            "depth": s.depth,
            "mu": s.mu.normalize().0,
            "passed": self.passed(),
            "nodes": s.nodes.iter().zip(&self.hwv_dims).map(|(n, d)| json!({
                "label": n.label, "module": n.shape.tag(), "degree": n.degree,
                "multiplicity": n.multiplicity, "hwv_dim": d,
            })).collect::<Vec<_>>(),
            "arrows": s.arrows.iter().zip(&self.arrow_status).map(|(a, st)| json!({
                "op": a.op.to_string(), "source": s.nodes[a.source].label, "target": s.nodes[a.target].label,
                "declared": a.declared, "status": format!("{st:?}").to_lowercase(),
            })).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(|c| json!({
                "kind": c.kind.name(), "subject": c.subject, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let s = &self.spec;
        let mut out = format!("diagram {} mu={} m={} depth={}\n", s.id, s.mu, s.m, s.depth);
        for (i, d) in self.hwv_dims.iter().enumerate() {
            out.push_str(&format!("  node {} mult={} hwv_dim={}\n", s.node_name(i), s.nodes[i].multiplicity, d));
        }
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {tag} {:<18} {} {}\n", c.kind.name(), c.subject, c.detail));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }

    /// Graphviz rendering; failed checks are drawn in red.
    pub fn to_dot(&self) -> String {
        let s = &self.spec;
        let mut out = format!("digraph diagram_{} {{\n  rankdir=LR;\n  node [shape=box];\n", s.id.name());
        for (i, n) in s.nodes.iter().enumerate() {
            let ok = self.checks.iter().all(|c| c.passed || !(c.kind == CheckKind::NodeMultiplicity && c.subject == s.node_name(i)));
            out.push_str(&format!(
                "  n{i} [label=\"{}\\n({}) h={}\\nmult {}\"{}];\n",
                n.label,
                n.shape,
                n.degree,
                n.multiplicity,
                if ok { "" } else { ", color=red" }
            ));
        }
        for (a, st) in s.arrows.iter().zip(&self.arrow_status) {
            let style = match a.op {
                ArrowOp::R2 => "dotted",
                ArrowOp::Z(_) => "solid",
            };
            let color = match st {
                ArrowStatus::Isomorphism => "black",
                ArrowStatus::Failed => "red",
                ArrowStatus::Absent | ArrowStatus::Unchecked => "gray",
            };
            if *st == ArrowStatus::Absent {
                continue;
            }
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\", style={style}, color={color}];\n",
                a.source, a.target, a.op
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn is_nonzero(f: &TensorField) -> bool {
    !f.is_zero()
}

/// Harmonic part of a highest weight space, when it is one-dimensional.
fn harmonic_vector(space: &[TensorField]) -> Option<TensorField> {
    if space.is_empty() {
        return None;
    }
    let cols: Vec<SparseVec> = space.iter().map(|f| keyed(0, &f.laplacian())).collect();
    let ker = assemble(&cols).kernel();
    if ker.len() != 1 {
        return None;
    }
    let mut out = TensorField::zero(space[0].shape());
    for (f, c) in space.iter().zip(&ker[0]) {
        if !c.is_zero() {
            out.add_scaled(f, c);
        }
    }
    Some(out)
}

/// Checks (a)-(d) on highest weight vectors.
pub fn verify_diagram(spec: &DiagramSpec) -> DiagramReport {
    let mu = spec.mu;
    let spaces: Vec<Vec<TensorField>> = par::map(&spec.nodes, |n| hwv_space(n.shape, n.degree, mu));
    let mut checks = Vec::new();

    for (i, n) in spec.nodes.iter().enumerate() {
        let combinatorial = isotypic_multiplicity(n.shape, n.degree, mu);
        let dim = spaces[i].len() as u64;
        checks.push(CheckResult {
            kind: CheckKind::NodeMultiplicity,
            subject: spec.node_name(i),
            passed: dim == n.multiplicity && combinatorial == n.multiplicity,
            detail: format!("declared {} combinatorial {} hwv {}", n.multiplicity, combinatorial, dim),
        });
    }
    for b in &spec.boxes {
        let found = spec.nodes.iter().position(|n| n.shape == b.shape && n.degree == b.degree);
        let got = found.map(|i| spaces[i].len() as u64).unwrap_or(0);
        checks.push(CheckResult {
            kind: CheckKind::NodeMultiplicity,
            subject: format!("box {} ({}, h={})", b.label, b.shape, b.degree),
            passed: got == b.multiplicity,
            detail: format!("expected {} found {}", b.multiplicity, got),
        });
    }

    let single = |i: usize| spaces[i].len() == 1 && spec.nodes[i].multiplicity == 1;
    let images: Vec<Option<(bool, bool)>> = par::map(&spec.arrows, |a| {
        if !single(a.source) || !single(a.target) {
            return None;
        }
        Some((is_nonzero(&a.op.forward(&spaces[a.source][0])), is_nonzero(&a.op.inverse(&spaces[a.target][0]))))
    });
    let mut arrow_status = Vec::new();
    for (a, img) in spec.arrows.iter().zip(&images) {
        let status = match img {
            None => ArrowStatus::Unchecked,
            Some((fwd, inv)) => {
                let ok = fwd == inv && (*fwd || !a.declared);
                checks.push(CheckResult {
                    kind: CheckKind::ArrowIsomorphism,
                    subject: format!("{} {} -> {}", a.op, spec.node_name(a.source), spec.node_name(a.target)),
                    passed: ok,
                    detail: format!("forward {} inverse {}{}", nz(*fwd), nz(*inv), if a.declared { " (drawn)" } else { "" }),
                });
                match (ok, fwd) {
                    (false, _) => ArrowStatus::Failed,
                    (true, true) => ArrowStatus::Isomorphism,
                    (true, false) => ArrowStatus::Absent,
                }
            }
        };
        arrow_status.push(status);
    }

    for (t, node) in spec.nodes.iter().enumerate() {
        if node.multiplicity != 2 || spaces[t].len() != 2 {
            continue;
        }
        let incoming: Vec<(&Arrow, TensorField)> = spec
            .arrows
            .iter()
            .filter(|a| a.target == t && single(a.source))
            .map(|a| (a, a.op.forward(&spaces[a.source][0])))
            .filter(|(_, img)| is_nonzero(img))
            .collect();
        for x in 0..incoming.len() {
            for y in x + 1..incoming.len() {
                let (a1, img1) = &incoming[x];
                let (a2, img2) = &incoming[y];
                if a1.source == a2.source {
                    continue;
                }
                let fwd = rank(&[keyed(0, img1), keyed(0, img2)]);
                let inv_cols: Vec<SparseVec> = spaces[t]
                    .iter()
                    .map(|b| {
                        let mut v = keyed(0, &a1.op.inverse(b));
                        v.extend(keyed(1, &a2.op.inverse(b)));
                        v
                    })
                    .collect();
                let inv = rank(&inv_cols);
                checks.push(CheckResult {
                    kind: CheckKind::SumIsomorphism,
                    subject: format!(
                        "{} + {} -> {}",
                        spec.node_name(a1.source),
                        spec.node_name(a2.source),
                        spec.node_name(t)
                    ),
                    passed: fwd == 2 && inv == 2,
                    detail: format!("{} + {}: rank {fwd}, inverse rank {inv}", a1.op, a2.op),
                });
            }
        }
    }

    for c in &spec.claims {
        let subject = format!("{} on harmonic part of {} has a {} component", c.op.label(), spec.node_name(c.source), c.target_shape);
        let (passed, detail) = match harmonic_vector(&spaces[c.source]) {
            None => (false, "harmonic part is not one-dimensional".to_string()),
            Some(h) => {
                let img = c.op.apply(&MixedField::single(h));
                let comp = img.component(c.target_shape);
                let others: Vec<String> = img.parts().filter(|f| !f.is_zero()).map(|f| f.shape().to_string()).collect();
                (
                    !comp.is_zero() && comp.laplacian().is_zero(),
                    format!("nonzero components: [{}]", others.join(", ")),
                )
            }
        };
        checks.push(CheckResult { kind: CheckKind::Claim, subject, passed, detail });
    }

    DiagramReport { spec: spec.clone(), hwv_dims: spaces.iter().map(Vec::len).collect(), arrow_status, checks }
}

fn nz(b: bool) -> &'static str {
    if b {
        "nonzero"
    } else {
        "zero"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_duals() {
        for d in DiagramId::ALL {
            assert_eq!(d.name().parse::<DiagramId>().unwrap(), d);
            assert_eq!(d.dual().dual(), d);
            assert_eq!(d.label(1).dual(), d.dual().label(1));
        }
    }

    #[test]
    fn diagram_one_small() {
        let spec = DiagramSpec::generate(DiagramId::D1, 0, 3);
        let labels: Vec<&str> = spec.nodes.iter().map(|n| n.label.as_str()).collect();
        assert!(labels.contains(&"1") && labels.contains(&"4"));
        let report = verify_diagram(&spec);
        assert!(report.passed(), "{}", report.to_text());
    }
}
