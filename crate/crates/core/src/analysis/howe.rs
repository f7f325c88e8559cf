//! Generation of an isotypic component from its lowest box by the invariant
//! operators, degree by degree.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{hwv_space, isotypic_multiplicity, keyed_mixed, rank, SparseVec};
use crate::gcr::{ComponentOp, CompositeOp, MixedField};
use crate::rep::{weyl_dim, HighestWeight};
use crate::tensor::{TensorField, ValueShape, ValueShape::*};

#[derive(Clone, Debug)]
pub struct DegreeLine {
    pub degree: u32,
    /// Dimension of the span of generated highest weight vectors.
    pub generated: usize,
    /// Sum of the multiplicities of `mu` over all value modules.
    pub multiplicity: u64,
}

#[derive(Clone, Debug)]
pub struct HoweReport {
    pub mu: HighestWeight,
    pub start_degree: u32,
    pub cutoff: u32,
    pub word_length: usize,
    pub lines: Vec<DegreeLine>,
}

impl HoweReport {
    pub fn saturated(&self) -> bool {
        self.lines.iter().all(|l| l.generated as u64 == l.multiplicity)
    }

    pub fn to_json(&self) -> Value {
        let d = weyl_dim(self.mu);
        json!({
            "mu": self.mu.normalize().0,
            "start_degree": self.start_degree,
            "cutoff": self.cutoff,
            "word_length": self.word_length,
            "saturated": self.saturated(),
            "degrees": self.lines.iter().map(|l| json!({
                "degree": l.degree,
                "generated": l.generated as u64 * d,
                "expected": l.multiplicity * d,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Generators used for the words: all invariant composites except `E`,
/// which acts by a scalar on homogeneous fields.
pub fn generators() -> Vec<CompositeOp> {
    CompositeOp::ALL.into_iter().filter(|c| *c != CompositeOp::Euler).collect()
}

fn degree_of(phi: &MixedField) -> Option<u32> {
    phi.parts().find_map(|f| f.degrees().first().copied())
}

/// Span of highest weight vectors of weight `mu` reachable from the lowest
/// nonzero degree by words of length at most `word_length`. Because the
/// generators commute with the group, saturation of highest weight vectors
/// at a degree is saturation of the whole `multiplicity x dim mu` space.
pub fn howe_generation_check(mu: HighestWeight, cutoff: u32, word_length: usize) -> HoweReport {
    let ceiling = cutoff + 2;
    let mult = |h: u32| -> u64 { ValueShape::V.iter().map(|&s| isotypic_multiplicity(s, h, mu)).sum() };
    let start_degree = (0..=ceiling).find(|&h| mult(h) > 0).unwrap_or(ceiling + 1);
    let mut spans: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
    let mut frontier: Vec<MixedField> = Vec::new();
    if start_degree <= ceiling {
        for s in ValueShape::V {
            for f in hwv_space(s, start_degree, mu) {
                let phi = MixedField::single(f);
                if try_add(&mut spans, start_degree, &phi) {
                    frontier.push(phi);
                }
            }
        }
    }
    let gens = generators();
    for _ in 0..word_length {
        let mut next = Vec::new();
        for phi in &frontier {
            for g in &gens {
                let img = g.apply(phi);
                if img.is_zero() {
                    continue;
                }
                let Some(h) = degree_of(&img) else { continue };
                if h <= ceiling && try_add(&mut spans, h, &img) {
                    next.push(img);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let lines = (start_degree..=cutoff)
        .map(|h| DegreeLine { degree: h, generated: spans.get(&h).map_or(0, Vec::len), multiplicity: mult(h) })
        .collect();
    HoweReport { mu, start_degree, cutoff, word_length, lines }
}

fn try_add(spans: &mut BTreeMap<u32, Vec<SparseVec>>, h: u32, phi: &MixedField) -> bool {
    let span = spans.entry(h).or_default();
    let v = keyed_mixed(phi);
    let before = span.len();
    span.push(v);
    if rank(span) > before {
        true
    } else {
        span.pop();
        false
    }
}

/// The two-step composites `311 -> 322 -> 221` plus `311 -> 210 -> 221`:
/// the multiplication form applied to the lowest box of the second diagram
/// and the differential form applied to the highest weight vector of box 8.
pub fn witness_box8(m: u32) -> (TensorField, TensorField) {
    let f1 = super::catalog::hwv_catalog(super::diagram::DiagramId::D2, 1, m).expect("catalog box");
    let z = |s, t, f: &TensorField| ComponentOp::z(s, t).apply(f).expect("shapes match");
    let d = |s, t, f: &TensorField| ComponentOp::d(s, t).apply(f).expect("shapes match");
    let up = z(S322, S221, &z(S311, S322, &f1)).add(&z(S210, S221, &z(S311, S210, &f1))).expect("same shape");
    let f8 = super::catalog::hwv_catalog(super::diagram::DiagramId::D2, 8, m).expect("catalog box");
    let down = d(S322, S311, &d(S221, S322, &f8)).add(&d(S210, S311, &d(S221, S210, &f8))).expect("same shape");
    (up, down)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_component_saturates() {
        let r = howe_generation_check(HighestWeight([1, 0, 0, 0]), 2, 6);
        assert!(r.saturated(), "{r:?}");
    }
}
