//! Explicit highest weight vectors of the boxes of the first two diagrams and
//! the identities relating them.
//!
//! The identities are stated for the Plucker form `q = r^2 / 2` and for
//! `Delta / 2`; this pair satisfies `[Delta/2, q] = E + 3`.

use num::Zero;

use super::diagram::DiagramId;
use super::{proportionality, z12_power};
use crate::error::{Error, Result};
use crate::gcr::ComponentOp;
use crate::poly::Polynomial;
use crate::scalar::{int, rat};
use crate::tensor::{Poly, TensorField, ValueShape, ValueShape::*};

const ONE: usize = 0;
const FOUR: usize = 3;

fn delta(i: usize, j: usize) -> Poly {
    if i == j {
        Poly::one()
    } else {
        Poly::zero()
    }
}

fn zu(a: usize, b: usize) -> Poly {
    Poly::z_upper(a, b)
}

fn zl(a: usize, b: usize) -> Poly {
    Poly::z_lower(a, b)
}

/// `z12 z34 - z13 z24 + z14 z23`.
pub fn plucker_form() -> Poly {
    Poly::r2().scale(&rat(1, 2))
}

/// `Delta / 2`.
pub fn half_laplacian(f: &TensorField) -> TensorField {
    f.laplacian().scale(&rat(1, 2))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Average of `f` over permutations of `idx`, signed when `alternate`.
fn average(idx: &[usize], alternate: bool, f: impl Fn(&[usize]) -> Poly) -> Poly {
    let perms = permutations(idx.len());
    let n = perms.len() as i64;
    let mut acc = Poly::zero();
    for (p, s) in perms {
        let v: Vec<usize> = p.iter().map(|&i| idx[i]).collect();
        let c = if alternate { int(s) } else { int(1) };
        acc.add_scaled(&f(&v), &c);
    }
    acc.scale(&rat(1, n))
}

fn sym(idx: &[usize], f: impl Fn(&[usize]) -> Poly) -> Poly {
    average(idx, false, f)
}

fn alt(idx: &[usize], f: impl Fn(&[usize]) -> Poly) -> Poly {
    average(idx, true, f)
}

fn with_power(m: u32, shape: ValueShape, f: impl Fn(&[usize], &[usize]) -> Poly) -> TensorField {
    TensorField::from_fn(shape, f).mul_poly(&z12_power(m))
}

/// `z^{1a} z_{4(b} delta^1_{c)} (z^{12})^m`.
pub fn aux_x(m: u32) -> TensorField {
    with_power(m, S311, |u, l| &zu(ONE, u[0]) * &sym(l, |v| &zl(FOUR, v[0]) * &delta(ONE, v[1])))
}

/// `z^{1(a} z^{b)1} z_{4c} (z^{12})^m`.
pub fn aux_y(m: u32) -> TensorField {
    with_power(m, S322, |u, l| &sym(u, |v| &zu(ONE, v[0]) * &zu(v[1], ONE)) * &zl(FOUR, l[0]))
}

fn diagram_one(b: usize, m: u32) -> Option<TensorField> {
    Some(match b {
        1 => with_power(m, S300, |_, l| &(&delta(ONE, l[0]) * &delta(ONE, l[1])) * &delta(ONE, l[2])),
        2 => with_power(m, S311, |u, l| &(&zu(ONE, u[0]) * &delta(ONE, l[0])) * &delta(ONE, l[1])),
        3 => with_power(m, S322, |u, l| &(&zu(ONE, u[0]) * &zu(ONE, u[1])) * &delta(ONE, l[0])),
        4 => with_power(m, S333, |u, _| &(&zu(ONE, u[0]) * &zu(ONE, u[1])) * &zu(ONE, u[2])),
        _ => return None,
    })
}

fn diagram_two(b: usize, m: u32) -> Option<TensorField> {
    let q = plucker_form();
    Some(match b {
        1 => with_power(m, S311, |u, l| &(&delta(ONE, l[0]) * &delta(ONE, l[1])) * &delta(u[0], FOUR)),
        2 => with_power(m, S300, |_, l| sym(l, |v| &(&zl(FOUR, v[0]) * &delta(ONE, v[1])) * &delta(ONE, v[2]))),
        3 => with_power(m, S322, |u, l| &sym(u, |v| &zu(ONE, v[0]) * &delta(v[1], FOUR)) * &delta(ONE, l[0])),
        4 => with_power(m, S210, |u, l| &alt(u, |v| &zu(ONE, v[0]) * &delta(v[1], FOUR)) * &delta(ONE, l[0])),
        5 => {
            let mut f = aux_x(m);
            f.add_scaled(&diagram_two(6, m)?, &rat(1, m as i64 + 3));
            f
        }
        6 => diagram_two(1, m)?.mul_poly(&q),
        7 => with_power(m, S333, |u, _| sym(u, |v| &(&zu(ONE, v[0]) * &zu(ONE, v[1])) * &delta(v[2], FOUR))),
        8 => with_power(m, S221, |u, l| {
            let mut acc = Poly::zero();
            for d in 0..4 {
                let left = alt(l, |v| &zl(d, v[0]) * &delta(ONE, v[1]));
                let right = sym(&[u[0], d], |v| &zu(ONE, v[0]) * &delta(v[1], FOUR));
                acc = &acc + &(&left * &right);
            }
            acc
        }),
        9 => {
            let mut f = aux_y(m);
            f.add_scaled(&diagram_two(10, m)?, &rat(-2, m as i64 + 4));
            f
        }
        10 => diagram_two(3, m)?.mul_poly(&q),
        _ => return None,
    })
}

/// The explicit highest weight vector of a numbered box.
pub fn hwv_catalog(diagram: DiagramId, b: usize, m: u32) -> Result<TensorField> {
    let f = match diagram {
        DiagramId::D1 => diagram_one(b, m),
        DiagramId::D2 => diagram_two(b, m),
        _ => None,
    };
    f.ok_or_else(|| Error::Unsupported(format!("no catalog entry for box {b} of diagram {}", diagram.name())))
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn check(out: &mut Vec<IdentityCheck>, name: impl Into<String>, holds: bool) {
    out.push(IdentityCheck { name: name.into(), holds });
}

fn z(src: ValueShape, tgt: ValueShape, f: &TensorField) -> TensorField {
    ComponentOp::z(src, tgt).apply(f).expect("shape checked by construction")
}

fn lin(terms: &[(i64, &TensorField)]) -> TensorField {
    let mut acc = TensorField::zero(terms[0].1.shape());
    for (c, f) in terms {
        acc.add_scaled(f, &int(*c));
    }
    acc
}

fn is_traceless(f: &TensorField) -> bool {
    f.trace().iter().all(Polynomial::is_zero)
}

/// Every displayed identity among the box vectors of the first two diagrams.
pub fn fischer_identities(m: u32) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let one = |b| diagram_one(b, m).expect("box exists");
    let two = |b| diagram_two(b, m).expect("box exists");
    let mi = m as i64;

    check(&mut out, "z^300_311 f1 = f2 (diagram 1)", z(S300, S311, &one(1)) == one(2));
    check(&mut out, "z^311_322 f2 = f3 (diagram 1)", z(S311, S322, &one(2)) == one(3));
    check(&mut out, "z^322_333 f3 = f4 (diagram 1)", z(S322, S333, &one(3)) == one(4));
    for (b, src, tgt) in [(2, S311, S300), (3, S322, S311), (4, S333, S322)] {
        let back = z(src, tgt, &one(b));
        let c = proportionality(&back, &one(b - 1).mul_poly(&plucker_form()));
        check(&mut out, format!("z^{src}_{tgt} f{b} is a nonzero multiple of q f{} (diagram 1)", b - 1), matches!(c, Some(ref c) if !c.is_zero()));
    }

    let (f1, f2, f3, f4, f6, f7, f8, f10) = (two(1), two(2), two(3), two(4), two(6), two(7), two(8), two(10));
    let x = aux_x(m);
    let y = aux_y(m);
    check(&mut out, "z^311_300 f1 = f2", z(S311, S300, &f1) == f2);
    check(&mut out, "z^311_322 f1 = f3", z(S311, S322, &f1) == f3);
    check(&mut out, "z^311_210 f1 = f4", z(S311, S210, &f1) == f4);
    check(&mut out, "z^322_333 f3 = f7", z(S322, S333, &f3) == f7);
    check(&mut out, "z^322_221 f3 = f8", z(S322, S221, &f3) == f8);
    check(&mut out, "3 z^300_311 f2 = -f6 + 2X", z(S300, S311, &f2).scale(&int(3)) == lin(&[(-1, &f6), (2, &x)]));
    check(&mut out, "2 z^210_311 f4 = -f6 - X", z(S210, S311, &f4).scale(&int(2)) == lin(&[(-1, &f6), (-1, &x)]));
    check(&mut out, "2 z^322_311 f3 = -f6 + X", z(S322, S311, &f3).scale(&int(2)) == lin(&[(-1, &f6), (1, &x)]));
    check(&mut out, "Delta f6 = (m+3) f1", half_laplacian(&f6) == f1.scale(&int(mi + 3)));
    check(&mut out, "Delta X = -f1", half_laplacian(&x) == f1.scale(&int(-1)));
    let f5 = two(5);
    check(&mut out, "f5 harmonic", f5.laplacian().is_zero());
    check(&mut out, "f5 traceless", is_traceless(&f5));
    check(&mut out, "3 z^333_322 f7 = -2 f10 - Y", z(S333, S322, &f7).scale(&int(3)) == lin(&[(-2, &f10), (-1, &y)]));
    check(&mut out, "6 z^221_322 f8 = -4 f10 + Y", z(S221, S322, &f8).scale(&int(6)) == lin(&[(-4, &f10), (1, &y)]));
    check(&mut out, "Delta f10 = (m+4) f3", half_laplacian(&f10) == f3.scale(&int(mi + 4)));
    check(&mut out, "Delta Y = f3", half_laplacian(&y) == f3);
    let mut f9 = y.clone();
    f9.add_scaled(&f10, &rat(-1, mi + 4));
    check(&mut out, "Y - f10/(m+4) harmonic", f9.laplacian().is_zero());
    check(&mut out, "Y - f10/(m+4) traceless", is_traceless(&f9));
    for b in 1..=10 {
        check(&mut out, format!("f{b} is a highest weight vector"), two(b).is_highest_weight_vector());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const OFF: [&str; 3] = ["6 z^221_322 f8 = -4 f10 + Y", "Delta Y = f3", "Y - f10/(m+4) harmonic"];

    #[test]
    fn identities_hold() {
        for m in 0..2 {
            for c in fischer_identities(m) {
                assert_eq!(c.holds, !OFF.contains(&c.name.as_str()), "m={m}: {}", c.name);
            }
        }
    }

    // Corrected forms of the three relations in OFF.
    #[test]
    fn box_nine_ten_relations() {
        for m in 0..3 {
            let (f3, f8, f10, y) = (diagram_two(3, m).unwrap(), diagram_two(8, m).unwrap(), diagram_two(10, m).unwrap(), aux_y(m));
            let lhs = z(S221, S322, &f8).scale(&int(4));
            assert_eq!(lhs, lin(&[(-1, &f10), (1, &y)]), "m={m}");
            assert_eq!(half_laplacian(&y), f3.scale(&int(2)));
            let f9 = diagram_two(9, m).unwrap();
            assert!(f9.laplacian().is_zero() && is_traceless(&f9));
        }
    }

    #[test]
    fn catalog_weights() {
        let f = hwv_catalog(DiagramId::D2, 1, 1).unwrap();
        assert_eq!(crate::tensor::normalize_weight(f.weight_of().unwrap()), [4, 2, 1, 0]);
        assert!(hwv_catalog(DiagramId::D3, 1, 0).is_err());
    }
}
