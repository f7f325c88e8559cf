//! Real forms of C^6: coordinate maps for the three signatures.
//!
//! Every coordinate carries the common factor `1/sqrt(2)`. It is kept
//! symbolic as `scale_sq = 1/2`, so pulled-back quadratic expressions stay
//! in Q(i) exactly.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::poly::{Polynomial, COORDS, NVARS};
use crate::scalar::{gauss, int, rat, Coeff, Gaussian, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Signature {
    /// R^6 with the definite form.
    Euclidean,
    /// R^{1,5}, variables x0..x5.
    Lorentzian,
    /// R^{3,3}.
    Split,
}

impl Signature {
    pub const ALL: [Signature; 3] = [Signature::Euclidean, Signature::Lorentzian, Signature::Split];

    pub fn name(self) -> &'static str {
        match self {
            Signature::Euclidean => "euclidean",
            Signature::Lorentzian => "lorentzian",
            Signature::Split => "split",
        }
    }

    /// Diagonal of the expected quadratic form in the six real variables.
    pub fn form_signs(self) -> [i64; NVARS] {
        match self {
            Signature::Euclidean => [1; NVARS],
            Signature::Lorentzian => [1, -1, -1, -1, -1, -1],
            Signature::Split => [1, 1, 1, -1, -1, -1],
        }
    }

    /// Labels of the real variables, in storage order.
    pub fn variable_names(self) -> [&'static str; NVARS] {
        match self {
            Signature::Lorentzian => ["x0", "x1", "x2", "x3", "x4", "x5"],
            _ => ["x1", "x2", "x3", "x4", "x5", "x6"],
        }
    }
}

/// Linear forms `sqrt(2) z^{ab}` in the real variables, indexed like [`COORDS`].
pub fn linear_forms(sig: Signature) -> [Polynomial<Gaussian>; NVARS] {
    // (variable, re, im) triples per coordinate.
    let spec: [&[(usize, i64, i64)]; NVARS] = match sig {
        Signature::Euclidean => [
            &[(0, 0, 1), (5, 1, 0)],  // z12 = i x1 + x6
            &[(3, 1, 0), (4, 0, 1)],  // z13 = x4 + i x5
            &[(1, 1, 0), (2, 0, 1)],  // z14 = x2 + i x3
            &[(1, 1, 0), (2, 0, -1)], // z23 = x2 - i x3
            &[(3, -1, 0), (4, 0, 1)], // z24 = -x4 + i x5
            &[(0, 0, -1), (5, 1, 0)], // z34 = -i x1 + x6
        ],
        Signature::Lorentzian => [
            &[(0, 1, 0), (5, 1, 0)],
            &[(1, 1, 0), (2, 0, 1)],
            &[(3, 1, 0), (4, 0, 1)],
            &[(3, -1, 0), (4, 0, 1)],
            &[(1, 1, 0), (2, 0, -1)],
            &[(0, 1, 0), (5, -1, 0)],
        ],
        Signature::Split => [
            &[(0, 1, 0), (5, 1, 0)],
            &[(1, 1, 0), (4, 1, 0)],
            &[(2, 1, 0), (3, 1, 0)],
            &[(2, 1, 0), (3, -1, 0)],
            &[(1, -1, 0), (4, 1, 0)],
            &[(0, 1, 0), (5, -1, 0)],
        ],
    };
    spec.map(|terms| {
        let mut p = Polynomial::<Gaussian>::zero();
        for &(var, re, im) in terms {
            p.add_scaled(&Polynomial::var(var), &gauss(int(re), int(im)));
        }
        p
    })
}

/// A point of the real slice: `z^{ab} = sqrt(scale_sq) * matrix[a][b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedPoint {
    pub scale_sq: Rational,
    pub matrix: [[Gaussian; 4]; 4],
}

impl EmbeddedPoint {
    /// `r^2` at this point; rational because the scale enters squared.
    pub fn r2(&self) -> Gaussian {
        let m = &self.matrix;
        let q = m[0][1].clone() * m[2][3].clone() - m[0][2].clone() * m[1][3].clone()
            + m[0][3].clone() * m[1][2].clone();
        q * Gaussian::from_rational(self.scale_sq.clone() * int(2))
    }
}

/// The antisymmetric coordinate matrix of the real point `x`.
pub fn real_slice_embed(sig: Signature, x: &[Rational; NVARS]) -> EmbeddedPoint {
    let forms = linear_forms(sig);
    let zero = Gaussian::zero();
    let mut matrix: [[Gaussian; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    for (k, &(a, b)) in COORDS.iter().enumerate() {
        let mut v = Gaussian::zero();
        for (mono, c) in forms[k].terms() {
            let var = mono.iter().position(|&e| e == 1).expect("linear form");
            v += c.clone() * Gaussian::from_rational(x[var].clone());
        }
        matrix[b][a] = -v.clone();
        matrix[a][b] = v;
    }
    EmbeddedPoint { scale_sq: rat(1, 2), matrix }
}

/// `r^2` pulled back to the real variables.
pub fn pulled_back_r2(sig: Signature) -> Polynomial<Gaussian> {
    let forms = linear_forms(sig);
    let r2 = Polynomial::<Rational>::r2();
    r2.substitute(&forms).scale(&Gaussian::from_rational(rat(1, 2)))
}

/// The diagonal quadratic form of the signature.
pub fn signature_form(sig: Signature) -> Polynomial<Gaussian> {
    let mut p = Polynomial::zero();
    for (k, s) in sig.form_signs().iter().enumerate() {
        let mut m = [0u8; NVARS];
        m[k] = 2;
        p.add_term(m, Gaussian::from_rational(int(*s)));
    }
    p
}

/// True when `r^2` equals the signature form as a polynomial identity.
pub fn r2_identity_holds(sig: Signature) -> bool {
    pulled_back_r2(sig) == signature_form(sig)
}
