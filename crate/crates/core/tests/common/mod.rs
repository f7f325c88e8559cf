#![allow(dead_code)]

pub mod fixtures;

use gcrfields::analysis::HomogeneousComponent;
use gcrfields::poly::{Monomial, NVARS};
use gcrfields::scalar::{rat, Rational};
use gcrfields::tensor::{Poly, TensorField, ValueShape};
use rand::Rng;

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn random_monomial(rng: &mut impl Rng, degree: u32) -> Monomial {
    let mut m = [0u8; NVARS];
    for _ in 0..degree {
        m[rng.gen_range(0..NVARS)] += 1;
    }
    m
}

/// A polynomial with up to `terms` monomials of degree at most `max_degree`.
pub fn random_poly(rng: &mut impl Rng, max_degree: u32, terms: usize) -> Poly {
    Poly::from_terms((0..terms).map(|_| {
        let d = rng.gen_range(0..=max_degree);
        (random_monomial(rng, d), random_rational(rng))
    }))
}

/// A dense random element of `P_degree(shape)`.
pub fn random_field(rng: &mut impl Rng, shape: ValueShape, degree: u32) -> TensorField {
    random_element(rng, &HomogeneousComponent::new(shape, degree))
}

pub fn random_element(rng: &mut impl Rng, comp: &HomogeneousComponent) -> TensorField {
    let elements: Vec<_> = comp.elements().cloned().collect();
    let coeffs: Vec<_> = elements.iter().map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
    comp.combine(&elements, &coeffs)
}
