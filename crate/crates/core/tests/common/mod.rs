#![allow(dead_code)]

use gcdeform::algebroid::{complex_eigenbundle, IsotropicSubbundle};
use gcdeform::courant::GenSection;
use gcdeform::deformation::{constrain_map, ConstrainedMap, DeformationMap};
use gcdeform::frame::kodaira_eigenframe;
use gcdeform::scalar::{GaussianRational, PolyScalar, Symbol};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn kodaira_l() -> IsotropicSubbundle {
    complex_eigenbundle(&kodaira_eigenframe().algebra).unwrap()
}

pub fn kodaira_constrained(l: &IsotropicSubbundle) -> ConstrainedMap {
    let (raw, params) = DeformationMap::raw("t", 4);
    constrain_map(l, &raw, &params).unwrap()
}

pub fn p(name: &str) -> PolyScalar {
    PolyScalar::symbol(&Symbol::parameter(name))
}

pub fn f(name: &str) -> PolyScalar {
    PolyScalar::symbol(&Symbol::function(name))
}

pub fn c(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts(re, 1, im, 1)
}

pub fn half_i() -> GaussianRational {
    GaussianRational::from_parts(0, 1, 1, 2)
}

pub fn random_gr(rng: &mut ChaCha8Rng) -> GaussianRational {
    let d1 = rng.gen_range(1..5);
    let d2 = rng.gen_range(1..5);
    GaussianRational::from_parts(rng.gen_range(-6..7), d1, rng.gen_range(-6..7), d2)
}

/// A polynomial in function symbols `f0..f3` of degree at most 2.
pub fn random_function_poly(rng: &mut ChaCha8Rng) -> PolyScalar {
    let mut out = PolyScalar::constant(random_gr(rng));
    for _ in 0..rng.gen_range(0..3) {
        let a = f(&format!("f{}", rng.gen_range(0..4)));
        let term = if rng.gen_bool(0.5) { &a * &f(&format!("f{}", rng.gen_range(0..4))) } else { a };
        out += &term.scale(&random_gr(rng));
    }
    out
}

pub fn random_section(rng: &mut ChaCha8Rng, dim: usize) -> GenSection {
    let v: Vec<PolyScalar> =
        (0..2 * dim).map(|_| if rng.gen_bool(0.6) { random_function_poly(rng) } else { PolyScalar::zero() }).collect();
    GenSection::from_polys(&v)
}
