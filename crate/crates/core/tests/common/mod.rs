#![allow(dead_code)]

use rand::Rng;
use tightcert_core::{Field, GradedRing, IdealData, Monomial, Polynomial};

pub const FERMAT: &str = "x^3+y^3+z^3";
/// Smooth quintic for which `(x^4, y^4, z^4)` has no relation of degree `<= 7`.
pub const QUINTIC: &str = "x^5+y^5+z^5+x*z^4+x^2*y^3+x^3*z^2+y^2*z^3";

pub fn ring(field: Field, equation: &str) -> GradedRing {
    GradedRing::from_text(field, &["x", "y", "z"], equation).unwrap()
}

pub fn fermat(field: Field) -> GradedRing {
    ring(field, FERMAT)
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn ideal(ring: &GradedRing, gens: &[&str]) -> IdealData {
    IdealData::from_text(ring, gens).unwrap()
}

pub fn poly(ring: &GradedRing, text: &str) -> Polynomial {
    ring.parse(text).unwrap()
}

/// Random homogeneous polynomial of degree `d` with small coefficients; may be zero.
pub fn random_form<R: Rng>(rng: &mut R, field: Field, d: u32, density: f64) -> Polynomial {
    let mut p = Polynomial::zero(field, 3);
    for mono in Monomial::all_of_degree(3, d) {
        if rng.gen_bool(density) {
            p.add_term(mono, field.from_i64(rng.gen_range(-3..=3)));
        }
    }
    p
}

/// A random plane curve of degree `delta` over `field`, Fermat plus noise.
pub fn random_curve<R: Rng>(rng: &mut R, field: Field, delta: u32) -> GradedRing {
    let fermat = format!("x^{delta}+y^{delta}+z^{delta}");
    let base = GradedRing::from_text(field, &["x", "y", "z"], &fermat).unwrap();
    let noise = random_form(rng, field, delta, 0.3);
    let eq = base.parse(&fermat).unwrap().add(&noise);
    if eq.is_zero() || eq.homogeneous_degree() != Some(delta) {
        return base;
    }
    GradedRing::new(field, vec!["x".into(), "y".into(), "z".into()], eq).unwrap_or(base)
}

/// Random primary ideal with the given degrees, or `None` after a few tries.
pub fn random_primary_ideal<R: Rng>(rng: &mut R, ring: &GradedRing, degrees: &[u32]) -> Option<IdealData> {
    for _ in 0..8 {
        let gens: Vec<Polynomial> = degrees
            .iter()
            .map(|&d| random_form(rng, ring.field(), d, 0.6))
            .collect();
        let Ok(ideal) = IdealData::new(ring, gens) else {
            continue;
        };
        if let Ok(i) = ideal.certify_primary(ring, None) {
            return Some(i);
        }
    }
    None
}

/// `dim_K (K[x,y,z]/(F))_k` for `deg F = delta`, from the binomial formula.
pub fn plane_curve_hilbert(delta: i64, k: i64) -> i64 {
    let c2 = |n: i64| if n < 0 { 0 } else { (n + 1) * (n + 2) / 2 };
    c2(k) - c2(k - delta)
}
