//! Fixtures shared by the kernel benchmarks.

use tightcert_core::{Field, GradedRing, IdealData, Polynomial};

pub const FERMAT: &str = "x^3+y^3+z^3";
pub const QUINTIC: &str = "x^5+y^5+z^5+x*z^4+x^2*y^3+x^3*z^2+y^2*z^3";

pub fn ring(field: Field, equation: &str) -> GradedRing {
    GradedRing::from_text(field, &["x", "y", "z"], equation).expect("fixture ring")
}

/// `(ring, certified ideal)` for the given generators.
pub fn instance(field: Field, equation: &str, gens: &[&str]) -> (GradedRing, IdealData) {
    let r = ring(field, equation);
    let i = IdealData::from_text(&r, gens)
        .and_then(|i| i.certify_primary(&r, None))
        .expect("fixture ideal");
    (r, i)
}

pub fn element(ring: &GradedRing, text: &str) -> Polynomial {
    ring.parse(text).expect("fixture element")
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).expect("prime")
}
