//! Cohomology of line bundles and relation sheaves on the curve `Y = Proj R`,
//! Euler characteristics, and truncated Cech classes.
//!
//! `H^1(Y, O(a))` is modelled by the two-set cover `D(u), D(v)` for a
//! parameter pair `(u, v)`: a class `t / (uv)^N` with `t` in `R_{a+2N}` is zero
//! exactly when `t (uv)^{L-N}` lies in `(u^L, v^L)` for `L` large. The
//! truncation `T_N = R_{a+2N} / (u^N R_{a+N} + v^N R_{a+N})` is accepted as
//! faithful once its dimension equals `h^1(O(a))` and multiplication by `uv`
//! maps it isomorphically onto `T_{N+1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::ring::{binomial_nonneg, GradedRing, Polynomial};
use crate::syzygy::{self, IdealData, RelationVector, Splitting};

pub fn h0_line(ring: &GradedRing, a: i64) -> usize {
    ring.hilbert(a)
}

/// Serre duality with `omega_Y = O(delta - 3)`.
pub fn h1_line(ring: &GradedRing, a: i64) -> usize {
    ring.hilbert(ring.delta() - 3 - a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "twist", rename_all = "snake_case")]
pub enum SheafObject {
    Line(i64),
    Rel(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub object: SheafObject,
    pub h0: usize,
    pub h1: usize,
}

impl CohomologyDims {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64
    }
}

pub fn line_dims(ring: &GradedRing, a: i64) -> CohomologyDims {
    CohomologyDims {
        object: SheafObject::Line(a),
        h0: h0_line(ring, a),
        h1: h1_line(ring, a),
    }
}

fn require_primary(ideal: &IdealData) -> Result<()> {
    if ideal.witness().is_none() {
        return Err(Error::input(
            "the ideal has no primary witness; run the primary check first",
        ));
    }
    Ok(())
}

/// `h^0` and `h^1` of the relation sheaf `R(m)`.
///
/// From `0 -> R(m) -> sum O(m-d_i) -> O(m) -> 0`: `h^0 = dim Rel_m` and
/// `h^1 = dim (R/I)_m + dim ker(sum H^1(O(m-d_i)) -> H^1(O(m)))`. The kernel
/// is computed through the dual map `R_{delta-3-m} -> sum R_{delta-3-m+d_i}`
/// given by multiplication with the generators. It vanishes for large `m`
/// but not in low degrees, e.g. `(x, y)` on a cubic at `m = 1` has `h^1 = 3`.
pub fn h_rel(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<CohomologyDims> {
    require_primary(ideal)?;
    let a = syzygy::ideal_matrix(ring, ideal, m)?;
    let rank = a.rank();
    let h0 = a.cols() - rank;
    let cokernel = ring.hilbert(m) - rank;
    Ok(CohomologyDims {
        object: SheafObject::Rel(m),
        h0,
        h1: cokernel + h1_kernel(ring, ideal, m)?,
    })
}

fn h1_kernel(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<usize> {
    let e = ring.delta() - 3 - m;
    let source: usize = ideal.degrees().iter().map(|&d| h1_line(ring, m - d)).sum();
    if ring.hilbert(e) == 0 {
        return Ok(source);
    }
    let blocks = ideal
        .gens()
        .iter()
        .zip(ideal.degrees())
        .map(|(g, &d)| ring.mult_matrix_with_degree(g, d, e))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let dual = Matrix::vstack(ring.field(), ring.hilbert(e), &refs)?;
    Ok(source - dual.rank())
}

/// Right-hand side of Riemann-Roch for `R(m)`: `((n-1)m - sum d) delta + (n-1)(1-g)`.
pub fn rr_euler(ring: &GradedRing, ideal: &IdealData, m: i64) -> i64 {
    let n1 = ideal.len() as i64 - 1;
    (n1 * m - ideal.degree_sum()) * ring.delta() + n1 * (1 - ring.genus())
}

pub fn rr_check(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<bool> {
    Ok(h_rel(ring, ideal, m)?.euler() == rr_euler(ring, ideal, m))
}

/// `chi(Y, S^k(F(-m)))` for the dual `F` of the relation sheaf.
pub fn euler_sym(degrees: &[i64], m: i64, k: i64, delta: i64, genus: i64) -> Result<i64> {
    let n = degrees.len() as i64;
    if n < 2 || k < 0 {
        return Err(Error::input("euler_sym needs n >= 2 and k >= 0"));
    }
    let c = chern_degree(degrees, m);
    let b1 = binomial_nonneg(k + n - 2, n - 1) as i64;
    let b2 = binomial_nonneg(k + n - 2, n - 2) as i64;
    Ok(c * b1 * delta + (1 - genus) * b2)
}

/// Coefficient of `H` in `c_1(F(-m))`: `sum d_i - (n-1) m`.
pub fn chern_degree(degrees: &[i64], m: i64) -> i64 {
    degrees.iter().sum::<i64>() - (degrees.len() as i64 - 1) * m
}

/// Top self-intersection of the forcing divisor for `f0` of degree `d0`.
pub fn self_intersection(degrees: &[i64], d0: i64, delta: i64) -> i64 {
    chern_degree(degrees, d0) * delta
}

/// Both sides of the correlation count `h^0(F(-k)) = h^1(R(k + delta - 3))`.
///
/// The left side comes from the dual sequence `0 -> O(-k) -> sum O(d_i - k) -> F(-k) -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationDims {
    pub k: i64,
    pub sections: usize,
    pub h1_rel: usize,
}

pub fn correlation_dims(ring: &GradedRing, ideal: &IdealData, k: i64) -> Result<CorrelationDims> {
    require_primary(ideal)?;
    let m = k + ring.delta() - 3;
    let pushed: usize = ideal.degrees().iter().map(|&d| ring.hilbert(d - k)).sum();
    let sections = pushed - ring.hilbert(-k) + syzygy::quotient_dim(ring, ideal, m)?;
    Ok(CorrelationDims {
        k,
        sections,
        h1_rel: h_rel(ring, ideal, m)?.h1,
    })
}

/// Two linear forms without common zero on `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterPair {
    pub u: Polynomial,
    pub v: Polynomial,
}

impl ParameterPair {
    pub fn format(&self, ring: &GradedRing) -> (String, String) {
        (ring.format(&self.u), ring.format(&self.v))
    }

    fn is_primary(&self, ring: &GradedRing) -> Result<bool> {
        let ideal = IdealData::new(ring, vec![self.u.clone(), self.v.clone()])?;
        Ok(syzygy::primary_check(ring, &ideal, None)?.is_some())
    }
}

const PAIR_RETRIES: usize = 16;

/// `(x, y)` when it is a parameter pair, otherwise seeded random linear forms.
pub fn select_pair(ring: &GradedRing, seed: u64) -> Result<ParameterPair> {
    if ring.nvars() != 3 || !ring.is_hypersurface() {
        return Err(Error::input("Cech computations need a plane curve"));
    }
    let pair = ParameterPair {
        u: ring.var(0),
        v: ring.var(1),
    };
    if pair.is_primary(ring)? {
        return Ok(pair);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PAIR_RETRIES {
        let u = random_linear_form(ring, &mut rng);
        let v = random_linear_form(ring, &mut rng);
        let pair = ParameterPair { u, v };
        if !pair.u.is_zero() && !pair.v.is_zero() && pair.is_primary(ring)? {
            return Ok(pair);
        }
    }
    Err(Error::Undetermined(format!(
        "no parameter pair found after {PAIR_RETRIES} random attempts"
    )))
}

fn random_linear_form(ring: &GradedRing, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = ring.zero();
    for i in 0..ring.nvars() {
        let c = match ring.field() {
            Field::Rational => ring.field().from_i64(rng.gen_range(-9..=9)),
            Field::Prime(q) => ring.field().from_i64(rng.gen_range(0..q as i64)),
        };
        p = p.add(&ring.var(i).scale(&c));
    }
    p
}

/// Default cap on the truncation level: `2 (sum d + delta)`, widened for very negative twists.
pub fn default_cech_bound(ring: &GradedRing, degree_sum: i64, a: i64) -> i64 {
    2 * (degree_sum + ring.delta()) + (-a).max(0)
}

/// One truncation level `T_N` of `H^1(O(a))`.
struct Truncation {
    level: i64,
    /// Columns span `u^N R_{a+N} + v^N R_{a+N}` inside `R_{a+2N}`.
    boundaries: Matrix,
    rank: usize,
}

impl Truncation {
    fn new(ring: &GradedRing, pair: &ParameterPair, a: i64, level: i64) -> Result<Self> {
        let un = ring.pow(&pair.u, level as u32);
        let vn = ring.pow(&pair.v, level as u32);
        let mu = ring.mult_matrix_with_degree(&un, level, a + level)?;
        let mv = ring.mult_matrix_with_degree(&vn, level, a + level)?;
        let boundaries = Matrix::hstack(ring.field(), ring.hilbert(a + 2 * level), &[&mu, &mv])?;
        let rank = boundaries.rank();
        Ok(Truncation {
            level,
            boundaries,
            rank,
        })
    }

    fn dim(&self) -> usize {
        self.boundaries.rows() - self.rank
    }

    fn contains(&self, coords: &[Scalar]) -> Result<bool> {
        self.boundaries.column_span_contains(coords)
    }
}

/// Whether `T_N -> T_{N+1}`, multiplication by `uv`, is injective.
fn transition_injective(
    ring: &GradedRing,
    pair: &ParameterPair,
    a: i64,
    low: &Truncation,
    high: &Truncation,
) -> Result<bool> {
    let uv = ring.mul(&pair.u, &pair.v);
    let src = a + 2 * low.level;
    let m_uv = ring.mult_matrix_with_degree(&uv, 2, src)?;
    let joined = Matrix::hstack(ring.field(), m_uv.rows(), &[&m_uv, &high.boundaries])?;
    // dim of the preimage of the boundaries under uv
    let preimage = m_uv.cols() + high.rank - joined.rank();
    Ok(preimage == low.rank)
}

/// First level `L >= from` at which the truncation is certified faithful.
fn stable_level(
    ring: &GradedRing,
    pair: &ParameterPair,
    a: i64,
    from: i64,
    n_max: i64,
) -> Result<Truncation> {
    let target = h1_line(ring, a);
    let mut current = Truncation::new(ring, pair, a, from.max(1))?;
    while current.level <= n_max {
        let next = Truncation::new(ring, pair, a, current.level + 1)?;
        if current.dim() == target
            && next.dim() == target
            && transition_injective(ring, pair, a, &current, &next)?
        {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::StabilizationFailed {
        twist: a,
        bound: n_max,
    })
}

/// `dim H^1(O(a))` computed by Cech truncation, with the stabilization level.
pub fn cech_h1_dim(
    ring: &GradedRing,
    a: i64,
    pair: &ParameterPair,
    n_max: Option<i64>,
) -> Result<(usize, i64)> {
    let n_max = n_max.unwrap_or_else(|| default_cech_bound(ring, 0, a));
    let t = stable_level(ring, pair, a, 1, n_max)?;
    Ok((t.dim(), t.level))
}

/// A class `numerator / (uv)^level` in `H^1(Y, O(twist))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechClass {
    pub twist: i64,
    pub pair: ParameterPair,
    pub level: i64,
    pub numerator: Polynomial,
}

impl CechClass {
    /// Tests whether the class vanishes, returning the verdict and the level used.
    pub fn is_zero(&self, ring: &GradedRing, n_max: i64) -> Result<(bool, i64)> {
        if self.numerator.is_zero() || h1_line(ring, self.twist) == 0 {
            return Ok((true, self.level));
        }
        let t = stable_level(ring, &self.pair, self.twist, self.level, n_max)?;
        let uv = ring.mul(&self.pair.u, &self.pair.v);
        let lifted = ring.mul(&self.numerator, &ring.pow(&uv, (t.level - self.level) as u32));
        let coords = ring.coordinates(&lifted, self.twist + 2 * t.level)?;
        Ok((t.contains(&coords)?, t.level))
    }
}

/// The Cech cocycle of the forcing class of `f0`, multiplied by `(uv)^N`: the
/// relation `f0 (a v^N - b u^N)` of total degree `m + 2N`, where
/// `u^N = sum a_i f_i` and `v^N = sum b_i f_i`.
pub fn forcing_cocycle(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    m: i64,
    pair: &ParameterPair,
) -> Result<(RelationVector, i64)> {
    let n = ideal
        .witness()
        .ok_or_else(|| Error::input("the ideal has no primary witness"))?
        .max(1);
    let un = ring.pow(&pair.u, n as u32);
    let vn = ring.pow(&pair.v, n as u32);
    let a = syzygy::membership_in_degree(ring, ideal, &un, n)?
        .ok_or_else(|| Error::internal("u^N is not in the ideal above the primary witness"))?;
    let b = syzygy::membership_in_degree(ring, ideal, &vn, n)?
        .ok_or_else(|| Error::internal("v^N is not in the ideal above the primary witness"))?;
    let components = a
        .iter()
        .zip(&b)
        .map(|(ai, bi)| ring.normal_form(&f0.mul(&ai.mul(&vn).sub(&bi.mul(&un)))))
        .collect();
    let rho = RelationVector {
        components,
        degree: m + 2 * n,
    };
    debug_assert!(rho.is_relation_of(ring, ideal));
    Ok((rho, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentTest {
    pub vanishes: bool,
    /// Twist of the line bundle receiving the class.
    pub twist: i64,
    /// Cech level at which the test was decided.
    pub level: i64,
}

/// For `n = 3` and a primary relation `r` of degree `k`: whether the image of
/// the forcing class in `H^1(O(m + k - sum d))`, under the quotient
/// `R(m) -> O(m + k - sum d)` induced by `r`, vanishes.
pub fn forcing_component_zero(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    m: i64,
    r: &RelationVector,
    pair: &ParameterPair,
    n_max: Option<i64>,
) -> Result<ComponentTest> {
    if ideal.len() != 3 {
        return Err(Error::input("the component test needs three generators"));
    }
    let twist = m + r.degree - ideal.degree_sum();
    let n_max = n_max.unwrap_or_else(|| default_cech_bound(ring, ideal.degree_sum(), twist));
    let (rho, level) = forcing_cocycle(ring, ideal, f0, m, pair)?;
    let t = syzygy::cross_quotient(ring, ideal, r, &rho)?;
    let class = CechClass {
        twist,
        pair: pair.clone(),
        level,
        numerator: t,
    };
    let (vanishes, level) = class.is_zero(ring, n_max)?;
    Ok(ComponentTest {
        vanishes,
        twist,
        level,
    })
}

/// Component classes of the forcing class along a splitting
/// `R(m) = sum O(m - k_j)`: one test per summand.
pub fn split_component_tests(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    m: i64,
    splitting: &Splitting,
    pair: &ParameterPair,
    n_max: Option<i64>,
) -> Result<Vec<ComponentTest>> {
    let (rho, level) = forcing_cocycle(ring, ideal, f0, m, pair)?;
    let total = rho.degree;
    // columns: s_j times the monomial basis of R_{total - k_j}
    let mut columns = Vec::new();
    let mut owners = Vec::new();
    for (j, s) in splitting.generators.iter().enumerate() {
        let basis = ring.basis(total - s.degree);
        for mono in basis.monomials() {
            let mut col = Vec::new();
            for (c, &d) in s.components.iter().zip(ideal.degrees()) {
                let prod = c.mul_monomial(mono, &ring.field().one());
                col.extend(ring.coordinates(&prod, total - d)?);
            }
            columns.push(col);
            owners.push(j);
        }
    }
    let mut rhs = Vec::new();
    for (c, &d) in rho.components.iter().zip(ideal.degrees()) {
        rhs.extend(ring.coordinates(c, total - d)?);
    }
    let rows = rhs.len();
    let system = Matrix::from_columns(ring.field(), rows, &columns);
    let alpha = system
        .solve(&rhs)?
        .ok_or_else(|| Error::internal("the forcing cocycle is not generated by the splitting"))?;
    let mut out = Vec::new();
    for (j, s) in splitting.generators.iter().enumerate() {
        let mut numerator = ring.zero();
        let basis = ring.basis(total - s.degree);
        let coeffs = alpha.iter().zip(&owners).filter(|(_, &o)| o == j).map(|(c, _)| c);
        for (mono, c) in basis.monomials().iter().zip(coeffs) {
            numerator.add_term(mono.clone(), c.clone());
        }
        let twist = m - s.degree;
        let cap = n_max.unwrap_or_else(|| default_cech_bound(ring, ideal.degree_sum(), twist));
        let class = CechClass {
            twist,
            pair: pair.clone(),
            level,
            numerator,
        };
        let (vanishes, used) = class.is_zero(ring, cap)?;
        out.push(ComponentTest {
            vanishes,
            twist,
            level: used,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(delta: u32, field: Field) -> GradedRing {
        let f = format!("x^{delta}+y^{delta}+z^{delta}");
        GradedRing::from_text(field, &["x", "y", "z"], &f).unwrap()
    }

    fn primary(ring: &GradedRing, gens: &[&str]) -> IdealData {
        IdealData::from_text(ring, gens)
            .unwrap()
            .certify_primary(ring, None)
            .unwrap()
    }

    #[test]
    fn line_bundle_dims() {
        let r3 = fermat(3, Field::Rational);
        assert_eq!((h0_line(&r3, 0), h1_line(&r3, 0)), (1, 1));
        let r5 = fermat(5, Field::Rational);
        assert_eq!(h1_line(&r5, 0), 6);
        assert_eq!(h1_line(&r5, 0) as i64, r5.genus());
        assert_eq!(h0_line(&r5, -2), 0);
    }

    #[test]
    fn relation_sheaf_dims() {
        let r = fermat(3, Field::Rational);
        let sq = primary(&r, &["x^2", "y^2", "z^2"]);
        let d = h_rel(&r, &sq, 3).unwrap();
        assert_eq!((d.h0, d.h1), (1, 1));
        assert_eq!(h_rel(&r, &sq, 4).unwrap().h1, 0);
        let p = primary(&r, &["x", "y"]);
        let d = h_rel(&r, &p, 2).unwrap();
        assert_eq!((d.h0, d.h1), (1, 1));
        // low degree: the kernel term contributes
        let d = h_rel(&r, &p, 1).unwrap();
        assert_eq!((d.h0, d.h1), (0, 3));
        let unchecked = IdealData::from_text(&r, &["x", "y"]).unwrap();
        assert!(h_rel(&r, &unchecked, 2).is_err());
    }

    #[test]
    fn riemann_roch_on_examples() {
        let r = fermat(3, Field::Rational);
        for gens in [&["x^2", "y^2", "z^2"][..], &["x", "y"], &["x^4", "xy", "y^2"]] {
            let i = primary(&r, gens);
            for m in -1..=i.degree_sum() + 3 {
                assert!(rr_check(&r, &i, m).unwrap(), "{gens:?} m={m}");
            }
        }
    }

    #[test]
    fn euler_and_intersection_formulas() {
        assert_eq!(euler_sym(&[2, 2, 2], 3, 2, 3, 1).unwrap(), 0);
        assert_eq!(euler_sym(&[1, 1], 1, 1, 3, 1).unwrap(), 3);
        assert_eq!(euler_sym(&[2, 2, 2], 3, 0, 5, 6).unwrap(), -5);
        assert_eq!(self_intersection(&[1, 1], 1, 3), 3);
        assert_eq!(self_intersection(&[4, 4, 4], 6, 1), 0);
        assert_eq!(self_intersection(&[3, 5, 4], 6, 4), 0);
    }

    #[test]
    fn correlation_sides_agree() {
        let r = fermat(4, Field::prime(7).unwrap());
        let i = primary(&r, &["x^3", "y^3", "z^2"]);
        for k in 0..=8 {
            let c = correlation_dims(&r, &i, k).unwrap();
            assert_eq!(c.sections, c.h1_rel, "k={k}");
        }
    }

    #[test]
    fn cech_dims() {
        let r = fermat(3, Field::Rational);
        let pair = select_pair(&r, 0).unwrap();
        assert_eq!(cech_h1_dim(&r, 0, &pair, None).unwrap().0, 1);
        assert_eq!(cech_h1_dim(&r, 1, &pair, None).unwrap().0, 0);
        assert_eq!(cech_h1_dim(&r, -1, &pair, None).unwrap().0, 3);
    }

    #[test]
    fn random_pair_when_coordinates_fail() {
        // (0:0:1) lies on the curve, so (x, y) is not a parameter pair
        let r = GradedRing::from_text(
            Field::prime(101).unwrap(),
            &["x", "y", "z"],
            "x*z^2 + y^3 + x^3",
        )
        .unwrap();
        let pair = select_pair(&r, 7).unwrap();
        assert_ne!(pair.u, r.var(0));
        assert_eq!(cech_h1_dim(&r, 0, &pair, None).unwrap().0, 1);
        assert_eq!(select_pair(&r, 7).unwrap(), pair);
    }

    #[test]
    fn component_test_on_split_example() {
        let r = fermat(3, Field::Rational);
        let i = primary(&r, &["x^4", "xy", "y^2"]);
        let rel = RelationVector {
            components: ["0", "y", "-x"].iter().map(|s| r.parse(s).unwrap()).collect(),
            degree: 3,
        };
        assert!(rel.is_relation_of(&r, &i));
        let pair = select_pair(&r, 0).unwrap();
        let yes = r.parse("y*z^2").unwrap();
        let no = r.parse("x*z^2").unwrap();
        assert!(forcing_component_zero(&r, &i, &yes, 3, &rel, &pair, None).unwrap().vanishes);
        assert!(!forcing_component_zero(&r, &i, &no, 3, &rel, &pair, None).unwrap().vanishes);
        let inside = r.parse("x*y*z").unwrap();
        assert!(forcing_component_zero(&r, &i, &inside, 3, &rel, &pair, None).unwrap().vanishes);
    }
}
