//! Degree-wise syzygy spaces and the questions built on them: ideal
//! membership, primary tests, bracket powers, minimal relations, the
//! rank-two cross-product quotient and splitting over a two-variable subring.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::ring::{is_power_of, GradedRing, Monomial, Polynomial};

/// Homogeneous generators of an ideal of `R`, stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    gens: Vec<Polynomial>,
    /// Generators as given, before reduction modulo `F`.
    input: Vec<Polynomial>,
    degrees: Vec<i64>,
    witness: Option<i64>,
}

impl IdealData {
    pub fn new(ring: &GradedRing, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::input("an ideal needs at least one generator"));
        }
        let mut out = Vec::with_capacity(gens.len());
        let mut degrees = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != ring.nvars() || g.field() != ring.field() {
                return Err(Error::input(format!("generator {} is not in the ring", i + 1)));
            }
            let d = g
                .homogeneous_degree()
                .ok_or_else(|| Error::input(format!("generator {} is not homogeneous", i + 1)))?;
            let nf = ring.normal_form(g);
            if nf.is_zero() {
                return Err(Error::input(format!("generator {} is zero in the ring", i + 1)));
            }
            out.push(nf);
            degrees.push(d as i64);
        }
        Ok(IdealData {
            gens: out,
            input: gens,
            degrees,
            witness: None,
        })
    }

    pub fn from_text(ring: &GradedRing, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        IdealData::new(ring, polys)
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// Smallest `N` with `R_N` inside the ideal, when known.
    pub fn witness(&self) -> Option<i64> {
        self.witness
    }

    pub fn with_witness(mut self, n: i64) -> Self {
        self.witness = Some(n);
        self
    }

    /// Runs [`primary_check`] and records the witness; `NotPrimary` if none is found.
    pub fn certify_primary(self, ring: &GradedRing, n_max: Option<i64>) -> Result<Self> {
        let bound = n_max.unwrap_or_else(|| default_primary_bound(ring, &self));
        match primary_check(ring, &self, Some(bound))? {
            Some(n) => Ok(self.with_witness(n)),
            None => Err(Error::NotPrimary { bound }),
        }
    }
}

/// A syzygy `(r_1, ..., r_n)` of total degree `m`, i.e. `sum r_i f_i = 0` with `deg r_i = m - d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector {
    pub components: Vec<Polynomial>,
    pub degree: i64,
}

impl RelationVector {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> RelationVector {
        RelationVector {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
            degree: self.degree,
        }
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| ring.format(p)).collect();
        format!("({})", parts.join(", "))
    }

    /// Checks `sum r_i f_i = 0` in the ring.
    pub fn is_relation_of(&self, ring: &GradedRing, ideal: &IdealData) -> bool {
        let mut sum = ring.zero();
        for (r, f) in self.components.iter().zip(ideal.gens()) {
            sum = sum.add(&r.mul(f));
        }
        self.components.len() == ideal.len() && ring.normal_form(&sum).is_zero()
    }
}

/// `max(sum d_i, 2 max d_i) + delta`. Two general elements of top degree
/// already force `R_N` into the ideal below this degree, so the bound is
/// never the reason a primary ideal is missed.
pub fn default_primary_bound(ring: &GradedRing, ideal: &IdealData) -> i64 {
    let max = ideal.degrees().iter().copied().max().unwrap_or(0);
    ideal.degree_sum().max(2 * max) + ring.delta()
}

/// Columns span `I_m`: the block matrix `R_{m-d_1} + ... + R_{m-d_n} -> R_m`.
pub fn ideal_matrix(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<Matrix> {
    let blocks = ideal
        .gens()
        .iter()
        .zip(ideal.degrees())
        .map(|(g, &d)| ring.mult_matrix_with_degree(g, d, m - d))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Matrix::hstack(ring.field(), ring.hilbert(m), &refs)
}

pub fn ideal_dim(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<usize> {
    Ok(ideal_matrix(ring, ideal, m)?.rank())
}

/// `dim (R/I)_m`.
pub fn quotient_dim(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<usize> {
    Ok(ring.hilbert(m) - ideal_dim(ring, ideal, m)?)
}

fn split_components(
    ring: &GradedRing,
    ideal: &IdealData,
    m: i64,
    v: &[Scalar],
) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(ideal.len());
    let mut offset = 0;
    for &d in ideal.degrees() {
        let len = ring.hilbert(m - d);
        out.push(ring.from_coordinates(&v[offset..offset + len], m - d));
        offset += len;
    }
    out
}

fn join_components(
    ring: &GradedRing,
    ideal: &IdealData,
    m: i64,
    comps: &[Polynomial],
) -> Result<Vec<Scalar>> {
    let mut v = Vec::new();
    for (c, &d) in comps.iter().zip(ideal.degrees()) {
        v.extend(ring.coordinates(c, m - d)?);
    }
    Ok(v)
}

/// Canonical basis of `Rel(f_1..f_n)_m`.
pub fn relations(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<Vec<RelationVector>> {
    let a = ideal_matrix(ring, ideal, m)?;
    Ok(a.nullspace()
        .into_iter()
        .map(|v| RelationVector {
            components: split_components(ring, ideal, m, &v),
            degree: m,
        })
        .collect())
}

pub fn relation_dim(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<usize> {
    let a = ideal_matrix(ring, ideal, m)?;
    Ok(a.cols() - a.rank())
}

/// Coefficients `s_i` with `sum s_i f_i = f0`, or `None` when `f0` is not in the ideal.
pub fn membership(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
) -> Result<Option<Vec<Polynomial>>> {
    let f0 = ring.normal_form(f0);
    if f0.is_zero() {
        return Ok(Some(ideal.gens().iter().map(|_| ring.zero()).collect()));
    }
    let m = f0
        .homogeneous_degree()
        .ok_or_else(|| Error::input("element is not homogeneous"))? as i64;
    membership_in_degree(ring, ideal, &f0, m)
}

/// As [`membership`] with the degree given explicitly, so that zero is accepted in any degree.
pub fn membership_in_degree(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    m: i64,
) -> Result<Option<Vec<Polynomial>>> {
    let a = ideal_matrix(ring, ideal, m)?;
    let b = ring.coordinates(f0, m)?;
    Ok(a.solve(&b)?.map(|x| split_components(ring, ideal, m, &x)))
}

/// Smallest `N <= n_max` with `R_N` contained in `I`, or `None`.
pub fn primary_check(ring: &GradedRing, ideal: &IdealData, n_max: Option<i64>) -> Result<Option<i64>> {
    let bound = n_max.unwrap_or_else(|| default_primary_bound(ring, ideal));
    for n in 0..=bound {
        if quotient_dim(ring, ideal, n)? == 0 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `I^[q] = (f_1^q, ..., f_n^q)` for `q` a power of the characteristic.
pub fn bracket_power(ring: &GradedRing, ideal: &IdealData, q: u64) -> Result<IdealData> {
    let p = ring.characteristic() as u64;
    if p == 0 {
        return Err(Error::input("bracket powers need positive characteristic"));
    }
    if q == 1 {
        return Ok(ideal.clone());
    }
    if !is_power_of(q, p) {
        return Err(Error::input(format!("{q} is not a power of {p}")));
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| ring.frobenius_power(g, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealData {
        input: gens.clone(),
        gens,
        degrees: ideal.degrees().iter().map(|&d| d * q as i64).collect(),
        witness: None,
    })
}

/// Whether the components of `r` generate an `R_+`-primary ideal.
pub fn is_primary_relation(ring: &GradedRing, r: &RelationVector) -> Result<bool> {
    let comps: Vec<Polynomial> = r
        .components
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect();
    if comps.len() < 2 {
        return Ok(false);
    }
    let comp_ideal = IdealData::new(ring, comps)?;
    Ok(primary_check(ring, &comp_ideal, None)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRelation {
    pub degree: i64,
    pub relation: RelationVector,
    pub primary: bool,
    /// `dim Rel_k` at the minimal degree.
    pub dim: usize,
}

/// The smallest `k` with `Rel_k != 0` and the first canonical basis vector there.
///
/// Testing one vector for primariness suffices: with `S = sum d_i` and rank two,
/// `2k < S` and `dim Rel_k >= 2` would give two independent sections of a line
/// subbundle of negative degree difference, so no relation of degree `k` can be
/// nowhere vanishing; at `2k = S` either all nonzero relations are primary or
/// none is.
pub fn min_relation(ring: &GradedRing, ideal: &IdealData) -> Result<Option<MinRelation>> {
    let n = ideal.len();
    if n < 2 {
        return Err(Error::input("minimal relations need at least two generators"));
    }
    let d = ideal.degrees();
    let mut koszul = i64::MAX;
    for i in 0..n {
        for j in i + 1..n {
            koszul = koszul.min(d[i] + d[j]);
        }
    }
    let start = d.iter().copied().min().unwrap_or(0).max(0);
    for k in start..=koszul {
        let rels = relations(ring, ideal, k)?;
        if let Some(first) = rels.first() {
            let primary = is_primary_relation(ring, first)?;
            return Ok(Some(MinRelation {
                degree: k,
                relation: first.clone(),
                primary,
                dim: rels.len(),
            }));
        }
    }
    Ok(None)
}

/// For `n = 3`: the `t` with `r x s = t (f_1, f_2, f_3)`, of degree `deg r + deg s - sum d_i`.
pub fn cross_quotient(
    ring: &GradedRing,
    ideal: &IdealData,
    r: &RelationVector,
    s: &RelationVector,
) -> Result<Polynomial> {
    if ideal.len() != 3 || r.components.len() != 3 || s.components.len() != 3 {
        return Err(Error::input("the cross quotient needs three generators"));
    }
    let (a, b) = (&r.components, &s.components);
    let cross = [
        ring.normal_form(&a[1].mul(&b[2]).sub(&a[2].mul(&b[1]))),
        ring.normal_form(&a[2].mul(&b[0]).sub(&a[0].mul(&b[2]))),
        ring.normal_form(&a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))),
    ];
    let e = r.degree + s.degree - ideal.degree_sum();
    if e < 0 {
        return if cross.iter().all(Polynomial::is_zero) {
            Ok(ring.zero())
        } else {
            Err(Error::internal("cross product of relations is nonzero in negative degree"))
        };
    }
    let blocks = ideal
        .gens()
        .iter()
        .zip(ideal.degrees())
        .map(|(g, &d)| ring.mult_matrix_with_degree(g, d, e))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let stacked = Matrix::vstack(ring.field(), ring.hilbert(e), &refs)?;
    let mut rhs = Vec::new();
    for (c, &d) in cross.iter().zip(ideal.degrees()) {
        rhs.extend(ring.coordinates(c, e + d)?);
    }
    match stacked.solve(&rhs)? {
        Some(t) => Ok(ring.from_coordinates(&t, e)),
        None => Err(Error::internal(
            "cross product is not a multiple of the generators; an input is not a relation",
        )),
    }
}

/// Minimal syzygies of an ideal generated inside a two-variable polynomial subring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// The two variables (indices into the ring's variables).
    pub variables: [usize; 2],
    /// Total degrees `k_1 <= ... <= k_{n-1}`.
    pub degrees: Vec<i64>,
    /// Minimal generators, as relations with components in the full ring.
    pub generators: Vec<RelationVector>,
}

/// Hilbert-Burch splitting: the syzygy module over `K[u,v]` is free of rank
/// `n-1`, found degree by degree as vectors not generated in lower degree.
pub fn syzygy_splitting(ring: &GradedRing, ideal: &IdealData) -> Result<Splitting> {
    let n = ideal.len();
    if n < 2 {
        return Err(Error::input("splitting needs at least two generators"));
    }
    let mut used = vec![false; ring.nvars()];
    for g in &ideal.input {
        for i in g.variables_used() {
            used[i] = true;
        }
    }
    let vars: Vec<usize> = (0..ring.nvars()).filter(|&i| used[i]).collect();
    let variables = match vars.as_slice() {
        [a, b] => [*a, *b],
        _ => {
            return Err(Error::input(
                "the generators must involve exactly two of the variables",
            ))
        }
    };
    // the generators must be taken in the polynomial ring, before reduction by F
    let names = vec![ring.vars()[variables[0]].clone(), ring.vars()[variables[1]].clone()];
    let plane = GradedRing::polynomial_ring(ring.field(), names)?;
    let mut to_plane = vec![0usize; ring.nvars()];
    to_plane[variables[0]] = 0;
    to_plane[variables[1]] = 1;
    let gens2: Vec<Polynomial> = ideal
        .input
        .iter()
        .map(|g| g.remap(2, &to_plane))
        .collect();
    let ideal2 = IdealData::new(&plane, gens2)?;
    if primary_check(&plane, &ideal2, None)?.is_none() {
        return Err(Error::input(
            "the generators are not primary in the two-variable polynomial ring",
        ));
    }
    let total = ideal.degree_sum();
    let mut found: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    let start = ideal.degrees().iter().copied().min().unwrap_or(0);
    for k in start..=total {
        if found.len() == n - 1 {
            break;
        }
        let kernel = plane_relations(&plane, &ideal2, k)?;
        if kernel.is_empty() {
            continue;
        }
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        for (kj, g) in &found {
            for mono in Monomial::all_of_degree(2, (k - kj) as u32) {
                let comps: Vec<Polynomial> = g
                    .iter()
                    .map(|c| c.mul_monomial(&mono, &plane.field().one()))
                    .collect();
                span.push(join_components(&plane, &ideal2, k, &comps)?);
            }
        }
        let mut rank = rank_of(&plane, &span);
        for v in kernel {
            span.push(v.clone());
            let r = rank_of(&plane, &span);
            if r > rank {
                rank = r;
                found.push((k, split_components(&plane, &ideal2, k, &v)));
            } else {
                span.pop();
            }
        }
    }
    let degrees: Vec<i64> = found.iter().map(|(k, _)| *k).collect();
    if degrees.len() != n - 1 || degrees.iter().sum::<i64>() != total {
        return Err(Error::internal(format!(
            "syzygy degrees {degrees:?} violate the Hilbert-Burch count for degree sum {total}"
        )));
    }
    let back = [variables[0], variables[1]];
    let generators = found
        .into_iter()
        .map(|(k, comps)| RelationVector {
            components: comps.iter().map(|c| ring.normal_form(&c.remap(ring.nvars(), &back))).collect(),
            degree: k,
        })
        .collect();
    Ok(Splitting {
        variables,
        degrees,
        generators,
    })
}

/// The splitting degrees `k_1..k_{n-1}` of [`syzygy_splitting`].
pub fn poly_syzygy_splitting(ring: &GradedRing, ideal: &IdealData) -> Result<Vec<i64>> {
    Ok(syzygy_splitting(ring, ideal)?.degrees)
}

fn plane_relations(plane: &GradedRing, ideal: &IdealData, k: i64) -> Result<Vec<Vec<Scalar>>> {
    Ok(ideal_matrix(plane, ideal, k)?.nullspace())
}

fn rank_of(ring: &GradedRing, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(ring.field(), vectors.to_vec())
        .expect("vectors of equal length")
        .rank()
}

/// Serializable summary of a relation for reports.
#[derive(Clone, Debug, Serialize)]
pub struct RelationSummary {
    pub degree: i64,
    pub components: Vec<String>,
    pub primary: bool,
}

impl RelationSummary {
    pub fn new(ring: &GradedRing, r: &RelationVector, primary: bool) -> Self {
        RelationSummary {
            degree: r.degree,
            components: r.components.iter().map(|c| ring.format(c)).collect(),
            primary,
        }
    }
}
