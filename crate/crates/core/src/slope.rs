//! Slopes, semistability certificates read off from relation degrees, and
//! the numerical inclusion/exclusion bounds for tight and solid closure.
//!
//! Conventions: an inclusion entry promises `R_m` inside the closure for all
//! `m >= first_degree`; an exclusion entry promises that closure and ideal
//! agree in every degree `m <= last_degree`.

use num::{Rational64, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::GradedRing;
use crate::syzygy::{self, IdealData, RelationSummary};

/// How far a conclusion is guaranteed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Validity {
    /// Exact statement in characteristic zero.
    CharZero,
    /// Holds for all sufficiently large primes, with no explicit bound.
    PLarge,
    /// Holds in every characteristic.
    AllP,
    /// Brute-force evidence only.
    EvidenceOnly,
}

impl Validity {
    /// `CharZero` over the rationals, `PLarge` over a prime field.
    pub fn for_char(characteristic: u32) -> Self {
        if characteristic == 0 {
            Validity::CharZero
        } else {
            Validity::PLarge
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Inclusion,
    Exclusion,
}

fn ratio_string(r: &Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

fn ceil(r: Rational64) -> i64 {
    r.ceil().to_integer()
}

fn floor(r: Rational64) -> i64 {
    r.floor().to_integer()
}

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// One evaluated bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub rule: &'static str,
    pub direction: Direction,
    /// Exact threshold as printed in the statement of the rule.
    #[serde(serialize_with = "ser_ratio")]
    pub threshold: Rational64,
    /// Whether the exclusion statement reads `m < threshold` (otherwise `m <= threshold`).
    pub strict: bool,
    /// Inclusion: first degree covered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_degree: Option<i64>,
    /// Exclusion: last degree covered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_degree: Option<i64>,
    pub validity: Validity,
    pub applicable: bool,
    /// Witness data, or why the rule does not apply.
    pub note: String,
    pub citation: &'static str,
}

impl BoundEntry {
    fn inclusion(rule: &'static str, threshold: Rational64, validity: Validity, citation: &'static str) -> Self {
        BoundEntry {
            rule,
            direction: Direction::Inclusion,
            threshold,
            strict: false,
            first_degree: Some(ceil(threshold)),
            last_degree: None,
            validity,
            applicable: true,
            note: String::new(),
            citation,
        }
    }

    fn exclusion(
        rule: &'static str,
        threshold: Rational64,
        strict: bool,
        validity: Validity,
        citation: &'static str,
    ) -> Self {
        let last = if strict { ceil(threshold) - 1 } else { floor(threshold) };
        BoundEntry {
            rule,
            direction: Direction::Exclusion,
            threshold,
            strict,
            first_degree: None,
            last_degree: Some(last),
            validity,
            applicable: true,
            note: String::new(),
            citation,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.applicable = false;
        self.note = reason.into();
        self
    }

    /// Whether this entry settles degree `m`.
    pub fn covers(&self, m: i64) -> bool {
        self.applicable
            && match self.direction {
                Direction::Inclusion => self.first_degree.is_some_and(|f| m >= f),
                Direction::Exclusion => self.last_degree.is_some_and(|l| m <= l),
            }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SemistabilityStatus {
    StronglySemistable,
    Semistable,
    NotSemistable,
    Decomposable,
    Unknown,
}

/// Everything the bounds need to know about an instance, as plain numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsInput {
    pub degrees: Vec<i64>,
    pub delta: i64,
    pub genus: i64,
    pub characteristic: u32,
    /// Indecomposability of the relation sheaf, asserted by the caller.
    pub indecomposable: bool,
    /// Smallest total degree of a nonzero relation, when computed.
    pub k_min: Option<i64>,
    /// Degree of a primary relation of minimal degree, when one was found.
    pub primary_k: Option<i64>,
    pub semistability: Option<SemistabilityStatus>,
}

impl BoundsInput {
    pub fn numeric(degrees: &[i64], delta: i64, characteristic: u32, indecomposable: bool) -> Self {
        BoundsInput {
            degrees: degrees.to_vec(),
            delta,
            genus: (delta - 1) * (delta - 2) / 2,
            characteristic,
            indecomposable,
            k_min: None,
            primary_k: None,
            semistability: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub degrees: Vec<i64>,
    pub delta: i64,
    pub genus: i64,
    pub characteristic: u32,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn entry(&self, rule: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.rule == rule)
    }

    pub fn applicable(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.applicable)
    }

    /// Smallest applicable inclusion degree.
    pub fn best_inclusion(&self) -> Option<&BoundEntry> {
        self.applicable()
            .filter(|e| e.direction == Direction::Inclusion)
            .min_by_key(|e| (e.first_degree, std::cmp::Reverse(e.validity == Validity::AllP)))
    }

    /// Largest applicable exclusion degree.
    pub fn best_exclusion(&self) -> Option<&BoundEntry> {
        self.applicable()
            .filter(|e| e.direction == Direction::Exclusion)
            .max_by_key(|e| (e.last_degree, e.validity == Validity::AllP))
    }

    /// Every applicable exclusion ends below every applicable inclusion.
    pub fn is_order_consistent(&self) -> bool {
        let max_ex = self
            .applicable()
            .filter_map(|e| e.last_degree)
            .max();
        let min_in = self
            .applicable()
            .filter_map(|e| e.first_degree)
            .min();
        match (max_ex, min_in) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }
}

const CITE_SMITH_INCLUSION: &str =
    "Smith's inclusion bounds for graded domains: R_{>= dim(R) max d_i} and R_{>= d_1+...+d_n} lie in I*";
const CITE_EXCLUSION_GEO: &str =
    "exclusion bound: deg f0 <= min d_i implies f0 in I* only if f0 in I";
const CITE_PAIR: &str =
    "maximal slope estimate mu_max <= delta (d_{n-1} + d_n) gives R_m in I* for m >= d_{n-1} + d_n";
const CITE_SEMISTABLE: &str =
    "semistable vanishing: a semistable relation sheaf gives I* = I + R_{>= ceil(sum d / (n-1))}";
const CITE_PARAMETER: &str =
    "parameter ideals: (f1,f2)* = (f1,f2) + R_{>= d1+d2} in characteristic 0 or p > 2(g-1)/delta";
const CITE_GENUS: &str =
    "indecomposable rank-two relation sheaf: inclusion for m >= sum d/2 + (g-1)/delta, exclusion for m < sum d/2 - (g-1)/delta";
const CITE_DEGREE: &str =
    "indecomposable rank-two relation sheaf on a plane curve: inclusion for m >= sum d/2 + (delta-3)/2, exclusion for m < sum d/2 - (delta-3)/2";
const CITE_RELATION_INCLUSION: &str =
    "no relation of degree k <= sum d/2 + (g-1)/delta gives R_m in I* for m >= sum d - k + (g-1)/delta";
const CITE_GLOBAL_AMPLE: &str =
    "no relation of total degree k on a plane curve: F(-m) ample and I* = I in degrees m <= k - delta + 2";
const CITE_AMPLE_RELATION: &str =
    "no relation of total degree k: F(-m) ample for m < k - (2n-3) g / ((n-1) delta) + 1/delta";
const CITE_ELLIPTIC: &str =
    "elliptic curve with indecomposable relation sheaf: I* = I + R_{>= ceil(sum d / (n-1))}";
const CITE_PRIMARY_EXCLUSION: &str =
    "primary relation of degree k <= sum d/2: m < k excluded, m >= sum d - k included";

/// Evaluates every bound on plain numerical data.
pub fn degree_bounds_numeric(input: &BoundsInput) -> BoundsReport {
    let mut d = input.degrees.clone();
    d.sort_unstable();
    let n = d.len() as i64;
    let s: i64 = d.iter().sum();
    let delta = input.delta;
    let g = input.genus;
    let p = input.characteristic;
    let char_tag = Validity::for_char(p);
    let mut entries = Vec::new();

    let max_d = *d.last().unwrap_or(&0);
    let min_d = *d.first().unwrap_or(&0);
    entries.push(BoundEntry::inclusion("smith-dimension-max", rat(2 * max_d), Validity::AllP, CITE_SMITH_INCLUSION));
    entries.push(BoundEntry::inclusion("smith-degree-sum", rat(s), Validity::AllP, CITE_SMITH_INCLUSION));
    entries.push(BoundEntry::exclusion("exclusion-min-degree", rat(min_d), false, Validity::AllP, CITE_EXCLUSION_GEO));
    if n >= 2 {
        let pair = d[d.len() - 2] + d[d.len() - 1];
        entries.push(BoundEntry::inclusion("max-pair-inclusion", rat(pair), Validity::AllP, CITE_PAIR));
    }

    // vanishing thresholds
    if n >= 2 {
        let t = Rational64::new(s, n - 1);
        if n == 2 {
            entries.push(BoundEntry::inclusion("parameter-vanishing", t, Validity::AllP, CITE_PARAMETER));
            let ex = BoundEntry::exclusion("parameter-vanishing", t, true, Validity::CharZero, CITE_PARAMETER);
            let explicit = Rational64::new(2 * (g - 1), delta.max(1));
            entries.push(if p == 0 {
                ex
            } else if rat(p as i64) > explicit {
                BoundEntry {
                    validity: Validity::AllP,
                    ..ex
                }
                .note(format!("p = {p} > 2(g-1)/delta = {}", ratio_string(&explicit)))
            } else {
                ex.inapplicable(format!("p = {p} <= 2(g-1)/delta = {}", ratio_string(&explicit)))
            });
        } else {
            let status = input.semistability;
            let (inc_validity, ex_validity) = match status {
                Some(SemistabilityStatus::StronglySemistable) => (Validity::AllP, char_tag),
                _ => (char_tag, char_tag),
            };
            let inc = BoundEntry::inclusion("semistable-vanishing", t, inc_validity, CITE_SEMISTABLE);
            let ex = BoundEntry::exclusion("semistable-vanishing", t, true, ex_validity, CITE_SEMISTABLE);
            match status {
                Some(SemistabilityStatus::StronglySemistable) | Some(SemistabilityStatus::Semistable) => {
                    let note = format!("{status:?} certificate").to_lowercase();
                    entries.push(inc.note(note.clone()));
                    entries.push(ex.note(note));
                }
                _ => {
                    entries.push(inc.inapplicable("no semistability certificate"));
                    entries.push(ex.inapplicable("no semistability certificate"));
                }
            }
        }
    }

    if n == 3 {
        let half = Rational64::new(s, 2);
        let b = Rational64::new(g - 1, delta.max(1));
        let c = Rational64::new(delta - 3, 2);
        let reason = "indecomposability not asserted";
        let mut rules = vec![
            BoundEntry::inclusion("indecomposable-genus-bound", half + b, char_tag, CITE_GENUS),
            BoundEntry::exclusion("indecomposable-genus-bound", half - b, true, char_tag, CITE_GENUS),
            BoundEntry::inclusion("indecomposable-degree-bound", half + c, char_tag, CITE_DEGREE),
            BoundEntry::exclusion("indecomposable-degree-bound", half - c, true, char_tag, CITE_DEGREE),
        ];
        if !input.indecomposable {
            rules = rules.into_iter().map(|e| e.inapplicable(reason)).collect();
        } else if g < 1 {
            // rank-two bundles on a rational curve split
            rules = rules.into_iter().map(|e| e.inapplicable("genus 0 curve has no indecomposable rank-two bundle")).collect();
        }
        entries.extend(rules);

        let rel_inc = match input.k_min {
            Some(k_min) => {
                let k0 = (k_min - 1).min(floor(half + b));
                BoundEntry::inclusion("relation-degree-inclusion", rat(s - k0) + b, char_tag, CITE_RELATION_INCLUSION)
                    .note(format!("no relation in degree {k0}"))
            }
            None => BoundEntry::inclusion("relation-degree-inclusion", Rational64::zero(), char_tag, CITE_RELATION_INCLUSION)
                .inapplicable("minimal relation degree not computed"),
        };
        entries.push(rel_inc);

        let prim = match input.primary_k {
            Some(k) if 2 * k <= s => vec![
                BoundEntry::exclusion("primary-relation", rat(k), true, char_tag, CITE_PRIMARY_EXCLUSION)
                    .note(format!("primary relation of degree {k}")),
                BoundEntry::inclusion("primary-relation", rat(s - k), char_tag, CITE_PRIMARY_EXCLUSION)
                    .note(format!("primary relation of degree {k}")),
            ],
            Some(k) => vec![
                BoundEntry::exclusion("primary-relation", rat(k), true, char_tag, CITE_PRIMARY_EXCLUSION)
                    .inapplicable(format!("primary relation degree {k} exceeds sum d/2")),
            ],
            None => vec![
                BoundEntry::exclusion("primary-relation", Rational64::zero(), true, char_tag, CITE_PRIMARY_EXCLUSION)
                    .inapplicable("no primary relation of minimal degree"),
            ],
        };
        entries.extend(prim);
    }

    if n >= 2 {
        match input.k_min {
            Some(k_min) => {
                let k = k_min - 1;
                let global = BoundEntry::exclusion("global-relation-ample", rat(k - delta + 2), false, char_tag, CITE_GLOBAL_AMPLE);
                // the comparison k - delta + 2 <= k - 2g/delta needs delta >= 2
                entries.push(if delta >= 2 {
                    global.note(format!("no relation in degree {k}"))
                } else {
                    global.inapplicable("needs a curve of degree at least 2")
                });
                let t = rat(k) - Rational64::new((2 * n - 3) * g, (n - 1) * delta.max(1)) + Rational64::new(1, delta.max(1));
                entries.push(
                    BoundEntry::exclusion("ample-relation-criterion", t, true, char_tag, CITE_AMPLE_RELATION)
                        .note(format!("no relation in degree {k}")),
                );
            }
            None => {
                entries.push(
                    BoundEntry::exclusion("global-relation-ample", Rational64::zero(), false, char_tag, CITE_GLOBAL_AMPLE)
                        .inapplicable("minimal relation degree not computed"),
                );
                entries.push(
                    BoundEntry::exclusion("ample-relation-criterion", Rational64::zero(), true, char_tag, CITE_AMPLE_RELATION)
                        .inapplicable("minimal relation degree not computed"),
                );
            }
        }
    }

    if delta == 3 && n >= 2 {
        let t = Rational64::new(s, n - 1);
        let inc = BoundEntry::inclusion("elliptic-indecomposable", t, Validity::AllP, CITE_ELLIPTIC);
        let ex = BoundEntry::exclusion("elliptic-indecomposable", t, true, Validity::AllP, CITE_ELLIPTIC);
        if input.indecomposable {
            entries.push(inc);
            entries.push(ex);
        } else {
            entries.push(inc.inapplicable("indecomposability not asserted"));
            entries.push(ex.inapplicable("indecomposability not asserted"));
        }
    }

    BoundsReport {
        degrees: d,
        delta,
        genus: g,
        characteristic: p,
        entries,
    }
}

/// Slope data of the dual relation sheaf `F` and of `R`, in exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeData {
    pub twist: i64,
    /// `mu(F(0)) = delta sum d / (n-1)`.
    #[serde(serialize_with = "ser_ratio")]
    pub mu_f0: Rational64,
    /// `mu(F(-m)) = mu(F(0)) - m delta`.
    #[serde(serialize_with = "ser_ratio")]
    pub mu_f: Rational64,
    /// `mu(R(m)) = -mu(F(-m))`.
    #[serde(serialize_with = "ser_ratio")]
    pub mu_rel: Rational64,
    /// Upper estimate for the maximal slope of `F(0)`: `delta (d_{n-1} + d_n)`.
    pub mu_max_upper: i64,
    /// Lower estimate for the minimal slope of `F(0)`: `delta min d_i`.
    pub mu_min_lower: i64,
}

pub fn slope_data(degrees: &[i64], delta: i64, m: i64) -> Result<SlopeData> {
    let n = degrees.len() as i64;
    if n < 2 {
        return Err(Error::input("slopes need at least two generators"));
    }
    let mut d = degrees.to_vec();
    d.sort_unstable();
    let s: i64 = d.iter().sum();
    let mu_f0 = Rational64::new(delta * s, n - 1);
    let mu_f = mu_f0 - rat(m * delta);
    Ok(SlopeData {
        twist: m,
        mu_f0,
        mu_f,
        mu_rel: -mu_f,
        mu_max_upper: delta * (d[d.len() - 2] + d[d.len() - 1]),
        mu_min_lower: delta * d[0],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SemistabilityCertificate {
    pub status: SemistabilityStatus,
    /// Smallest degree of a nonzero relation.
    pub k_min: Option<i64>,
    /// `dim Rel_{k_min}`.
    pub relation_dim: usize,
    pub relation: Option<RelationSummary>,
    /// `(g-1)/delta`, the gap allowed by the genus.
    #[serde(serialize_with = "ser_ratio")]
    pub genus_gap: Rational64,
    pub reason: String,
}

/// Pure classification from `sum d`, `(g-1)/delta` and the minimal relation.
pub fn classify_semistability(
    degree_sum: i64,
    genus_gap: Rational64,
    k_min: i64,
    primary: bool,
) -> (SemistabilityStatus, String) {
    let half = Rational64::new(degree_sum, 2);
    let k = rat(k_min);
    if k < half - genus_gap {
        (
            SemistabilityStatus::Decomposable,
            format!("relation of degree {k_min} < sum d/2 - (g-1)/delta = {}", ratio_string(&(half - genus_gap))),
        )
    } else if k < half {
        (
            SemistabilityStatus::NotSemistable,
            format!("destabilizing relation of degree {k_min} < sum d/2 = {}", ratio_string(&half)),
        )
    } else if k == half && primary {
        (
            SemistabilityStatus::StronglySemistable,
            format!("primary relation of degree {k_min} = sum d/2"),
        )
    } else if k_min > ceil(half + genus_gap) {
        (
            SemistabilityStatus::Semistable,
            format!(
                "no relation in degree {} >= sum d/2 + (g-1)/delta = {}",
                k_min - 1,
                ratio_string(&(half + genus_gap))
            ),
        )
    } else {
        (
            SemistabilityStatus::Unknown,
            format!(
                "no relation below degree {k_min}, but the certificate needs none up to degree {} (sum d/2 + (g-1)/delta = {})",
                ceil(half + genus_gap),
                ratio_string(&(half + genus_gap))
            ),
        )
    }
}

/// Certificate for three generators of a primary ideal.
pub fn semistability_certificate(ring: &GradedRing, ideal: &IdealData) -> Result<SemistabilityCertificate> {
    if ideal.len() != 3 {
        return Err(Error::input("semistability certificates need exactly three generators"));
    }
    if ideal.witness().is_none() {
        return Err(Error::input("the ideal has no primary witness"));
    }
    let inv = ring.invariants();
    let gap = Rational64::new(inv.genus - 1, inv.delta.max(1));
    let min = syzygy::min_relation(ring, ideal)?
        .ok_or_else(|| Error::internal("no relation up to the Koszul degree"))?;
    let (status, reason) = classify_semistability(ideal.degree_sum(), gap, min.degree, min.primary);
    Ok(SemistabilityCertificate {
        status,
        k_min: Some(min.degree),
        relation_dim: min.dim,
        relation: Some(RelationSummary::new(ring, &min.relation, min.primary)),
        genus_gap: gap,
        reason,
    })
}

/// Collects the numerical input for [`degree_bounds_numeric`] from a ring and ideal.
pub fn bounds_input(
    ring: &GradedRing,
    ideal: &IdealData,
    indecomposable: bool,
) -> Result<BoundsInput> {
    let inv = ring.invariants();
    let mut input = BoundsInput {
        degrees: ideal.degrees().to_vec(),
        delta: inv.delta,
        genus: inv.genus,
        characteristic: inv.characteristic,
        indecomposable,
        k_min: None,
        primary_k: None,
        semistability: None,
    };
    if ideal.len() >= 2 {
        if let Some(min) = syzygy::min_relation(ring, ideal)? {
            input.k_min = Some(min.degree);
            if min.primary {
                input.primary_k = Some(min.degree);
            }
        }
    }
    if ideal.len() == 3 && ideal.witness().is_some() {
        input.semistability = Some(semistability_certificate(ring, ideal)?.status);
    }
    Ok(input)
}

pub fn degree_bounds(ring: &GradedRing, ideal: &IdealData, indecomposable: bool) -> Result<BoundsReport> {
    if ideal.witness().is_none() {
        return Err(Error::input("the ideal has no primary witness"));
    }
    Ok(degree_bounds_numeric(&bounds_input(ring, ideal, indecomposable)?))
}

/// A plus-closure statement and whether its hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusAnnotation {
    pub rule: &'static str,
    pub statement: String,
    pub applies: bool,
    pub reason: String,
}

pub fn plus_closure_annotations(input: &BoundsInput) -> Result<Vec<PlusAnnotation>> {
    if input.characteristic == 0 {
        return Err(Error::input("plus closure annotations concern positive characteristic"));
    }
    let n = input.degrees.len() as i64;
    let s: i64 = input.degrees.iter().sum();
    let mut out = Vec::new();
    out.push(PlusAnnotation {
        rule: "elliptic-plus",
        statement: "on an elliptic curve tight closure, graded plus closure and plus closure coincide".into(),
        applies: input.delta == 3,
        reason: format!("delta = {}", input.delta),
    });
    if n == 3 {
        let (applies, reason) = match input.primary_k {
            Some(k) if 2 * k <= s => (true, format!("primary relation of degree {k} <= sum d/2 = {}", ratio_string(&Rational64::new(s, 2)))),
            Some(k) => (false, format!("primary relation of degree {k} > sum d/2")),
            None => (false, "no primary relation of minimal degree".into()),
        };
        out.push(PlusAnnotation {
            rule: "primary-relation-plus",
            statement: "tight closure equals graded plus closure".into(),
            applies,
            reason,
        });
        let t = Rational64::new(s, 2) + Rational64::new(2 * input.genus - 2, input.delta.max(1));
        out.push(PlusAnnotation {
            rule: "indecomposable-plus",
            statement: format!("R_m lies in the graded plus closure for m >= {} (first degree {})", ratio_string(&t), ceil(t)),
            applies: input.indecomposable,
            reason: if input.indecomposable {
                "indecomposability asserted".into()
            } else {
                "indecomposability not asserted".into()
            },
        });
    }
    if n == 2 {
        out.push(PlusAnnotation {
            rule: "parameter-frobenius",
            statement: format!("elements of degree > {s} lie in the Frobenius closure"),
            applies: true,
            reason: "forcing class has positive degree and dies under Frobenius".into(),
        });
    }
    Ok(out)
}

/// Lossless conversion for reports that want a float alongside the exact value.
pub fn approx(r: &Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
