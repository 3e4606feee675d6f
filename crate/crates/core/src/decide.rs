//! Decision procedure for `f0 in (f_1, ..., f_n)*` on a plane curve cone.
//!
//! In characteristic zero the verdicts concern solid closure; over a prime
//! field they concern tight closure.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{self, ComponentTest, ParameterPair};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{GradedRing, Monomial, Polynomial};
use crate::slope::{self, Direction, SemistabilityStatus, Validity};
use crate::syzygy::{self, IdealData, RelationSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    InIdeal,
    InClosure,
    NotInClosure,
    Unknown,
}

impl Decision {
    pub fn is_in(self) -> bool {
        matches!(self, Decision::InIdeal | Decision::InClosure)
    }
}

/// Which closure operation a verdict speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    Solid,
    Tight,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub validity: Validity,
    pub closure: ClosureKind,
    pub rule: String,
    pub witness: Value,
    pub citations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct DecideOptions {
    /// Cap on Cech truncation levels; `None` picks a bound per twist.
    pub n_max: Option<i64>,
    /// Seed for the parameter pair when `(x, y)` is not usable.
    pub seed: u64,
    /// Indecomposability of the relation sheaf, asserted by the caller.
    pub indecomposable: bool,
}

const CITE_MEMBERSHIP: &str = "ideal membership by exact linear algebra: f0 = sum s_i f_i";
const CITE_AFFINE: &str =
    "f0 lies in the closure iff the complement of the forcing divisor is not affine";
const CITE_DEGREE_CRIT: &str = "parameter ideals: R_{>= d1+d2} lies in (f1,f2)*";
const CITE_PARAMETER_VANISHING: &str =
    "parameter ideals: (f1,f2)* = (f1,f2) + R_{>= d1+d2}, in characteristic p for p > 2(g-1)/delta";
const CITE_SPLITTING: &str =
    "split relation sheaf R(m) = sum L_j: f0 in I* iff for every j, deg(L_j) + m delta >= 0 or c_j = 0";
const CITE_SEMISTABLE: &str = "semistable relation sheaf: (f1,...,fn)* = (f1,...,fn) + R_{>= k} with k = sum d/(n-1)";
const CITE_STRONG_INCLUSION: &str =
    "primary relation of degree sum d/2: R_{>= k} + (f1,f2,f3) lies in the closure in every characteristic";
const CITE_EXACT_SEQUENCE: &str =
    "primary relation r of degree k: 0 -> O(m-k) -> R(m) -> O(m+k-sum d) -> 0; if deg < 0 and the image class c' != 0 then f0 is not in I*";
const CITE_PRIMARY_EXCLUSION: &str =
    "primary relation of degree k <= sum d/2: for m < k, f0 in I* only if f0 in I";
const CITE_ELLIPTIC_PLUS: &str =
    "on an elliptic curve, graded plus closure, plus closure and tight closure agree";

impl Verdict {
    fn new(
        ring: &GradedRing,
        decision: Decision,
        validity: Validity,
        rule: &str,
        witness: Value,
        citations: &[&str],
    ) -> Self {
        let mut cites: Vec<String> = citations.iter().map(|s| s.to_string()).collect();
        if matches!(decision, Decision::InClosure | Decision::NotInClosure) {
            cites.push(CITE_AFFINE.into());
        }
        Verdict {
            decision,
            validity,
            closure: if ring.characteristic() == 0 {
                ClosureKind::Solid
            } else {
                ClosureKind::Tight
            },
            rule: rule.into(),
            witness,
            citations: cites,
            annotations: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("verdicts serialize")
    }
}

fn check_ring(ring: &GradedRing) -> Result<()> {
    if ring.nvars() != 3 || !ring.is_hypersurface() {
        return Err(Error::input(
            "the decider works on K[x,y,z]/(F) for a single homogeneous F",
        ));
    }
    Ok(())
}

fn primary_ideal(ring: &GradedRing, ideal: &IdealData, opts: &DecideOptions) -> Result<IdealData> {
    if ideal.witness().is_some() {
        return Ok(ideal.clone());
    }
    ideal.clone().certify_primary(ring, opts.n_max)
}

fn element_degree(ring: &GradedRing, f0: &Polynomial) -> Result<Option<i64>> {
    let f = ring.normal_form(f0);
    if f.is_zero() {
        return Ok(None);
    }
    f.homogeneous_degree()
        .map(|d| Some(d as i64))
        .ok_or_else(|| Error::input("the element is not homogeneous"))
}

/// Decides `f0 in I*`, where the homogeneous `f0` has degree `m`.
pub fn decide(ring: &GradedRing, ideal: &IdealData, f0: &Polynomial, opts: &DecideOptions) -> Result<Verdict> {
    check_ring(ring)?;
    let ideal = primary_ideal(ring, ideal, opts)?;
    let mut verdict = decide_inner(ring, &ideal, f0, opts)?;
    if ring.delta() == 3 && ring.characteristic() != 0 {
        verdict
            .annotations
            .push(format!("tight closure = graded plus closure = plus closure ({CITE_ELLIPTIC_PLUS})"));
    }
    Ok(verdict)
}

fn decide_inner(ring: &GradedRing, ideal: &IdealData, f0: &Polynomial, opts: &DecideOptions) -> Result<Verdict> {
    let f0 = ring.normal_form(f0);
    let degree = element_degree(ring, &f0)?;
    // (1) membership
    if let Some(coeffs) = syzygy::membership(ring, ideal, &f0)? {
        let witness = json!({
            "coefficients": coeffs.iter().map(|c| ring.format(c)).collect::<Vec<_>>(),
        });
        return Ok(Verdict::new(ring, Decision::InIdeal, Validity::AllP, "membership", witness, &[CITE_MEMBERSHIP]));
    }
    let m = degree.expect("nonzero elements outside the ideal have a degree");
    let n = ideal.len();

    // (2) two generators
    if n == 2 {
        if let Some(v) = decide_parameter(ring, ideal, m) {
            return Ok(v);
        }
    }

    // (3) generators in a two-variable subring
    let split = match decide_split(ring, ideal, &f0, m, opts) {
        Ok(v) => v,
        Err(Error::StabilizationFailed { twist, bound }) => {
            return Ok(stabilization_unknown(ring, twist, bound));
        }
        Err(e) => return Err(e),
    };
    if n == 3 {
        let rel = match decide_by_relation(ring, ideal, &f0, m, opts) {
            Ok(v) => v,
            Err(Error::StabilizationFailed { twist, bound }) => {
                return Ok(stabilization_unknown(ring, twist, bound));
            }
            Err(e) => return Err(e),
        };
        match (split, rel) {
            (Some(mut s), Some(r)) => {
                if s.decision != r.decision {
                    return Err(Error::internal(format!(
                        "splitting verdict {:?} disagrees with relation verdict {:?} ({})",
                        s.decision, r.decision, r.rule
                    )));
                }
                if let Value::Object(map) = &mut s.witness {
                    map.insert("cross_check".into(), json!({"rule": r.rule, "decision": r.decision}));
                }
                return Ok(s);
            }
            (Some(s), None) => return Ok(s),
            (None, Some(r)) => return Ok(r),
            (None, None) => {}
        }
    } else if let Some(s) = split {
        return Ok(s);
    }

    // (5) aggregate numerical bounds
    decide_by_bounds(ring, ideal, m, opts)
}

fn stabilization_unknown(ring: &GradedRing, twist: i64, bound: i64) -> Verdict {
    Verdict::new(
        ring,
        Decision::Unknown,
        Validity::EvidenceOnly,
        "stabilization-failed",
        json!({
            "diagnostic": format!("Cech truncation for twist {twist} did not stabilize up to level {bound}; raise the cap"),
            "twist": twist,
            "cap": bound,
        }),
        &["Cech cohomology computed by truncation at (uv)^N"],
    )
}

/// Step (2): two generators. `None` when exclusion has no valid threshold for this prime.
pub fn decide_parameter(ring: &GradedRing, ideal: &IdealData, m: i64) -> Option<Verdict> {
    let d = ideal.degrees();
    let t = d[0] + d[1];
    let p = ring.characteristic();
    let witness = json!({ "threshold": t, "degree": m });
    if m >= t {
        let validity = if p == 0 { Validity::CharZero } else { Validity::AllP };
        return Some(Verdict::new(ring, Decision::InClosure, validity, "parameter-inclusion", witness, &[CITE_DEGREE_CRIT]));
    }
    let inv = ring.invariants();
    if p == 0 {
        return Some(Verdict::new(
            ring,
            Decision::NotInClosure,
            Validity::CharZero,
            "parameter-exclusion",
            witness,
            &[CITE_PARAMETER_VANISHING],
        ));
    }
    // p > 2(g-1)/delta
    if (p as i64) * inv.delta > 2 * (inv.genus - 1) {
        return Some(Verdict::new(
            ring,
            Decision::NotInClosure,
            Validity::AllP,
            "parameter-exclusion",
            json!({ "threshold": t, "degree": m, "prime_bound": format!("p = {p} > 2(g-1)/delta") }),
            &[CITE_PARAMETER_VANISHING],
        ));
    }
    None
}

/// Index of the variable missing from a pair, when `F` has a nonzero pure power in it.
fn free_over_pair(ring: &GradedRing, vars: [usize; 2]) -> bool {
    let third = (0..3).find(|i| !vars.contains(i)).expect("three variables");
    let delta = ring.delta() as u32;
    let mut exps = vec![0u32; 3];
    exps[third] = delta;
    ring.equation()
        .is_some_and(|f| !f.coefficient(&Monomial::new(exps)).is_zero())
}

/// Step (3): the splitting criterion. `None` when the generators do not live
/// in a two-variable subring over which `R` is finite and free.
pub fn decide_split(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    m: i64,
    opts: &DecideOptions,
) -> Result<Option<Verdict>> {
    let splitting = match syzygy::syzygy_splitting(ring, ideal) {
        Ok(s) => s,
        Err(e) if e.is_input_error() => return Ok(None),
        Err(e) => return Err(e),
    };
    if !free_over_pair(ring, splitting.variables) {
        return Ok(None);
    }
    let pair = cohomology::select_pair(ring, opts.seed)?;
    let tests = cohomology::split_component_tests(ring, ideal, f0, m, &splitting, &pair, opts.n_max)?;
    let inside = splitting
        .degrees
        .iter()
        .zip(&tests)
        .all(|(&k, t)| m >= k || t.vanishes);
    let (u, v) = pair.format(ring);
    let summands: Vec<Value> = splitting
        .degrees
        .iter()
        .zip(&tests)
        .map(|(&k, t)| {
            json!({
                "relation_degree": k,
                "summand_twist": m - k,
                "class_vanishes": t.vanishes,
                "cech_level": t.level,
            })
        })
        .collect();
    let witness = json!({
        "variables": splitting.variables.iter().map(|&i| ring.vars()[i].clone()).collect::<Vec<_>>(),
        "splitting_degrees": splitting.degrees,
        "generators": splitting.generators.iter().map(|g| RelationSummary::new(ring, g, false).components).collect::<Vec<_>>(),
        "summands": summands,
        "pair": [u, v],
    });
    let decision = if inside { Decision::InClosure } else { Decision::NotInClosure };
    Ok(Some(Verdict::new(
        ring,
        decision,
        Validity::for_char(ring.characteristic()),
        "splitting",
        witness,
        &[CITE_SPLITTING],
    )))
}

/// Step (4): three generators, driven by the minimal relation.
pub fn decide_by_relation(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    m: i64,
    opts: &DecideOptions,
) -> Result<Option<Verdict>> {
    if ideal.len() != 3 {
        return Ok(None);
    }
    let s = ideal.degree_sum();
    let cert = slope::semistability_certificate(ring, ideal)?;
    let min = syzygy::min_relation(ring, ideal)?
        .ok_or_else(|| Error::internal("no relation up to the Koszul degree"))?;
    let k = min.degree;
    let threshold = (s + 1) / 2;
    let char_tag = Validity::for_char(ring.characteristic());
    let rel = RelationSummary::new(ring, &min.relation, min.primary);
    let base = |extra: Value| {
        let mut w = json!({
            "relation": rel,
            "k": k,
            "semistability": cert.status,
        });
        if let (Value::Object(map), Value::Object(more)) = (&mut w, extra) {
            map.extend(more);
        }
        w
    };
    match cert.status {
        SemistabilityStatus::StronglySemistable => {
            let certificate = format!(
                "primary relation ({}), k={k}, strongly semistable",
                rel.components.join(",")
            );
            let w = base(json!({ "threshold": threshold, "certificate": certificate }));
            return Ok(Some(if m >= threshold {
                Verdict::new(ring, Decision::InClosure, Validity::AllP, "strongly-semistable-threshold", w, &[
                    CITE_STRONG_INCLUSION,
                    CITE_SEMISTABLE,
                ])
            } else {
                Verdict::new(ring, Decision::NotInClosure, char_tag, "strongly-semistable-threshold", w, &[CITE_SEMISTABLE])
            }));
        }
        SemistabilityStatus::Semistable => {
            let w = base(json!({ "threshold": threshold, "certificate": cert.reason }));
            let decision = if m >= threshold { Decision::InClosure } else { Decision::NotInClosure };
            return Ok(Some(Verdict::new(ring, decision, char_tag, "semistable-threshold", w, &[CITE_SEMISTABLE])));
        }
        _ => {}
    }
    if !(min.primary && 2 * k < s) {
        return Ok(None);
    }
    if m < k {
        let w = base(json!({ "degree": m }));
        return Ok(Some(Verdict::new(ring, Decision::NotInClosure, char_tag, "primary-relation-exclusion", w, &[
            CITE_PRIMARY_EXCLUSION,
        ])));
    }
    let quotient_twist = m + k - s;
    if quotient_twist >= 0 {
        let w = base(json!({ "sub_twist": m - k, "quotient_twist": quotient_twist }));
        return Ok(Some(Verdict::new(ring, Decision::InClosure, char_tag, "exact-sequence", w, &[CITE_EXACT_SEQUENCE])));
    }
    let pair = cohomology::select_pair(ring, opts.seed)?;
    let test: ComponentTest =
        cohomology::forcing_component_zero(ring, ideal, f0, m, &min.relation, &pair, opts.n_max)?;
    let (u, v) = pair.format(ring);
    let w = base(json!({
        "sub_twist": m - k,
        "quotient_twist": quotient_twist,
        "quotient_class_vanishes": test.vanishes,
        "cech_level": test.level,
        "pair": [u, v],
    }));
    let decision = if test.vanishes { Decision::InClosure } else { Decision::NotInClosure };
    Ok(Some(Verdict::new(ring, decision, char_tag, "exact-sequence", w, &[CITE_EXACT_SEQUENCE])))
}

/// Step (5): the strongest applicable numerical bound covering degree `m`.
pub fn decide_by_bounds(ring: &GradedRing, ideal: &IdealData, m: i64, opts: &DecideOptions) -> Result<Verdict> {
    let report = slope::degree_bounds(ring, ideal, opts.indecomposable)?;
    let pick = |dir: Direction| {
        let mut covering: Vec<_> = report
            .applicable()
            .filter(|e| e.direction == dir && e.covers(m))
            .collect();
        // prefer characteristic-free statements
        covering.sort_by_key(|e| e.validity != Validity::AllP);
        covering.first().copied().cloned()
    };
    let inc = pick(Direction::Inclusion);
    let exc = pick(Direction::Exclusion);
    if inc.is_some() && exc.is_some() {
        return Err(Error::internal(format!("bounds overlap in degree {m}")));
    }
    if let Some(e) = inc.or(exc) {
        let decision = match e.direction {
            Direction::Inclusion => Decision::InClosure,
            Direction::Exclusion => Decision::NotInClosure,
        };
        let citation = e.citation;
        let rule = e.rule;
        let validity = e.validity;
        let w = json!({ "bound": e, "degree": m });
        return Ok(Verdict::new(ring, decision, validity, rule, w, &[citation]));
    }
    let status = syzygy::min_relation(ring, ideal)?;
    let reason = match &status {
        Some(r) if !r.primary => format!(
            "minimal relation of degree {} is not primary and no bound covers degree {m}",
            r.degree
        ),
        _ => format!("no bound covers degree {m}"),
    };
    let w = json!({ "reason": reason, "bounds": report });
    Ok(Verdict::new(ring, Decision::Unknown, Validity::EvidenceOnly, "bounds-inconclusive", w, &[
        "numerical inclusion and exclusion bounds",
    ]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchSummary {
    /// No cosets: `R_m` lies in the ideal.
    Empty,
    AllIn,
    AllOut,
    Mixed,
    /// Some coset was left undecided.
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetVerdict {
    pub coset: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub degree: i64,
    pub quotient_dim: usize,
    pub summary: BatchSummary,
    pub cosets: Vec<CosetVerdict>,
}

/// Monomials whose classes form a basis of `R_m / I_m`.
pub fn coset_basis(ring: &GradedRing, ideal: &IdealData, m: i64) -> Result<Vec<Polynomial>> {
    let a = syzygy::ideal_matrix(ring, ideal, m)?;
    let rows = a.rows();
    let id = Matrix::identity(ring.field(), rows);
    let (_, pivots) = Matrix::hstack(ring.field(), rows, &[&a, &id])?.rref();
    let basis = ring.basis(m);
    Ok(pivots
        .into_iter()
        .filter(|&c| c >= a.cols())
        .map(|c| Polynomial::term(ring.field(), basis.monomials()[c - a.cols()].clone(), ring.field().one()))
        .collect())
}

/// Decides every basis coset of `R_m / I_m`, in parallel.
pub fn batch_decide(ring: &GradedRing, ideal: &IdealData, m: i64, opts: &DecideOptions) -> Result<BatchReport> {
    check_ring(ring)?;
    let ideal = primary_ideal(ring, ideal, opts)?;
    let cosets = coset_basis(ring, &ideal, m)?;
    let verdicts = cosets
        .par_iter()
        .map(|f| decide(ring, &ideal, f, opts))
        .collect::<Result<Vec<_>>>()?;
    let summary = if verdicts.is_empty() {
        BatchSummary::Empty
    } else if verdicts.iter().any(|v| v.decision == Decision::Unknown) {
        BatchSummary::Incomplete
    } else if verdicts.iter().all(|v| v.decision.is_in()) {
        BatchSummary::AllIn
    } else if verdicts.iter().all(|v| v.decision == Decision::NotInClosure) {
        BatchSummary::AllOut
    } else {
        BatchSummary::Mixed
    };
    Ok(BatchReport {
        degree: m,
        quotient_dim: cosets.len(),
        summary,
        cosets: cosets
            .iter()
            .zip(verdicts)
            .map(|(f, verdict)| CosetVerdict {
                coset: ring.format(f),
                verdict,
            })
            .collect(),
    })
}

/// The pair used by the Cech-based steps, exposed for reports.
pub fn parameter_pair(ring: &GradedRing, opts: &DecideOptions) -> Result<ParameterPair> {
    cohomology::select_pair(ring, opts.seed)
}
