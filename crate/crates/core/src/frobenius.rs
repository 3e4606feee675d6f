//! Brute-force evidence in positive characteristic: Frobenius powers,
//! test-element checks, the Hasse invariant of a plane cubic, and comparison
//! with the decider.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{IdealConfig, RingConfig};
use crate::decide::{self, DecideOptions, Decision, Verdict};
use crate::error::{Error, Result};
use crate::ring::{is_power_of, GradedRing, Monomial, Polynomial};
use crate::syzygy::{self, IdealData};

/// Matrix rows allowed when choosing a default `q_max`.
pub const DEFAULT_ROW_BUDGET: i64 = 1200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    FrobeniusClosure,
    TightEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QOutcome {
    pub q: u64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "q", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Evidence {
    /// `f0^q in I^[q]` first at this `q`.
    Witness(u64),
    None,
    Pass,
    /// Disproof, provided the multiplier is a test element.
    Fail(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub kind: OracleKind,
    pub p: u32,
    pub q_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    pub outcomes: Vec<QOutcome>,
    pub evidence: Evidence,
}

fn prime_of(ring: &GradedRing) -> Result<u64> {
    match ring.characteristic() {
        0 => Err(Error::input("the Frobenius oracle needs a prime field")),
        p => Ok(p as u64),
    }
}

fn check_q_max(p: u64, q_max: u64) -> Result<()> {
    if !is_power_of(q_max, p) {
        return Err(Error::input(format!("q_max = {q_max} is not a power of {p}")));
    }
    Ok(())
}

fn powers(p: u64, from: u64, q_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = from;
    while q <= q_max {
        out.push(q);
        q *= p;
    }
    out
}

/// Whether `c * f0^q` lies in `I^[q]`.
pub fn in_bracket_power(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    c: Option<&Polynomial>,
    q: u64,
) -> Result<bool> {
    let bracket = syzygy::bracket_power(ring, ideal, q)?;
    let fq = if q == 1 {
        ring.normal_form(f0)
    } else {
        ring.frobenius_power(f0, q)?
    };
    let target = match c {
        Some(c) => ring.mul(c, &fq),
        None => fq,
    };
    Ok(syzygy::membership(ring, &bracket, &target)?.is_some())
}

/// Largest power `q <= p^3` for which the degree-`q (m + c)` pieces stay inside the row budget.
pub fn default_q_max(ring: &GradedRing, element_degree: i64, multiplier_degree: i64) -> u64 {
    let p = ring.characteristic().max(2) as u64;
    let per_q = (element_degree.max(1) * ring.delta().max(1)) as u64;
    let mut q = p;
    while q < p * p * p && (q * p) * per_q + (multiplier_degree.max(0) as u64) * ring.delta() as u64 <= DEFAULT_ROW_BUDGET as u64 {
        q *= p;
    }
    q
}

/// Largest power of `p` not above `cap`, and at least `p`.
pub fn largest_power_below(p: u64, cap: u64) -> u64 {
    let mut q = p;
    while q.saturating_mul(p) <= cap {
        q *= p;
    }
    q
}

/// Smallest `q = 1, p, p^2, ... <= q_max` with `f0^q in I^[q]`.
pub fn frobenius_closure_test(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    q_max: u64,
) -> Result<OracleResult> {
    let p = prime_of(ring)?;
    check_q_max(p, q_max)?;
    let mut outcomes = Vec::new();
    let mut evidence = Evidence::None;
    for q in powers(p, 1, q_max) {
        let holds = in_bracket_power(ring, ideal, f0, None, q)?;
        outcomes.push(QOutcome { q, holds });
        if holds {
            evidence = Evidence::Witness(q);
            break;
        }
    }
    Ok(OracleResult {
        kind: OracleKind::FrobeniusClosure,
        p: p as u32,
        q_max,
        multiplier: None,
        outcomes,
        evidence,
    })
}

/// Checks `c f0^q in I^[q]` for `q = p, p^2, ... <= q_max`.
pub fn tight_evidence(
    ring: &GradedRing,
    ideal: &IdealData,
    f0: &Polynomial,
    c: &Polynomial,
    q_max: u64,
) -> Result<OracleResult> {
    let p = prime_of(ring)?;
    check_q_max(p, q_max)?;
    let c = ring.normal_form(c);
    if c.is_zero() {
        return Err(Error::input("the multiplier c must be nonzero"));
    }
    if !c.is_homogeneous() {
        return Err(Error::input("the multiplier c must be homogeneous"));
    }
    let mut outcomes = Vec::new();
    let mut evidence = Evidence::Pass;
    for q in powers(p, p, q_max) {
        let holds = in_bracket_power(ring, ideal, f0, Some(&c), q)?;
        outcomes.push(QOutcome { q, holds });
        if !holds {
            evidence = Evidence::Fail(q);
            break;
        }
    }
    Ok(OracleResult {
        kind: OracleKind::TightEvidence,
        p: p as u32,
        q_max,
        multiplier: Some(ring.format(&c)),
        outcomes,
        evidence,
    })
}

/// Default multipliers: nonzero partial derivatives of `F`, then the variables.
pub fn test_element_candidates(ring: &GradedRing) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    if let Some(f) = ring.equation() {
        for i in 0..ring.nvars() {
            let d = ring.normal_form(&f.derivative(i));
            if !d.is_zero() && !out.contains(&d.monic()) {
                out.push(d.monic());
            }
        }
    }
    for i in 0..ring.nvars() {
        let v = ring.var(i);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HasseStatus {
    Ordinary,
    Supersingular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseReport {
    pub p: u32,
    /// Coefficient of `(xyz)^{p-1}` in `F^{p-1}`, in `0..p`.
    pub coefficient: u64,
    pub status: HasseStatus,
}

/// Hasse invariant of a smooth plane cubic over `F_p`.
pub fn hasse_invariant(ring: &GradedRing) -> Result<HasseReport> {
    let p = prime_of(ring)?;
    if ring.nvars() != 3 || ring.delta() != 3 {
        return Err(Error::input("the Hasse invariant is defined here for plane cubics"));
    }
    if !ring.smoothness_check(None)? {
        return Err(Error::input(format!("the cubic is singular in characteristic {p}")));
    }
    let f = ring.equation().expect("hypersurface").clone();
    let power = f.pow((p - 1) as u32);
    let e = (p - 1) as u32;
    let c = power.coefficient(&Monomial::new(vec![e, e, e]));
    let coefficient = c.to_i64().map(|v| v.rem_euclid(p as i64) as u64).unwrap_or(0);
    Ok(HasseReport {
        p: p as u32,
        coefficient,
        status: if coefficient == 0 {
            HasseStatus::Supersingular
        } else {
            HasseStatus::Ordinary
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    /// Inclusion claimed while a multiplier failed; that multiplier may not be a test element.
    SoftFlag,
    /// Exclusion claimed while a Frobenius power witnesses membership.
    HardContradiction,
    /// The decider gave no answer.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeComparison {
    pub p: u32,
    pub verdict: Verdict,
    pub frobenius: OracleResult,
    pub tight: Vec<OracleResult>,
    pub agreement: Agreement,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub element: String,
    pub primes: Vec<PrimeComparison>,
    pub hard_contradictions: usize,
}

pub fn compare(verdict: &Verdict, frobenius: &OracleResult, tight: &[OracleResult]) -> Agreement {
    let witnessed = matches!(frobenius.evidence, Evidence::Witness(_));
    match verdict.decision {
        Decision::NotInClosure if witnessed => Agreement::HardContradiction,
        Decision::Unknown => Agreement::Inconclusive,
        Decision::InClosure if tight.iter().any(|t| matches!(t.evidence, Evidence::Fail(_))) => {
            Agreement::SoftFlag
        }
        _ => Agreement::Agree,
    }
}

pub struct CrossOptions<'a> {
    /// Cap on `q`; each prime tests its powers up to this value (at least `q = p`).
    pub q_max: Option<u64>,
    /// Multiplier text; defaults to [`test_element_candidates`].
    pub multiplier: Option<&'a str>,
    pub decide: DecideOptions,
}

/// Runs the decider and the oracle over each prime, in parallel, merged in prime order.
pub fn cross_validate(
    ring: &RingConfig,
    ideal: &IdealConfig,
    f0: &str,
    primes: &[u64],
    opts: &CrossOptions<'_>,
) -> Result<CrossReport> {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let rows = sorted
        .par_iter()
        .map(|&p| -> Result<PrimeComparison> {
            let r = ring.with_characteristic(p).build()?;
            let i = ideal.build(&r)?;
            let f = r.normal_form(&r.parse(f0)?);
            let verdict = decide::decide(&r, &i, &f, &opts.decide)?;
            let m = f.homogeneous_degree().unwrap_or(0) as i64;
            let multipliers = match opts.multiplier {
                Some(text) => vec![r.parse(text)?],
                None => test_element_candidates(&r),
            };
            let max_c = multipliers
                .iter()
                .filter_map(|c| c.homogeneous_degree())
                .max()
                .unwrap_or(0) as i64;
            let q_max = match opts.q_max {
                Some(cap) => largest_power_below(p, cap),
                None => default_q_max(&r, m, max_c),
            };
            let frobenius = frobenius_closure_test(&r, &i, &f, q_max)?;
            let tight = multipliers
                .iter()
                .map(|c| tight_evidence(&r, &i, &f, c, q_max))
                .collect::<Result<Vec<_>>>()?;
            let agreement = compare(&verdict, &frobenius, &tight);
            Ok(PrimeComparison {
                p: p as u32,
                verdict,
                frobenius,
                tight,
                agreement,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hard = rows
        .iter()
        .filter(|r| r.agreement == Agreement::HardContradiction)
        .count();
    Ok(CrossReport {
        element: f0.to_string(),
        primes: rows,
        hard_contradictions: hard,
    })
}

/// One line of a regression corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub ring: String,
    pub ideal: Vec<String>,
    pub f0: String,
    pub p: u32,
    pub q: u64,
    pub kind: OracleKind,
    pub outcome: bool,
}

pub fn records(ring: &GradedRing, ideal: &IdealData, f0: &Polynomial, result: &OracleResult) -> Vec<OracleRecord> {
    let equation = ring.equation().map(|f| ring.format(f)).unwrap_or_default();
    let f0 = ring.format(&ring.normal_form(f0));
    let ideal: Vec<String> = ideal.gens().iter().map(|g| ring.format(g)).collect();
    result
        .outcomes
        .iter()
        .map(|o| OracleRecord {
            ring: format!("F_{}[{}]/({equation})", result.p, ring.vars().join(",")),
            ideal: ideal.clone(),
            f0: f0.clone(),
            p: result.p,
            q: o.q,
            kind: result.kind,
            outcome: o.holds,
        })
        .collect()
}

/// Appends records as JSON lines.
pub fn append_records<W: Write>(out: &mut W, records: &[OracleRecord]) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::internal(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::input(format!("cannot write records: {e}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn fermat(p: u64) -> GradedRing {
        GradedRing::from_text(Field::prime(p).unwrap(), &["x", "y", "z"], "x^3+y^3+z^3").unwrap()
    }

    #[test]
    fn frobenius_witness_in_char_two() {
        let r = fermat(2);
        let i = IdealData::from_text(&r, &["x", "y"]).unwrap();
        let res = frobenius_closure_test(&r, &i, &r.parse("z^2").unwrap(), 8).unwrap();
        assert_eq!(res.evidence, Evidence::Witness(2));
        let member = frobenius_closure_test(&r, &i, &r.parse("x*z").unwrap(), 8).unwrap();
        assert_eq!(member.evidence, Evidence::Witness(1));
        assert!(frobenius_closure_test(&r, &i, &r.parse("z^2").unwrap(), 6).is_err());
    }

    #[test]
    fn frobenius_none_in_char_seven() {
        let r = fermat(7);
        let i = IdealData::from_text(&r, &["x", "y"]).unwrap();
        let res = frobenius_closure_test(&r, &i, &r.parse("z^2").unwrap(), 49).unwrap();
        assert_eq!(res.evidence, Evidence::None);
        assert_eq!(res.outcomes.len(), 3);
    }

    #[test]
    fn tight_evidence_passes() {
        let r = fermat(7);
        let z = r.parse("z").unwrap();
        let i = IdealData::from_text(&r, &["x", "y"]).unwrap();
        let res = tight_evidence(&r, &i, &r.parse("z^2").unwrap(), &z, 49).unwrap();
        assert_eq!(res.evidence, Evidence::Pass);
        assert_eq!(res.outcomes.iter().map(|o| o.q).collect::<Vec<_>>(), vec![7, 49]);
        assert!(tight_evidence(&r, &i, &r.parse("z^2").unwrap(), &r.zero(), 49).is_err());
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(hasse_invariant(&fermat(5)).unwrap().status, HasseStatus::Supersingular);
        let h7 = hasse_invariant(&fermat(7)).unwrap();
        assert_eq!((h7.status, h7.coefficient), (HasseStatus::Ordinary, 6));
        assert_eq!(hasse_invariant(&fermat(2)).unwrap().status, HasseStatus::Supersingular);
        assert!(hasse_invariant(&fermat(3)).is_err());
        let quartic = GradedRing::from_text(Field::prime(5).unwrap(), &["x", "y", "z"], "x^4+y^4+z^4").unwrap();
        assert!(hasse_invariant(&quartic).is_err());
    }

    #[test]
    fn records_are_json_lines() {
        let r = fermat(2);
        let i = IdealData::from_text(&r, &["x", "y"]).unwrap();
        let f = r.parse("z^2").unwrap();
        let res = frobenius_closure_test(&r, &i, &f, 4).unwrap();
        let mut buf = Vec::new();
        append_records(&mut buf, &records(&r, &i, &f, &res)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().last().unwrap().contains(r#""q":2"#));
    }

    #[test]
    fn default_q_max_stays_in_budget() {
        let r = fermat(7);
        assert_eq!(default_q_max(&r, 2, 1), 49);
        let r2 = fermat(2);
        assert!(default_q_max(&r2, 3, 0) <= 8);
    }
}
