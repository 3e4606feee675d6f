mod common;

use common::*;
use tightcert_core::cohomology::{
    self, cech_h1_dim, correlation_dims, euler_sym, forcing_component_zero, h_rel, line_dims,
    rr_check, select_pair, self_intersection,
};
use tightcert_core::decide::{self, batch_decide, BatchSummary, DecideOptions, Decision};
use tightcert_core::frobenius::{self, Agreement, CrossOptions, Evidence};
use tightcert_core::slope::{self, BoundsInput, Direction, SemistabilityStatus};
use tightcert_core::syzygy::{self, RelationVector};
use tightcert_core::{Field, IdealConfig, RingConfig};

#[test]
fn normal_form_and_hilbert() {
    let r = fermat(Field::Rational);
    assert_eq!(r.format(&r.normal_form(&poly(&r, "x^3"))), "-y^3 - z^3");
    assert_eq!(r.format(&r.normal_form(&poly(&r, "x^2 + y*z"))), "x^2 + y*z");
    assert!(r.normal_form(&poly(&r, "x^3+y^3+z^3")).is_zero());
    assert_eq!(r.hilbert(0), 1);
    assert_eq!(r.hilbert(2), 6);
    assert_eq!(r.hilbert(3), 9);
}

#[test]
fn multiplication_matrices() {
    let r = fermat(Field::Rational);
    assert_eq!(r.mult_matrix(&r.one(), 2).unwrap(), tightcert_core::Matrix::identity(Field::Rational, 6));
    assert!(r.mult_matrix(&r.zero(), 2).unwrap().is_zero());
    assert_eq!(r.mult_matrix(&poly(&r, "x"), 2).unwrap().rank(), 6);
}

#[test]
fn smoothness_examples() {
    assert!(fermat(Field::Rational).smoothness_check(None).unwrap());
    assert!(!fermat(fp(3)).smoothness_check(None).unwrap());
    assert!(!ring(Field::Rational, "xyz").smoothness_check(None).unwrap());
    assert!(!ring(fp(5), "xyz").smoothness_check(None).unwrap());
}

#[test]
fn relations_of_fermat_squares() {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x^2", "y^2", "z^2"]);
    assert!(syzygy::relations(&r, &i, 2).unwrap().is_empty());
    let rel = syzygy::relations(&r, &i, 3).unwrap();
    assert_eq!(rel.len(), 1);
    let comps: Vec<String> = rel[0].components.iter().map(|c| r.format(c)).collect();
    assert_eq!(comps, vec!["x", "y", "z"]);
    let koszul = ideal(&r, &["x", "y"]);
    let rel = syzygy::relations(&r, &koszul, 2).unwrap();
    assert!(rel.iter().any(|v| v.components == vec![poly(&r, "y"), poly(&r, "-x")]
        || v.components == vec![poly(&r, "-y"), poly(&r, "x")]));
}

#[test]
fn membership_examples() {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x", "y"]);
    assert!(syzygy::membership(&r, &i, &poly(&r, "z^2")).unwrap().is_none());
    let c = syzygy::membership(&r, &i, &poly(&r, "x")).unwrap().unwrap();
    assert_eq!(c, vec![r.one(), r.zero()]);
    let sq = ideal(&r, &["x^2", "y^2", "z^2"]);
    assert!(syzygy::membership(&r, &sq, &poly(&r, "xyz")).unwrap().is_none());
}

#[test]
fn primary_witnesses() {
    let r = fermat(Field::Rational);
    let w = |gens: &[&str]| syzygy::primary_check(&r, &ideal(&r, gens), None).unwrap();
    assert_eq!(w(&["x", "y", "z"]), Some(1));
    assert_eq!(w(&["x^2", "y^2", "z^2"]), Some(4));
    assert_eq!(w(&["x", "y"]), Some(3));
    assert_eq!(w(&["x", "xy"]), None);
}

#[test]
fn bracket_powers_keep_witness_bound() {
    let r = fermat(fp(5));
    let i = ideal(&r, &["x", "y"]);
    assert_eq!(syzygy::bracket_power(&r, &i, 1).unwrap().gens(), i.gens());
    let b = syzygy::bracket_power(&r, &i, 5).unwrap();
    assert_eq!(b.gens(), &[r.normal_form(&poly(&r, "x^5")), r.normal_form(&poly(&r, "y^5"))]);
    let n = syzygy::primary_check(&r, &i, None).unwrap().unwrap();
    let nq = syzygy::primary_check(&r, &b, Some(5 * n)).unwrap();
    assert!(nq.is_some_and(|v| v <= 5 * n));
}

#[test]
fn minimal_relations() {
    let r = fermat(Field::Rational);
    let m = syzygy::min_relation(&r, &ideal(&r, &["x^2", "y^2", "z^2"])).unwrap().unwrap();
    assert_eq!((m.degree, m.primary), (3, true));
    let m = syzygy::min_relation(&r, &ideal(&r, &["x^4", "xy", "y^2"])).unwrap().unwrap();
    assert_eq!((m.degree, m.primary), (3, true));
    assert!(m.components_are(&r, &["0", "y", "-x"]) || m.components_are(&r, &["0", "-y", "x"]));
    let m = syzygy::min_relation(&r, &ideal(&r, &["x", "y"])).unwrap().unwrap();
    assert_eq!((m.degree, m.primary), (2, true));
}

trait Components {
    fn components_are(&self, ring: &tightcert_core::GradedRing, expected: &[&str]) -> bool;
}

impl Components for syzygy::MinRelation {
    fn components_are(&self, ring: &tightcert_core::GradedRing, expected: &[&str]) -> bool {
        self.relation
            .components
            .iter()
            .zip(expected)
            .all(|(c, e)| ring.format(c) == *e)
    }
}

#[test]
fn cross_quotient_examples() {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x^2", "y^2", "z^2"]);
    let rv = |c: &[&str], d: i64| RelationVector {
        components: c.iter().map(|t| poly(&r, t)).collect(),
        degree: d,
    };
    let rr = rv(&["x", "y", "z"], 3);
    let s = rv(&["y^2", "-x^2", "0"], 4);
    assert_eq!(r.format(&syzygy::cross_quotient(&r, &i, &rr, &s).unwrap()), "z");
    let zr = rv(&["xz", "yz", "z^2"], 4);
    assert!(syzygy::cross_quotient(&r, &i, &rr, &zr).unwrap().is_zero());
    assert!(syzygy::cross_quotient(&r, &i, &rr, &rr).unwrap().is_zero());
}

#[test]
fn splittings() {
    let r = fermat(Field::Rational);
    let k = |gens: &[&str]| syzygy::poly_syzygy_splitting(&r, &ideal(&r, gens)).unwrap();
    assert_eq!(k(&["x^4", "xy", "y^2"]), vec![3, 5]);
    assert_eq!(k(&["x", "y"]), vec![2]);
    assert_eq!(k(&["x^2", "y^2"]), vec![4]);
}

#[test]
fn line_bundle_cohomology() {
    let cubic = fermat(Field::Rational);
    let d = line_dims(&cubic, 0);
    assert_eq!((d.h0, d.h1), (1, 1));
    let quintic = ring(Field::Rational, "x^5+y^5+z^5");
    assert_eq!(line_dims(&quintic, 0).h1, 6);
    assert_eq!(line_dims(&quintic, -1).h0, 0);
}

#[test]
fn relation_sheaf_cohomology() {
    let r = fermat(Field::Rational);
    let sq = ideal(&r, &["x^2", "y^2", "z^2"]).certify_primary(&r, None).unwrap();
    let d = h_rel(&r, &sq, 3).unwrap();
    assert_eq!((d.h0, d.h1), (1, 1));
    assert_eq!(h_rel(&r, &sq, 4).unwrap().h1, 0);
    let par = ideal(&r, &["x", "y"]).certify_primary(&r, None).unwrap();
    let d = h_rel(&r, &par, 2).unwrap();
    assert_eq!((d.h0, d.h1), (1, 1));
    for m in -1..=9 {
        assert!(rr_check(&r, &sq, m).unwrap(), "m = {m}");
    }
}

#[test]
fn euler_and_intersection_numbers() {
    assert_eq!(euler_sym(&[2, 2, 2], 3, 2, 3, 1).unwrap(), 0);
    assert_eq!(euler_sym(&[1, 1], 1, 1, 3, 1).unwrap(), 3);
    assert_eq!(euler_sym(&[2, 2, 2], 3, 0, 5, 6).unwrap(), -5);
    assert_eq!(self_intersection(&[1, 1], 1, 3), 3);
    assert_eq!(self_intersection(&[4, 4, 4], 6, 1), 0);
    assert_eq!(self_intersection(&[2, 2, 2], 3, 3), 0);
}

#[test]
fn cech_examples() {
    let r = fermat(Field::Rational);
    let pair = select_pair(&r, 0).unwrap();
    assert_eq!(cech_h1_dim(&r, 0, &pair, None).unwrap().0, 1);
    assert_eq!(cech_h1_dim(&r, 1, &pair, None).unwrap().0, 0);
    assert_eq!(cech_h1_dim(&r, -1, &pair, None).unwrap().0, 3);
}

#[test]
fn forcing_components_on_independent_example() {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x^4", "xy", "y^2"]).certify_primary(&r, None).unwrap();
    let pair = select_pair(&r, 0).unwrap();
    let rel = RelationVector {
        components: vec![r.zero(), poly(&r, "y"), poly(&r, "-x")],
        degree: 3,
    };
    let test = |f: &str| forcing_component_zero(&r, &i, &poly(&r, f), 3, &rel, &pair, None).unwrap().vanishes;
    assert!(test("yz^2"));
    assert!(!test("xz^2"));
    assert!(test("xy*z"));
}

#[test]
fn correlation_counts_agree() {
    let r = ring(fp(7), "x^4+y^4+z^4");
    let i = ideal(&r, &["x^3", "y^3", "z^2"]).certify_primary(&r, None).unwrap();
    for k in -2..=6 {
        let c = correlation_dims(&r, &i, k).unwrap();
        assert_eq!(c.sections, c.h1_rel, "k = {k}");
    }
}

#[test]
fn certificates_and_bounds() {
    let r = fermat(Field::Rational);
    let cert = |gens: &[&str]| {
        let i = ideal(&r, gens).certify_primary(&r, None).unwrap();
        slope::semistability_certificate(&r, &i).unwrap().status
    };
    assert_eq!(cert(&["x^2", "y^2", "z^2"]), SemistabilityStatus::StronglySemistable);
    assert_eq!(cert(&["x^4", "xy", "y^2"]), SemistabilityStatus::Decomposable);
    let q = ring(Field::Rational, QUINTIC);
    let i = ideal(&q, &["x^4", "y^4", "z^4"]).certify_primary(&q, None).unwrap();
    let c = slope::semistability_certificate(&q, &i).unwrap();
    assert_eq!(c.status, SemistabilityStatus::Semistable);

    let sq = ideal(&r, &["x^2", "y^2", "z^2"]).certify_primary(&r, None).unwrap();
    let report = slope::degree_bounds(&r, &sq, false).unwrap();
    let first = |rule: &str| report.entry(rule).unwrap().first_degree.unwrap();
    assert_eq!(first("smith-degree-sum"), 6);
    assert_eq!(first("smith-dimension-max"), 4);
    assert_eq!(first("max-pair-inclusion"), 4);
    assert_eq!(first("semistable-vanishing"), 3);
    assert!(report.is_order_consistent());
}

#[test]
fn plus_closure_lines() {
    let mut input = BoundsInput::numeric(&[2, 2, 2], 3, 5, false);
    input.primary_k = Some(3);
    let notes = slope::plus_closure_annotations(&input).unwrap();
    assert!(notes.iter().any(|a| a.rule == "elliptic-plus" && a.applies));
    assert!(notes.iter().any(|a| a.rule == "primary-relation-plus" && a.applies));
    let big = BoundsInput::numeric(&[4, 4, 4], 5, 7, true);
    let ind = slope::plus_closure_annotations(&big)
        .unwrap()
        .into_iter()
        .find(|a| a.rule == "indecomposable-plus")
        .unwrap();
    // sum d/2 + (2g-2)/delta = 6 + 2
    assert!(ind.applies && ind.statement.contains("first degree 8"));
}

#[test]
fn exclusion_at_minimal_degree() {
    let report = slope::degree_bounds_numeric(&BoundsInput::numeric(&[2, 3, 3], 4, 0, false));
    let e = report.entry("exclusion-min-degree").unwrap();
    assert_eq!((e.direction, e.last_degree), (Direction::Exclusion, Some(2)));
}

#[test]
fn decider_examples() {
    let r = fermat(Field::Rational);
    let run = |gens: &[&str], f: &str| {
        decide::decide(&r, &ideal(&r, gens), &poly(&r, f), &DecideOptions::default()).unwrap()
    };
    assert_eq!(run(&["x", "y"], "z^2").decision, Decision::InClosure);
    let v = run(&["x^2", "y^2", "z^2"], "xyz");
    assert_eq!(v.decision, Decision::InClosure);
    assert_eq!(v.witness["threshold"], 3);
    assert_eq!(run(&["x^4", "xy", "y^2"], "xz^2").decision, Decision::NotInClosure);
    assert_eq!(run(&["x^4", "xy", "y^2"], "yz^2").decision, Decision::InClosure);
    let inside = run(&["x^2", "y^2", "z^2"], "x^2*y + 3*z^3");
    assert_eq!(inside.decision, Decision::InIdeal);
    assert!(!v.citations.is_empty() && !inside.citations.is_empty());

    let quartic = ring(Field::Rational, "x^4+y^4+z^4");
    let i = ideal(&quartic, &["x^3", "y^3", "z^2"]);
    for m in 4..=6 {
        let b = batch_decide(&quartic, &i, m, &DecideOptions::default()).unwrap();
        assert!(matches!(b.summary, BatchSummary::AllIn | BatchSummary::Empty), "m = {m}");
    }
}

#[test]
fn batch_examples() {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x^4", "xy", "y^2"]);
    let opts = DecideOptions::default();
    assert_eq!(batch_decide(&r, &i, 4, &opts).unwrap().summary, BatchSummary::AllOut);
    assert_eq!(batch_decide(&r, &i, 5, &opts).unwrap().summary, BatchSummary::AllIn);
    let w = syzygy::primary_check(&r, &i, None).unwrap().unwrap();
    let b = batch_decide(&r, &i, w, &opts).unwrap();
    assert_eq!((b.summary, b.quotient_dim), (BatchSummary::Empty, 0));
}

#[test]
fn frobenius_examples() {
    let r2 = fermat(fp(2));
    let i2 = ideal(&r2, &["x", "y"]);
    let z2 = poly(&r2, "z^2");
    assert_eq!(frobenius::frobenius_closure_test(&r2, &i2, &z2, 4).unwrap().evidence, Evidence::Witness(2));
    let member = poly(&r2, "x*y");
    assert_eq!(frobenius::frobenius_closure_test(&r2, &i2, &member, 4).unwrap().evidence, Evidence::Witness(1));

    let r7 = fermat(fp(7));
    let i7 = ideal(&r7, &["x", "y"]);
    let z = poly(&r7, "z");
    let t = frobenius::tight_evidence(&r7, &i7, &poly(&r7, "z^2"), &z, 49).unwrap();
    assert_eq!(t.evidence, Evidence::Pass);
    let sq = ideal(&r7, &["x^2", "y^2", "z^2"]);
    let t = frobenius::tight_evidence(&r7, &sq, &poly(&r7, "xyz"), &z, 49).unwrap();
    assert_eq!(t.evidence, Evidence::Pass);
    let t = frobenius::tight_evidence(&r7, &sq, &poly(&r7, "x^2*z"), &poly(&r7, "x+y"), 49).unwrap();
    assert_eq!(t.evidence, Evidence::Pass);
}

#[test]
fn frobenius_none_up_to_343() {
    let r = fermat(fp(7));
    let i = ideal(&r, &["x", "y"]);
    let res = frobenius::frobenius_closure_test(&r, &i, &poly(&r, "z^2"), 343).unwrap();
    assert_eq!(res.evidence, Evidence::None);
}

#[test]
fn cross_validation_examples() {
    let ring = RingConfig::new(0, &["x", "y", "z"], FERMAT);
    let opts = CrossOptions {
        q_max: Some(49),
        multiplier: Some("z"),
        decide: DecideOptions::default(),
    };
    let sq = IdealConfig::new(&["x^2", "y^2", "z^2"]);
    let report = frobenius::cross_validate(&ring, &sq, "xyz", &[13, 7], &opts).unwrap();
    assert_eq!(report.primes.iter().map(|p| p.p).collect::<Vec<_>>(), vec![7, 13]);
    assert!(report.primes.iter().all(|p| p.agreement == Agreement::Agree));
    let member = frobenius::cross_validate(&ring, &sq, "x^2*y", &[5, 7], &opts).unwrap();
    assert!(member.primes.iter().all(|p| p.agreement == Agreement::Agree));

    let indep = IdealConfig::new(&["x^4", "xy", "y^2"]);
    let opts = CrossOptions {
        q_max: Some(7),
        multiplier: Some("z"),
        decide: DecideOptions::default(),
    };
    let report = frobenius::cross_validate(&ring, &indep, "xz^2", &[7], &opts).unwrap();
    let row = &report.primes[0];
    assert_eq!(row.verdict.decision, Decision::NotInClosure);
    assert!(matches!(row.tight[0].evidence, Evidence::Fail(_)));
    assert_eq!(row.agreement, Agreement::Agree);
    assert_eq!(report.hard_contradictions, 0);
}

#[test]
fn hasse_pattern_below_fifty() {
    for p in [2u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let h = frobenius::hasse_invariant(&fermat(fp(p))).unwrap();
        assert_eq!(h.status == frobenius::HasseStatus::Supersingular, p % 3 == 2, "p = {p}");
    }
}

#[test]
fn cech_cap_is_reported() {
    let r = fermat(Field::Rational);
    let pair = select_pair(&r, 0).unwrap();
    let err = cech_h1_dim(&r, -3, &pair, Some(0));
    assert!(err.is_err());
    assert!(cohomology::default_cech_bound(&r, 6, -2) >= 2 * (6 + 3));
}
