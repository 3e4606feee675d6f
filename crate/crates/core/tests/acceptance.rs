//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tightcert_core::cohomology::{self, cech_h1_dim, h_rel, select_pair, self_intersection};
use tightcert_core::decide::{self, batch_decide, BatchSummary, DecideOptions, Decision};
use tightcert_core::frobenius::{self, Evidence, HasseStatus};
use tightcert_core::linalg::is_prime;
use tightcert_core::slope::{self, BoundsInput, Direction, SemistabilityStatus, Validity};
use tightcert_core::syzygy::{self, IdealData};
use tightcert_core::{Field, GradedRing, Polynomial};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn opts() -> DecideOptions {
    DecideOptions::default()
}

fn c1_fermat_flagship() -> Check {
    for field in [Field::Rational, fp(5), fp(7), fp(13)] {
        let r = fermat(field);
        let i = ideal(&r, &["x^2", "y^2", "z^2"]);
        let f = poly(&r, "xyz");
        let v = decide::decide(&r, &i, &f, &opts()).map_err(|e| e.to_string())?;
        ensure!(v.decision == Decision::InClosure, "{field}: decision {:?}", v.decision);
        ensure!(
            v.witness["certificate"] == "primary relation (x,y,z), k=3, strongly semistable",
            "{field}: certificate {}",
            v.witness["certificate"]
        );
        ensure!(syzygy::membership(&r, &i, &f).unwrap().is_none(), "{field}: xyz reported in the ideal");
    }
    let r = fermat(fp(7));
    let i = ideal(&r, &["x^2", "y^2", "z^2"]);
    let t = frobenius::tight_evidence(&r, &i, &poly(&r, "xyz"), &poly(&r, "z"), 49).map_err(|e| e.to_string())?;
    ensure!(t.evidence == Evidence::Pass, "tight evidence {:?}", t.evidence);
    ensure!(t.outcomes.len() == 2, "tested q: {:?}", t.outcomes);
    Ok(())
}

fn c2_parameter_case() -> Check {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x", "y"]);
    let v = decide::decide(&r, &i, &poly(&r, "z^2"), &opts()).unwrap();
    ensure!(v.decision == Decision::InClosure, "z^2: {:?}", v.decision);
    for m in 2..=6 {
        let b = batch_decide(&r, &i, m, &opts()).unwrap();
        ensure!(
            matches!(b.summary, BatchSummary::AllIn | BatchSummary::Empty),
            "degree {m}: {:?}",
            b.summary
        );
    }
    for m in 0..=1 {
        let b = batch_decide(&r, &i, m, &opts()).unwrap();
        ensure!(b.summary == BatchSummary::AllOut, "degree {m}: {:?}", b.summary);
        // elements of the ideal are the only ones in the closure
        let inside = decide::decide(&r, &i, &r.var(0).mul(&r.var(2).pow(m as u32)), &opts()).unwrap();
        ensure!(inside.decision == Decision::InIdeal, "x z^{m}: {:?}", inside.decision);
    }
    Ok(())
}

fn c3_splitting() -> Check {
    let r = fermat(Field::Rational);
    let i = ideal(&r, &["x^4", "xy", "y^2"]).certify_primary(&r, None).unwrap();
    let k = syzygy::poly_syzygy_splitting(&r, &i).unwrap();
    ensure!(k == vec![3, 5], "splitting degrees {k:?}");
    let mut twists: Vec<i64> = k.iter().map(|kj| 5 - kj).collect();
    twists.sort_unstable();
    ensure!(twists == vec![0, 2], "R(5) summand twists {twists:?}");
    let at5 = batch_decide(&r, &i, 5, &opts()).unwrap();
    ensure!(at5.summary == BatchSummary::AllIn, "m=5: {:?}", at5.summary);
    let at4 = batch_decide(&r, &i, 4, &opts()).unwrap();
    ensure!(at4.summary == BatchSummary::AllOut, "m=4: {:?}", at4.summary);
    let yes = decide::decide(&r, &i, &poly(&r, "yz^2"), &opts()).unwrap();
    ensure!(yes.decision == Decision::InClosure, "yz^2: {:?}", yes.decision);
    let no = decide::decide(&r, &i, &poly(&r, "xz^2"), &opts()).unwrap();
    ensure!(no.decision == Decision::NotInClosure, "xz^2: {:?}", no.decision);
    Ok(())
}

fn c4_thresholds() -> Check {
    let report = slope::degree_bounds_numeric(&BoundsInput::numeric(&[100, 100, 100], 5, 0, true));
    let find = |rule: &str, dir: Direction| {
        report
            .entries
            .iter()
            .find(|e| e.rule == rule && e.direction == dir && e.applicable)
            .cloned()
    };
    let inc = find("indecomposable-degree-bound", Direction::Inclusion).ok_or("no inclusion entry")?;
    ensure!(inc.first_degree == Some(151), "inclusion {:?}", inc.first_degree);
    let exc = find("indecomposable-degree-bound", Direction::Exclusion).ok_or("no exclusion entry")?;
    ensure!(exc.strict && exc.threshold == 149.into(), "exclusion threshold {}", exc.threshold);
    ensure!(exc.last_degree == Some(148), "exclusion last degree {:?}", exc.last_degree);
    let dim = find("smith-dimension-max", Direction::Inclusion).ok_or("no Smith entry")?;
    ensure!(dim.first_degree == Some(200), "Smith dim bound {:?}", dim.first_degree);
    let sum = find("smith-degree-sum", Direction::Inclusion).ok_or("no Smith entry")?;
    ensure!(sum.first_degree == Some(300), "Smith sum bound {:?}", sum.first_degree);
    let ex = find("exclusion-min-degree", Direction::Exclusion).ok_or("no Smith exclusion")?;
    ensure!(ex.last_degree == Some(100), "Smith exclusion {:?}", ex.last_degree);
    ensure!(report.is_order_consistent(), "bounds overlap");
    Ok(())
}

fn c5_riemann_roch() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances = 0;
    let mut checks = 0;
    for &p in &[7u64, 13] {
        let mut per_prime = 0;
        let mut attempts = 0;
        while per_prime < 12 {
            attempts += 1;
            ensure!(attempts < 400, "could not generate primary ideals over F_{p}");
            let delta = rng.gen_range(3..=5u32);
            let r = random_curve(&mut rng, fp(p), delta);
            let n = rng.gen_range(2..=3usize);
            let degrees: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            let Some(i) = random_primary_ideal(&mut rng, &r, &degrees) else {
                continue;
            };
            per_prime += 1;
            instances += 1;
            let s = i.degree_sum();
            let d = r.delta();
            let g = (d - 1) * (d - 2) / 2;
            let nn = i.len() as i64;
            for m in 0..=s + 3 {
                let dims = h_rel(&r, &i, m).map_err(|e| e.to_string())?;
                let expected = ((nn - 1) * m - s) * d + (nn - 1) * (1 - g);
                ensure!(
                    dims.euler() == expected,
                    "F = {}, I = {:?}, m = {m}: h0 - h1 = {} - {} != {expected}",
                    r.format(r.equation().unwrap()),
                    i.gens().iter().map(|x| r.format(x)).collect::<Vec<_>>(),
                    dims.h0,
                    dims.h1
                );
                checks += 1;
            }
        }
    }
    ensure!(instances >= 20, "only {instances} instances");
    println!("    ({instances} ideals, {checks} twists)");
    Ok(())
}

fn c6_cech_duality() -> Check {
    for delta in 3..=5i64 {
        let eq = format!("x^{delta}+y^{delta}+z^{delta}");
        let r = ring(Field::Rational, &eq);
        let pair = select_pair(&r, 0).map_err(|e| e.to_string())?;
        for a in -3..=delta {
            let (dim, level) = cech_h1_dim(&r, a, &pair, None).map_err(|e| format!("delta {delta}, a {a}: {e}"))?;
            let expected = plane_curve_hilbert(delta, delta - 3 - a);
            ensure!(dim as i64 == expected, "delta {delta}, a {a}: {dim} != {expected}");
            let cap = cohomology::default_cech_bound(&r, 0, a);
            ensure!(level <= cap, "level {level} beyond cap {cap}");
        }
    }
    Ok(())
}

/// `(p-1)! / (((p-1)/3)!)^3 mod p`, the multinomial coefficient of `(xyz)^{p-1}` in `(x^3+y^3+z^3)^{p-1}`.
fn fermat_hasse_coefficient(p: u64) -> u64 {
    if !(p - 1).is_multiple_of(3) {
        return 0;
    }
    let k = (p - 1) / 3;
    let fact = |n: u64| (1..=n).fold(1u64, |acc, x| acc * x % p);
    let denom = fact(k).pow(3) % p;
    // inverse by Fermat's little theorem
    let mut inv = 1u64;
    let mut base = denom;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    fact(p - 1) * inv % p
}

fn c7_hasse_sweep() -> Check {
    for p in (2..50u64).filter(|&p| is_prime(p) && p != 3) {
        let h = frobenius::hasse_invariant(&fermat(fp(p))).map_err(|e| format!("p={p}: {e}"))?;
        let oracle = fermat_hasse_coefficient(p);
        ensure!(h.coefficient == oracle, "p={p}: coefficient {} != {oracle}", h.coefficient);
        let supersingular = h.status == HasseStatus::Supersingular;
        ensure!(supersingular == (p % 3 == 2), "p={p}: {:?}", h.status);
    }
    Ok(())
}

fn c8_self_intersection() -> Check {
    let a = self_intersection(&[1, 1], 1, 3);
    ensure!(a == 3, "(x,y;z) on a cubic: {a}");
    let b = self_intersection(&[4, 4, 4], 6, 1);
    ensure!(b == 0, "(x^4,y^4,z^4;x^3y^3) on a line: {b}");
    Ok(())
}

fn c9_quintic() -> Check {
    let r = ring(Field::Rational, QUINTIC);
    ensure!(r.smoothness_check(None).unwrap(), "quintic is singular");
    let i = ideal(&r, &["x^4", "y^4", "z^4"]).certify_primary(&r, None).unwrap();
    for k in 0..=7 {
        let dim = syzygy::relation_dim(&r, &i, k).unwrap();
        ensure!(dim == 0, "Rel_{k} has dimension {dim}");
    }
    let cert = slope::semistability_certificate(&r, &i).unwrap();
    ensure!(cert.status == SemistabilityStatus::Semistable, "certificate {:?}", cert.status);
    let b = batch_decide(&r, &i, 6, &opts()).unwrap();
    ensure!(b.summary == BatchSummary::AllIn, "m=6: {:?}", b.summary);
    for c in &b.cosets {
        ensure!(c.verdict.validity == Validity::CharZero, "{}: {:?}", c.coset, c.verdict.validity);
    }
    let rp = ring(fp(101), QUINTIC);
    let ip = ideal(&rp, &["x^4", "y^4", "z^4"]);
    let v = decide::decide(&rp, &ip, &poly(&rp, "x^2y^2z^2"), &opts()).unwrap();
    ensure!(v.validity == Validity::PLarge, "char 101 validity {:?}", v.validity);
    Ok(())
}

fn scaled_permuted(ring: &GradedRing, ideal: &IdealData, rng: &mut ChaCha8Rng) -> IdealData {
    let mut gens: Vec<Polynomial> = ideal.gens().to_vec();
    gens.reverse();
    let shift = rng.gen_range(0..gens.len());
    gens.rotate_left(shift);
    let gens = gens
        .into_iter()
        .map(|g| g.scale(&ring.field().from_i64(rng.gen_range(1..7))))
        .collect();
    IdealData::new(ring, gens).unwrap()
}

fn c10_fuzz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let field = fp(7);
    let curves = [
        ring(field, FERMAT),
        ring(field, "x^3+y^3+z^3+x*y*z"),
        ring(field, "x^4+y^4+z^4"),
    ];
    let mut done = 0;
    let mut attempts = 0;
    let mut tally = [0usize; 4];
    while done < 100 {
        attempts += 1;
        ensure!(attempts < 2000, "instance generation stalled at {done}");
        let r = &curves[rng.gen_range(0..curves.len())];
        let n = rng.gen_range(2..=3usize);
        let degrees: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let Some(i) = random_primary_ideal(&mut rng, r, &degrees) else {
            continue;
        };
        let m = rng.gen_range(0..=i.degree_sum() as u32);
        let f0 = r.normal_form(&random_form(&mut rng, field, m, 0.7));
        if f0.is_zero() {
            continue;
        }
        done += 1;
        let v = decide::decide(r, &i, &f0, &opts()).map_err(|e| format!("decide: {e}"))?;
        tally[v.decision as usize] += 1;
        let q_max = frobenius::default_q_max(r, m as i64, 0).min(49);
        let frob = frobenius::frobenius_closure_test(r, &i, &f0, q_max).map_err(|e| e.to_string())?;
        ensure!(
            !(v.decision == Decision::NotInClosure && matches!(frob.evidence, Evidence::Witness(_))),
            "hard contradiction: F = {}, I = {:?}, f0 = {}, {:?}",
            r.format(r.equation().unwrap()),
            i.gens().iter().map(|g| r.format(g)).collect::<Vec<_>>(),
            r.format(&f0),
            frob.evidence
        );
        let j = scaled_permuted(r, &i, &mut rng);
        let f1 = f0.scale(&field.from_i64(rng.gen_range(1..7)));
        let w = decide::decide(r, &j, &f1, &opts()).map_err(|e| format!("decide (permuted): {e}"))?;
        ensure!(
            v.decision == w.decision,
            "not invariant: I = {:?}, f0 = {}: {:?} vs {:?}",
            i.gens().iter().map(|g| r.format(g)).collect::<Vec<_>>(),
            r.format(&f0),
            v.decision,
            w.decision
        );
    }
    println!(
        "    (in ideal {}, in closure {}, not in closure {}, unknown {})",
        tally[0], tally[1], tally[2], tally[3]
    );
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 fermat cubic flagship", c1_fermat_flagship),
        ("2 parameter case", c2_parameter_case),
        ("3 splitting reproduction", c3_splitting),
        ("4 threshold arithmetic", c4_thresholds),
        ("5 riemann-roch suite", c5_riemann_roch),
        ("6 cech/duality consistency", c6_cech_duality),
        ("7 hasse sweep", c7_hasse_sweep),
        ("8 self-intersection", c8_self_intersection),
        ("9 quintic semistability", c9_quintic),
        ("10 hard-consistency fuzz", c10_fuzz),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  criterion {name}  [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}  [{secs:.2}s]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
