//! Loading of configs and the work behind each subcommand.

use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::path::Path;

use serde_json::{json, Value};

use tightcert_core::cohomology;
use tightcert_core::decide::{self, Decision};
use tightcert_core::frobenius::{self, CrossOptions, OracleResult};
use tightcert_core::slope::{self, BoundsInput};
use tightcert_core::syzygy;
use tightcert_core::{
    BatchSummary, DecideOptions, Error, GradedRing, IdealConfig, IdealData, OutputFormat, Polynomial, Result,
    RingConfig, SemistabilityStatus, Session, SessionOptions,
};

use crate::{Command, Opts, Status};

const DISCLAIMER: &str = "F is not checked to be irreducible or normal; every verdict assumes R = K[x,y,z]/(F) is a normal domain";

const CITE_GENUS: &str = "genus of a smooth plane curve of degree delta: g = (delta-1)(delta-2)/2";
const CITE_HILBERT: &str = "Hilbert function of K[x,y,z]/(F): binom(m+2,2) - binom(m-delta+2,2)";
const CITE_RELATIONS: &str = "Rel_m: kernel of (s_1..s_n) -> sum s_i f_i on sum R_{m-d_i}";
const CITE_SPLITTING: &str = "generators in two variables: the syzygy module over K[u,v] is free of rank n-1 (Hilbert-Burch)";
const CITE_MEMBERSHIP: &str = "ideal membership by exact linear algebra: f0 = sum s_i f_i";
const CITE_PRIMARY: &str = "I is R_+-primary iff R_N lies in I for some N";
const CITE_SEMISTABILITY: &str = "rank-two relation sheaf: a relation of degree k < sum d/2 destabilizes; no relation of degree <= sum d/2 + (g-1)/delta gives semistability";
const CITE_FROBENIUS: &str = "Frobenius closure: f0^q in I^[q] for some q = p^e implies f0 in I*";
const CITE_TIGHT_EVIDENCE: &str = "tight closure: c f0^q in I^[q] for all q with c a test element; checked only up to q_max, so PASS is evidence";
const CITE_HASSE: &str = "Hasse invariant of a smooth plane cubic: the coefficient of (xyz)^(p-1) in F^(p-1) vanishes iff the curve is supersingular";
const CITE_SELFINT: &str = "forcing divisor for f0 of degree d0: top self-intersection (sum d_i - (n-1) d0) delta";
const CITE_RR: &str = "Riemann-Roch for R(m): h0 - h1 = ((n-1)m - sum d) delta + (n-1)(1-g)";
const CITE_EULER_SYM: &str = "chi(S^k(F(-m))) = deg(F(-m)) binom(k+n-2, n-1) + (1-g) binom(k+n-2, n-2)";
const CITE_DUALITY: &str = "Serre duality on a plane curve: h1(O(a)) = h0(O(delta-3-a))";
const CITE_CECH: &str = "Cech cohomology of O(a) for the cover D(u), D(v): H^1 = R_{uv} / (R_u + R_v) in degree a";

/// Configs and options after merging the session file with the flags.
#[derive(Debug, Default)]
pub struct Loaded {
    pub ring: Option<RingConfig>,
    pub ideal: Option<IdealConfig>,
    pub options: SessionOptions,
}

impl Loaded {
    fn ring_config(&self) -> Result<&RingConfig> {
        self.ring.as_ref().ok_or_else(|| Error::input("this command needs --ring or --session"))
    }

    fn ideal_config(&self) -> Result<&IdealConfig> {
        self.ideal.as_ref().ok_or_else(|| Error::input("this command needs --ideal or a session with an ideal"))
    }

    fn ring(&self) -> Result<GradedRing> {
        self.ring_config()?.build()
    }

    fn ideal(&self, ring: &GradedRing) -> Result<IdealData> {
        self.ideal_config()?.build(ring)
    }

    fn primary_ideal(&self, ring: &GradedRing) -> Result<IdealData> {
        self.ideal(ring)?.certify_primary(ring, self.options.n_max)
    }

    fn decide_options(&self, opts: &Opts) -> DecideOptions {
        DecideOptions {
            n_max: self.options.n_max,
            seed: self.options.seed,
            indecomposable: opts.indecomposable,
        }
    }

    pub fn format(&self) -> OutputFormat {
        self.options.format
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

pub fn load(opts: &Opts) -> Result<Loaded> {
    let mut loaded = Loaded::default();
    if let Some(path) = &opts.session {
        let s: Session = serde_json::from_str(&read(path)?)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        loaded.ring = Some(s.ring);
        loaded.ideal = s.ideal;
        loaded.options = s.options;
    }
    if let Some(path) = &opts.ring {
        loaded.ring = Some(RingConfig::from_json(&read(path)?)?);
    }
    if let Some(path) = &opts.ideal {
        loaded.ideal = Some(IdealConfig::from_json(&read(path)?)?);
    }
    if let (Some(p), Some(r)) = (opts.characteristic, &loaded.ring) {
        loaded.ring = Some(r.with_characteristic(p));
    }
    if opts.nmax.is_some() {
        loaded.options.n_max = opts.nmax;
    }
    if opts.qmax.is_some() {
        loaded.options.q_max = opts.qmax;
    }
    if let Some(seed) = opts.seed {
        loaded.options.seed = seed;
    }
    if opts.table {
        loaded.options.format = OutputFormat::Table;
    } else if opts.json {
        loaded.options.format = OutputFormat::Json;
    }
    Ok(loaded)
}

pub fn name(cmd: Command) -> &'static str {
    match cmd {
        Command::Invariants => "invariants",
        Command::Hilbert => "hilbert",
        Command::Syzygies => "syzygies",
        Command::Membership => "membership",
        Command::Bounds => "bounds",
        Command::Certify => "certify",
        Command::Decide => "decide",
        Command::BatchDecide => "batch-decide",
        Command::Frobenius => "frobenius",
        Command::Hasse => "hasse",
        Command::Selfint => "selfint",
        Command::Euler => "euler",
        Command::Cech => "cech",
        Command::CrossValidate => "cross-validate",
    }
}

/// What a command produced, before it is wrapped in the report envelope.
struct Output {
    result: Value,
    citations: Vec<String>,
    status: Status,
    ring: Option<Value>,
    ideal: Option<Vec<String>>,
    element: Option<String>,
}

impl Output {
    fn new(result: Value, citations: &[&str]) -> Self {
        Output {
            result,
            citations: citations.iter().map(|s| s.to_string()).collect(),
            status: Status::Done,
            ring: None,
            ideal: None,
            element: None,
        }
    }

    fn on(mut self, ring: &GradedRing) -> Self {
        self.ring = Some(ring_json(ring));
        self
    }

    fn with_ideal(mut self, ring: &GradedRing, ideal: &IdealData) -> Self {
        self.ideal = Some(ideal.gens().iter().map(|g| ring.format(g)).collect());
        self
    }

    fn with_element(mut self, ring: &GradedRing, f: &Polynomial) -> Self {
        self.element = Some(ring.format(f));
        self
    }

    fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

fn ring_json(ring: &GradedRing) -> Value {
    json!({
        "char": ring.characteristic(),
        "vars": ring.vars(),
        "F": ring.equation().map(|f| ring.format(f)),
    })
}

fn element(ring: &GradedRing, opts: &Opts) -> Result<Polynomial> {
    let text = opts
        .element
        .as_deref()
        .ok_or_else(|| Error::input("this command needs --element"))?;
    Ok(ring.normal_form(&ring.parse(text)?))
}

fn degree(opts: &Opts) -> Result<i64> {
    opts.degree.ok_or_else(|| Error::input("this command needs --degree"))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn dedup(citations: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    citations.into_iter().filter(|c| seen.insert(c.clone())).collect()
}

pub fn run(cmd: Command, loaded: &Loaded, opts: &Opts) -> Result<(Value, Status)> {
    let out = match cmd {
        Command::Invariants => invariants(loaded)?,
        Command::Hilbert => hilbert(loaded, opts)?,
        Command::Syzygies => syzygies(loaded, opts)?,
        Command::Membership => membership(loaded, opts)?,
        Command::Bounds => bounds(loaded, opts)?,
        Command::Certify => certify(loaded)?,
        Command::Decide => decide_one(loaded, opts)?,
        Command::BatchDecide => batch(loaded, opts)?,
        Command::Frobenius => frobenius_cmd(loaded, opts)?,
        Command::Hasse => hasse(loaded, opts)?,
        Command::Selfint => selfint(loaded, opts)?,
        Command::Euler => euler(loaded, opts)?,
        Command::Cech => cech(loaded, opts)?,
        Command::CrossValidate => cross_validate(loaded, opts)?,
    };
    let mut report = json!({
        "command": name(cmd),
        "result": out.result,
        "citations": out.citations,
        "disclaimer": DISCLAIMER,
        "options": {
            "n_max": loaded.options.n_max,
            "q_max": loaded.options.q_max,
            "seed": loaded.options.seed,
        },
    });
    let obj = report.as_object_mut().expect("object");
    if let Some(r) = out.ring {
        obj.insert("ring".into(), r);
    }
    if let Some(i) = out.ideal {
        obj.insert("ideal".into(), json!(i));
    }
    if let Some(e) = out.element {
        obj.insert("element".into(), json!(e));
    }
    Ok((report, out.status))
}

fn invariants(loaded: &Loaded) -> Result<Output> {
    let ring = loaded.ring()?;
    let smooth = match ring.smoothness_check(loaded.options.n_max) {
        Ok(b) => Value::Bool(b),
        Err(Error::Undetermined(_)) => Value::Null,
        Err(e) => return Err(e),
    };
    let result = json!({
        "invariants": ring.invariants(),
        "leading_monomial": ring.leading_monomial().map(|m| {
            ring.format(&Polynomial::term(ring.field(), m.clone(), ring.field().one()))
        }),
        "smooth": smooth,
    });
    Ok(Output::new(result, &[CITE_GENUS]).on(&ring))
}

fn hilbert(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = match &loaded.ideal {
        Some(_) => Some(loaded.ideal(&ring)?),
        None => None,
    };
    let degrees: Vec<i64> = match opts.degree {
        Some(m) => vec![m],
        None => {
            let top = 2 * ring.delta() + ideal.as_ref().map_or(0, |i| i.degree_sum());
            (0..=top.max(6)).collect()
        }
    };
    let mut rows = Vec::new();
    for m in degrees {
        let mut row = json!({
            "degree": m,
            "hilbert": ring.hilbert(m),
            "formula": ring.hilbert_formula(m),
        });
        if let Some(i) = &ideal {
            let o = row.as_object_mut().expect("object");
            o.insert("ideal".into(), json!(syzygy::ideal_dim(&ring, i, m)?));
            o.insert("quotient".into(), json!(syzygy::quotient_dim(&ring, i, m)?));
        }
        rows.push(row);
    }
    let out = Output::new(json!({ "rows": rows }), &[CITE_HILBERT]).on(&ring);
    Ok(match &ideal {
        Some(i) => out.with_ideal(&ring, i),
        None => out,
    })
}

fn syzygies(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = loaded.ideal(&ring)?;
    let fmt = |r: &tightcert_core::RelationVector| r.format(&ring);
    let result = match opts.degree {
        Some(m) => {
            let rels = syzygy::relations(&ring, &ideal, m)?;
            json!({
                "degree": m,
                "dimension": rels.len(),
                "relations": rels.iter().map(fmt).collect::<Vec<_>>(),
            })
        }
        None => {
            let min = syzygy::min_relation(&ring, &ideal)?.map(|r| {
                json!({
                    "degree": r.degree,
                    "dimension": r.dim,
                    "primary": r.primary,
                    "relation": fmt(&r.relation),
                })
            });
            let split = match syzygy::syzygy_splitting(&ring, &ideal) {
                Ok(s) => json!({
                    "variables": s.variables.iter().map(|&v| ring.vars()[v].clone()).collect::<Vec<_>>(),
                    "degrees": s.degrees,
                    "generators": s.generators.iter().map(fmt).collect::<Vec<_>>(),
                }),
                Err(e) if e.is_input_error() => json!({ "unavailable": e.to_string() }),
                Err(e) => return Err(e),
            };
            json!({ "min_relation": min, "splitting": split })
        }
    };
    Ok(Output::new(result, &[CITE_RELATIONS, CITE_SPLITTING])
        .on(&ring)
        .with_ideal(&ring, &ideal))
}

fn membership(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = loaded.ideal(&ring)?;
    let f = element(&ring, opts)?;
    let coeffs = syzygy::membership(&ring, &ideal, &f)?;
    let result = match coeffs {
        Some(c) => json!({
            "member": true,
            "coefficients": c.iter().map(|s| ring.format(s)).collect::<Vec<_>>(),
        }),
        None => json!({ "member": false, "coefficients": Value::Null }),
    };
    Ok(Output::new(result, &[CITE_MEMBERSHIP])
        .on(&ring)
        .with_ideal(&ring, &ideal)
        .with_element(&ring, &f))
}

fn bounds(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let (input, ring, ideal, certificate) = if !opts.degrees.is_empty() {
        let (delta, p) = match (&loaded.ring, opts.delta) {
            (_, Some(d)) => (d, opts.characteristic.unwrap_or(0)),
            (Some(_), None) => {
                let r = loaded.ring()?;
                (r.delta(), r.characteristic() as u64)
            }
            (None, None) => return Err(Error::input("numeric bounds need --delta or --ring")),
        };
        if delta < 1 {
            return Err(Error::input("delta must be positive"));
        }
        let p = u32::try_from(p).map_err(|_| Error::input("characteristic out of range"))?;
        (BoundsInput::numeric(&opts.degrees, delta, p, opts.indecomposable), None, None, None)
    } else {
        let ring = loaded.ring()?;
        let ideal = loaded.primary_ideal(&ring)?;
        let input = slope::bounds_input(&ring, &ideal, opts.indecomposable)?;
        let cert = if ideal.len() == 3 {
            Some(slope::semistability_certificate(&ring, &ideal)?)
        } else {
            None
        };
        (input, Some(ring), Some(ideal), cert)
    };
    let report = slope::degree_bounds_numeric(&input);
    let citations = dedup(report.applicable().map(|e| e.citation.to_string()));
    let plus = if input.characteristic > 0 {
        to_value(&slope::plus_closure_annotations(&input)?)
    } else {
        Value::Null
    };
    let result = json!({
        "bounds": report,
        "best_inclusion": report.best_inclusion().and_then(|e| e.first_degree),
        "best_exclusion": report.best_exclusion().and_then(|e| e.last_degree),
        "order_consistent": report.is_order_consistent(),
        "semistability": certificate,
        "plus_closure": plus,
    });
    let mut out = Output::new(result, &[]);
    out.citations = citations;
    Ok(match (ring, ideal) {
        (Some(r), Some(i)) => out.on(&r).with_ideal(&r, &i),
        _ => out,
    })
}

fn certify(loaded: &Loaded) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = loaded.ideal(&ring)?;
    let witness = syzygy::primary_check(&ring, &ideal, loaded.options.n_max)?;
    let mut status = Status::Done;
    let mut citations = vec![CITE_PRIMARY];
    let result = match witness {
        None => json!({
            "primary": false,
            "bound": loaded.options.n_max.unwrap_or_else(|| syzygy::default_primary_bound(&ring, &ideal)),
        }),
        Some(n) => {
            let ideal = ideal.clone().with_witness(n);
            let cert = if ideal.len() == 3 && ring.nvars() == 3 && ring.is_hypersurface() {
                let c = slope::semistability_certificate(&ring, &ideal)?;
                if c.status == SemistabilityStatus::Unknown {
                    status = Status::Unknown;
                }
                citations.push(CITE_SEMISTABILITY);
                to_value(&c)
            } else {
                Value::Null
            };
            json!({ "primary": true, "witness": n, "semistability": cert })
        }
    };
    Ok(Output::new(result, &citations)
        .on(&ring)
        .with_ideal(&ring, &ideal)
        .status(status))
}

fn decide_one(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = loaded.ideal(&ring)?;
    let f = element(&ring, opts)?;
    let verdict = decide::decide(&ring, &ideal, &f, &loaded.decide_options(opts))?;
    let status = if verdict.decision == Decision::Unknown {
        Status::Unknown
    } else {
        Status::Done
    };
    let mut out = Output::new(verdict.to_json(), &[]);
    out.citations = verdict.citations.clone();
    Ok(out
        .on(&ring)
        .with_ideal(&ring, &ideal)
        .with_element(&ring, &f)
        .status(status))
}

fn batch(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = loaded.ideal(&ring)?;
    let m = degree(opts)?;
    let report = decide::batch_decide(&ring, &ideal, m, &loaded.decide_options(opts))?;
    let status = if report.summary == BatchSummary::Incomplete {
        Status::Unknown
    } else {
        Status::Done
    };
    let citations = dedup(report.cosets.iter().flat_map(|c| c.verdict.citations.clone()));
    let mut out = Output::new(to_value(&report), &[]);
    out.citations = citations;
    Ok(out.on(&ring).with_ideal(&ring, &ideal).status(status))
}

fn write_records(opts: &Opts, ring: &GradedRing, ideal: &IdealData, f: &Polynomial, results: &[&OracleResult]) -> Result<()> {
    let Some(path) = &opts.records else {
        return Ok(());
    };
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    for r in results {
        frobenius::append_records(&mut file, &frobenius::records(ring, ideal, f, r))?;
    }
    Ok(())
}

fn frobenius_cmd(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let ideal = loaded.ideal(&ring)?;
    let f = element(&ring, opts)?;
    let m = f.homogeneous_degree().unwrap_or(0) as i64;
    let c = opts.multiplier.as_deref().map(|t| ring.parse(t)).transpose()?;
    let c_deg = c.as_ref().and_then(|c| c.homogeneous_degree()).unwrap_or(0) as i64;
    let q_max = match loaded.options.q_max {
        Some(q) => q,
        None if ring.characteristic() > 0 => frobenius::default_q_max(&ring, m, c_deg),
        None => return Err(Error::input("the Frobenius oracle needs a prime field")),
    };
    let (result, cite) = match &c {
        Some(c) => (frobenius::tight_evidence(&ring, &ideal, &f, c, q_max)?, CITE_TIGHT_EVIDENCE),
        None => (frobenius::frobenius_closure_test(&ring, &ideal, &f, q_max)?, CITE_FROBENIUS),
    };
    write_records(opts, &ring, &ideal, &f, &[&result])?;
    Ok(Output::new(to_value(&result), &[cite])
        .on(&ring)
        .with_ideal(&ring, &ideal)
        .with_element(&ring, &f))
}

fn hasse(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let config = loaded.ring_config()?;
    if opts.primes.is_empty() {
        let ring = config.build()?;
        let report = frobenius::hasse_invariant(&ring)?;
        return Ok(Output::new(to_value(&report), &[CITE_HASSE]).on(&ring));
    }
    let mut primes = opts.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let mut rows = Vec::new();
    for p in primes {
        let row = match config.with_characteristic(p).build().and_then(|r| frobenius::hasse_invariant(&r)) {
            Ok(report) => to_value(&report),
            Err(e) if e.is_input_error() => json!({ "p": p, "error": e.to_string() }),
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    let ring = config.build()?;
    Ok(Output::new(json!({ "primes": rows }), &[CITE_HASSE]).on(&ring))
}

fn selfint(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = match &loaded.ring {
        Some(_) => Some(loaded.ring()?),
        None => None,
    };
    let degrees = if !opts.degrees.is_empty() {
        opts.degrees.clone()
    } else {
        let r = ring.as_ref().ok_or_else(|| Error::input("selfint needs --degrees or --ring with --ideal"))?;
        loaded.ideal(r)?.degrees().to_vec()
    };
    let d0 = match (opts.degree, &ring) {
        (Some(d), _) => d,
        (None, Some(r)) => element(r, opts)?
            .homogeneous_degree()
            .ok_or_else(|| Error::input("the element is zero or not homogeneous"))? as i64,
        (None, None) => return Err(Error::input("selfint needs --degree or --element")),
    };
    let delta = match (opts.delta, &ring) {
        (Some(d), _) => d,
        (None, Some(r)) => r.delta(),
        (None, None) => return Err(Error::input("selfint needs --delta or --ring")),
    };
    let value = cohomology::self_intersection(&degrees, d0, delta);
    let result = json!({
        "degrees": degrees,
        "element_degree": d0,
        "delta": delta,
        "self_intersection": value,
        "chern_degree": cohomology::chern_degree(&degrees, d0),
    });
    let out = Output::new(result, &[CITE_SELFINT]);
    Ok(match &ring {
        Some(r) => out.on(r),
        None => out,
    })
}

fn euler(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let m = degree(opts)?;
    if loaded.ideal.is_none() {
        let dims = cohomology::line_dims(&ring, m);
        let result = json!({ "twist": m, "cohomology": dims, "euler": dims.euler() });
        return Ok(Output::new(result, &[CITE_DUALITY]).on(&ring));
    }
    let ideal = loaded.primary_ideal(&ring)?;
    let dims = cohomology::h_rel(&ring, &ideal, m)?;
    let predicted = cohomology::rr_euler(&ring, &ideal, m);
    let mut citations = vec![CITE_RR];
    let sym = match opts.sym {
        Some(k) => {
            citations.push(CITE_EULER_SYM);
            json!({
                "k": k,
                "euler": cohomology::euler_sym(ideal.degrees(), m, k, ring.delta(), ring.genus())?,
            })
        }
        None => Value::Null,
    };
    let result = json!({
        "twist": m,
        "cohomology": dims,
        "euler": dims.euler(),
        "riemann_roch": predicted,
        "agrees": dims.euler() == predicted,
        "symmetric_power": sym,
    });
    Ok(Output::new(result, &citations).on(&ring).with_ideal(&ring, &ideal))
}

fn cech(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring = loaded.ring()?;
    let a = degree(opts)?;
    let pair = cohomology::select_pair(&ring, loaded.options.seed)?;
    let (u, v) = pair.format(&ring);
    let dual = cohomology::h1_line(&ring, a);
    let (result, status) = match cohomology::cech_h1_dim(&ring, a, &pair, loaded.options.n_max) {
        Ok((dim, level)) => (
            json!({
                "twist": a,
                "pair": [u, v],
                "h1": dim,
                "level": level,
                "duality": dual,
                "agrees": dim == dual,
            }),
            Status::Done,
        ),
        Err(Error::StabilizationFailed { bound, .. }) => (
            json!({
                "twist": a,
                "pair": [u, v],
                "h1": Value::Null,
                "stabilized": false,
                "bound": bound,
                "duality": dual,
            }),
            Status::Unknown,
        ),
        Err(e) => return Err(e),
    };
    Ok(Output::new(result, &[CITE_CECH, CITE_DUALITY]).on(&ring).status(status))
}

fn cross_validate(loaded: &Loaded, opts: &Opts) -> Result<Output> {
    let ring_cfg = loaded.ring_config()?;
    let ideal_cfg = loaded.ideal_config()?;
    let f0 = opts
        .element
        .as_deref()
        .ok_or_else(|| Error::input("this command needs --element"))?;
    if opts.primes.is_empty() {
        return Err(Error::input("cross-validate needs --primes"));
    }
    let cross = CrossOptions {
        q_max: loaded.options.q_max,
        multiplier: opts.multiplier.as_deref(),
        decide: loaded.decide_options(opts),
    };
    let report = frobenius::cross_validate(ring_cfg, ideal_cfg, f0, &opts.primes, &cross)?;
    if opts.records.is_some() {
        for row in &report.primes {
            let r = ring_cfg.with_characteristic(row.p as u64).build()?;
            let i = ideal_cfg.build(&r)?;
            let f = r.normal_form(&r.parse(f0)?);
            let mut results = vec![&row.frobenius];
            results.extend(row.tight.iter());
            write_records(opts, &r, &i, &f, &results)?;
        }
    }
    if report.hard_contradictions > 0 {
        return Err(Error::internal(format!(
            "{} prime(s) with an exclusion contradicted by a Frobenius witness: {}",
            report.hard_contradictions,
            serde_json::to_string(&report).unwrap_or_default()
        )));
    }
    let mut citations: Vec<String> = vec![CITE_FROBENIUS.into(), CITE_TIGHT_EVIDENCE.into()];
    citations.extend(report.primes.iter().flat_map(|r| r.verdict.citations.clone()));
    let status = if report.primes.iter().any(|r| r.verdict.decision == Decision::Unknown) {
        Status::Unknown
    } else {
        Status::Done
    };
    let mut out = Output::new(to_value(&report), &[]);
    out.citations = dedup(citations);
    out.ring = Some(to_value(ring_cfg));
    out.ideal = Some(ideal_cfg.gens.clone());
    out.element = Some(f0.to_string());
    Ok(out.status(status))
}
