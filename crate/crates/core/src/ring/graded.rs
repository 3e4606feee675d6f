use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::expr;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// Monomial basis of one graded piece, largest monomial first.
#[derive(Debug)]
pub struct DegreeBasis {
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[derive(Debug)]
struct Hypersurface {
    equation: Polynomial,
    leading: Monomial,
    /// `leading` is congruent to the sum of these terms modulo the equation.
    rewrite: Vec<(Monomial, Scalar)>,
    degree: u32,
}

/// Numerical invariants of the plane curve `Proj R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub delta: i64,
    pub genus: i64,
    pub characteristic: u32,
}

/// `K[x_1..x_v]/(F)` for a homogeneous `F`, or the polynomial ring itself.
///
/// Normal forms are taken with respect to grevlex in the declared variable
/// order. `{F}` is a Groebner basis of `(F)` for any order, so reduction by
/// the single equation already gives unique representatives.
#[derive(Debug)]
pub struct GradedRing {
    field: Field,
    vars: Vec<String>,
    hyper: Option<Hypersurface>,
    bases: RwLock<HashMap<i64, Arc<DegreeBasis>>>,
}

impl GradedRing {
    pub fn new(field: Field, vars: Vec<String>, equation: Polynomial) -> Result<Self> {
        check_vars(&vars)?;
        if equation.nvars() != vars.len() || equation.field() != field {
            return Err(Error::input("equation does not live in the declared ring"));
        }
        let degree = match equation.homogeneous_degree() {
            Some(d) if d > 0 => d,
            Some(_) => return Err(Error::input("the equation must have positive degree")),
            None if equation.is_zero() => return Err(Error::input("the equation is zero")),
            None => return Err(Error::input("the equation is not homogeneous")),
        };
        let (leading, lc) = equation
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let neg_inv = -&lc.inv().expect("nonzero leading coefficient");
        let rewrite = equation
            .terms()
            .skip(1)
            .map(|(m, c)| (m.clone(), c * &neg_inv))
            .collect();
        Ok(GradedRing {
            field,
            vars,
            hyper: Some(Hypersurface {
                equation,
                leading,
                rewrite,
                degree,
            }),
            bases: RwLock::new(HashMap::new()),
        })
    }

    /// Parses the equation from text, e.g. `"x^3+y^3+z^3"`.
    pub fn from_text(field: Field, vars: &[&str], equation: &str) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        check_vars(&vars)?;
        let f = expr::parse(equation, &vars, field)?;
        GradedRing::new(field, vars, f)
    }

    pub fn polynomial_ring(field: Field, vars: Vec<String>) -> Result<Self> {
        check_vars(&vars)?;
        Ok(GradedRing {
            field,
            vars,
            hyper: None,
            bases: RwLock::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.hyper.is_some()
    }

    /// Degree of the defining equation (0 for a polynomial ring).
    pub fn delta(&self) -> i64 {
        self.hyper.as_ref().map_or(0, |h| h.degree as i64)
    }

    pub fn equation(&self) -> Option<&Polynomial> {
        self.hyper.as_ref().map(|h| &h.equation)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.hyper.as_ref().map(|h| &h.leading)
    }

    pub fn invariants(&self) -> CurveInvariants {
        let d = self.delta();
        CurveInvariants {
            delta: d,
            genus: (d - 1) * (d - 2) / 2,
            characteristic: self.characteristic(),
        }
    }

    pub fn genus(&self) -> i64 {
        self.invariants().genus
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field, self.nvars())
    }

    /// Parses `text` as a polynomial in the ring's variables, without reducing modulo `F`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        expr::parse(text, &self.vars, self.field)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.display(&self.vars).to_string()
    }

    /// Unique representative modulo `F`: no monomial is divisible by `LM(F)`.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let Some(h) = &self.hyper else {
            return p.clone();
        };
        let mut work = p.clone();
        let mut out = Polynomial::zero(self.field, self.nvars());
        while let Some((m, c)) = work.pop_leading() {
            if h.leading.divides(&m) {
                let q = h.leading.quotient_of(&m);
                for (t, a) in &h.rewrite {
                    work.add_term(t.mul(&q), &c * a);
                }
            } else {
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.normal_form(&a.mul(b))
    }

    pub fn pow(&self, a: &Polynomial, e: u32) -> Polynomial {
        let mut result = self.normal_form(&self.one());
        let mut base = self.normal_form(a);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `a^q` for `q` a power of the characteristic, via the Frobenius
    /// `(sum c m)^q = sum c^q m^q`.
    pub fn frobenius_power(&self, a: &Polynomial, q: u64) -> Result<Polynomial> {
        let p = self.characteristic() as u64;
        if p == 0 || !is_power_of(q, p) {
            return Err(Error::input(format!(
                "{q} is not a power of the characteristic {p}"
            )));
        }
        let mut out = Polynomial::zero(self.field, self.nvars());
        let q32 = u32::try_from(q).map_err(|_| Error::input("Frobenius exponent too large"))?;
        for (m, c) in a.terms() {
            // c lies in the prime field, so c^q = c
            out.add_term(m.pow(q32), c.clone());
        }
        Ok(self.normal_form(&out))
    }

    pub fn basis(&self, m: i64) -> Arc<DegreeBasis> {
        if let Some(b) = self.bases.read().expect("basis cache poisoned").get(&m) {
            return Arc::clone(b);
        }
        let monomials: Vec<Monomial> = if m < 0 {
            Vec::new()
        } else {
            Monomial::all_of_degree(self.nvars(), m as u32)
                .into_iter()
                .filter(|mono| self.hyper.as_ref().is_none_or(|h| !h.leading.divides(mono)))
                .collect()
        };
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, mono)| (mono.clone(), i))
            .collect();
        let basis = Arc::new(DegreeBasis {
            degree: m,
            monomials,
            index,
        });
        self.bases
            .write()
            .expect("basis cache poisoned")
            .entry(m)
            .or_insert(basis)
            .clone()
    }

    pub fn hilbert(&self, m: i64) -> usize {
        self.basis(m).len()
    }

    /// Closed form `C(m+v-1, v-1) - C(m-delta+v-1, v-1)`.
    pub fn hilbert_formula(&self, m: i64) -> usize {
        let v = self.nvars() as i64;
        let full = binomial_nonneg(m + v - 1, v - 1);
        match &self.hyper {
            Some(h) => full - binomial_nonneg(m - h.degree as i64 + v - 1, v - 1),
            None => full,
        }
    }

    /// Coordinates of `p` (homogeneous of degree `m`, or zero) in `basis(m)`.
    pub fn coordinates(&self, p: &Polynomial, m: i64) -> Result<Vec<Scalar>> {
        let nf = self.normal_form(p);
        let basis = self.basis(m);
        let mut v = vec![self.field.zero(); basis.len()];
        for (mono, c) in nf.terms() {
            let i = basis.position(mono).ok_or_else(|| {
                Error::input(format!(
                    "{} is not homogeneous of degree {m}",
                    self.format(p)
                ))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &[Scalar], m: i64) -> Polynomial {
        let basis = self.basis(m);
        assert_eq!(v.len(), basis.len(), "coordinate vector has wrong length");
        let mut p = self.zero();
        for (mono, c) in basis.monomials().iter().zip(v) {
            p.add_term(mono.clone(), c.clone());
        }
        p
    }

    /// Matrix of multiplication by `g` (homogeneous of degree `e`) from `R_m` to `R_{m+e}`.
    pub fn mult_matrix_with_degree(&self, g: &Polynomial, e: i64, m: i64) -> Result<Matrix> {
        if !g.is_zero() && g.homogeneous_degree().map(i64::from) != Some(e) {
            return Err(Error::input(format!(
                "multiplier {} is not homogeneous of degree {e}",
                self.format(g)
            )));
        }
        let src = self.basis(m);
        let dst_len = self.hilbert(m + e);
        let g = self.normal_form(g);
        let mut columns = Vec::with_capacity(src.len());
        for mono in src.monomials() {
            let prod = g.mul_monomial(mono, &self.field.one());
            columns.push(self.coordinates(&prod, m + e)?);
        }
        Ok(Matrix::from_columns(self.field, dst_len, &columns))
    }

    pub fn mult_matrix(&self, g: &Polynomial, m: i64) -> Result<Matrix> {
        let e = if g.is_zero() {
            0
        } else {
            g.homogeneous_degree()
                .ok_or_else(|| Error::input("multiplier is not homogeneous"))? as i64
        };
        self.mult_matrix_with_degree(g, e, m)
    }

    /// Smoothness of `V(F)` via the Jacobian ideal `(F, dF/dx_i)` in the
    /// polynomial ring: `true` once it contains a whole graded piece,
    /// `false` once its Hilbert function shows maximal (Gotzmann) growth past
    /// the generator degree, which forces a common projective zero.
    pub fn smoothness_check(&self, n_max: Option<i64>) -> Result<bool> {
        let h = self
            .hyper
            .as_ref()
            .ok_or_else(|| Error::input("smoothness check needs a hypersurface"))?;
        let delta = h.degree as i64;
        let n_max = n_max.unwrap_or(3 * delta);
        let poly = GradedRing::polynomial_ring(self.field, self.vars.clone())?;
        let mut gens = vec![(h.equation.clone(), delta)];
        for i in 0..self.nvars() {
            let d = h.equation.derivative(i);
            if !d.is_zero() {
                gens.push((d, delta - 1));
            }
        }
        let quotient_dim = |n: i64| -> Result<usize> {
            let blocks: Vec<Matrix> = gens
                .iter()
                .filter(|(_, d)| *d <= n)
                .map(|(g, d)| poly.mult_matrix_with_degree(g, *d, n - d))
                .collect::<Result<_>>()?;
            let refs: Vec<&Matrix> = blocks.iter().collect();
            let rows = poly.hilbert(n);
            let m = Matrix::hstack(self.field, rows, &refs)?;
            Ok(rows - m.rank())
        };
        let mut prev: Option<(i64, usize)> = None;
        for n in 1..=n_max {
            let h_n = quotient_dim(n)?;
            if h_n == 0 {
                return Ok(true);
            }
            if let Some((pn, ph)) = prev {
                if pn >= delta && h_n as u128 == macaulay_upper(ph as u128, pn as u128) {
                    return Ok(false);
                }
            }
            prev = Some((n, h_n));
        }
        Err(Error::Undetermined(format!(
            "smoothness not decided up to degree {n_max}"
        )))
    }
}

fn check_vars(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::input("at least one variable is required"));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::input(format!("invalid variable name `{v}`")));
        }
        if vars[..i].contains(v) {
            return Err(Error::input(format!("duplicate variable `{v}`")));
        }
    }
    Ok(())
}

pub(crate) fn is_power_of(q: u64, p: u64) -> bool {
    if p < 2 || q == 0 {
        return false;
    }
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// `C(n, k)` with the convention 0 for `n < k` or negative arguments.
pub fn binomial_nonneg(n: i64, k: i64) -> usize {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    binomial(n as u128, k as u128) as usize
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Macaulay's bound `h^<d>`: the largest possible Hilbert function value in
/// degree `d+1` of a standard graded algebra with value `h` in degree `d`.
fn macaulay_upper(h: u128, d: u128) -> u128 {
    let mut rest = h;
    let mut out = 0;
    let mut k = d;
    while rest > 0 && k > 0 {
        let mut a = k;
        while binomial(a + 1, k) <= rest {
            a += 1;
        }
        rest -= binomial(a, k);
        out += binomial(a + 1, k + 1);
        k -= 1;
    }
    out
}
