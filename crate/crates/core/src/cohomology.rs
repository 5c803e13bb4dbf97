//! Quantum cohomology of `Q_N`: Schubert basis, quantum Chevalley rule,
//! the dual Dubrovin connection and Givental's J-function.
//!
//! Coefficients live in `Q[hbar^{±1}, L]` where `L` stands for `log q`;
//! powers of `q` are carried by the index of a [`QSeries`].

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One};
use thiserror::Error;

use crate::arith::{int, rat, LaurentPolynomial, Monomial, Symbol};

pub const HBAR: &str = "hbar";
pub const LOGQ: &str = "L";
pub const Q: &str = "q";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("quadric dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("class {class} does not exist on Q_{n}")]
    ClassMismatch { n: usize, class: String },
}

/// A Schubert class. `MidPrime(k)` is the second middle class of an even
/// quadric, of degree `k = m - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchubertClass {
    Standard(usize),
    MidPrime(usize),
}

impl SchubertClass {
    fn key(&self) -> (usize, u8) {
        match *self {
            SchubertClass::Standard(i) => (i, 0),
            SchubertClass::MidPrime(k) => (k, 1),
        }
    }

    /// Label used in JSON/CSV output: `s3`, `s2'`.
    pub fn label(&self) -> String {
        match self {
            SchubertClass::Standard(i) => format!("s{}", i),
            SchubertClass::MidPrime(k) => format!("s{}'", k),
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        let body = s.strip_prefix('s')?;
        if let Some(k) = body.strip_suffix('\'') {
            k.parse().ok().map(SchubertClass::MidPrime)
        } else {
            body.parse().ok().map(SchubertClass::Standard)
        }
    }
}

impl PartialOrd for SchubertClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SchubertClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Dimension bookkeeping for `Q_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadric {
    pub n: usize,
}

impl Quadric {
    pub fn new(n: usize) -> Result<Self, CohomologyError> {
        if n < 3 {
            return Err(CohomologyError::DimensionTooSmall(n));
        }
        Ok(Quadric { n })
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// `m` with `N = 2m - 1` (odd) or `N = 2m - 2` (even).
    pub fn m(&self) -> usize {
        if self.is_even() {
            (self.n + 2) / 2
        } else {
            (self.n + 1) / 2
        }
    }

    pub fn basis(&self) -> Vec<SchubertClass> {
        let mut out = Vec::new();
        for i in 0..=self.n {
            out.push(SchubertClass::Standard(i));
            if self.is_even() && i == self.m() - 1 {
                out.push(SchubertClass::MidPrime(i));
            }
        }
        out
    }

    pub fn contains(&self, c: SchubertClass) -> bool {
        match c {
            SchubertClass::Standard(i) => i <= self.n,
            SchubertClass::MidPrime(k) => self.is_even() && k == self.m() - 1,
        }
    }

    pub fn check(&self, c: SchubertClass) -> Result<(), CohomologyError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(CohomologyError::ClassMismatch { n: self.n, class: c.label() })
        }
    }

    /// `σ₁ ⋆ c` as `(class, q-degree, coefficient)` triples.
    pub fn chevalley_terms(&self, c: SchubertClass) -> Result<Vec<(SchubertClass, u32, i64)>, CohomologyError> {
        use SchubertClass::*;
        self.check(c)?;
        let n = self.n;
        let m = self.m();
        let out = if self.is_even() {
            match c {
                MidPrime(_) => vec![(Standard(m), 0, 1)],
                Standard(i) if i + 2 == m => vec![(Standard(m - 1), 0, 1), (MidPrime(m - 1), 0, 1)],
                Standard(i) if i + 1 == n => vec![(Standard(n), 0, 1), (Standard(0), 1, 1)],
                Standard(i) if i == n => vec![(Standard(1), 1, 1)],
                Standard(i) => vec![(Standard(i + 1), 0, 1)],
            }
        } else {
            match c {
                MidPrime(_) => unreachable!(),
                Standard(i) if i + 1 == m => vec![(Standard(m), 0, 2)],
                Standard(i) if i + 1 == n => vec![(Standard(n), 0, 1), (Standard(0), 1, 1)],
                Standard(i) if i == n => vec![(Standard(1), 1, 1)],
                Standard(i) => vec![(Standard(i + 1), 0, 1)],
            }
        };
        Ok(out)
    }

    /// Classical (q = 0) cup product with σ₁.
    pub fn classical_chevalley(&self, c: SchubertClass) -> Result<Vec<(SchubertClass, i64)>, CohomologyError> {
        Ok(self
            .chevalley_terms(c)?
            .into_iter()
            .filter(|(_, d, _)| *d == 0)
            .map(|(k, _, a)| (k, a))
            .collect())
    }

    pub fn grading(&self, c: SchubertClass) -> usize {
        match c {
            SchubertClass::Standard(i) => i,
            SchubertClass::MidPrime(k) => k,
        }
    }

    /// Poincaré partner, pairing the two middle classes of an even quadric.
    pub fn poincare_dual(&self, c: SchubertClass) -> Result<SchubertClass, CohomologyError> {
        self.check(c)?;
        let m = self.m();
        Ok(match c {
            SchubertClass::MidPrime(k) => SchubertClass::Standard(k),
            SchubertClass::Standard(i) if self.is_even() && i == m - 1 => SchubertClass::MidPrime(i),
            SchubertClass::Standard(i) => SchubertClass::Standard(self.n - i),
        })
    }
}

pub fn schubert_basis(n: usize) -> Result<Vec<SchubertClass>, CohomologyError> {
    Ok(Quadric::new(n)?.basis())
}

pub fn grading(n: usize, c: SchubertClass) -> Result<usize, CohomologyError> {
    let qd = Quadric::new(n)?;
    qd.check(c)?;
    Ok(qd.grading(c))
}

pub fn poincare_dual(n: usize, c: SchubertClass) -> Result<SchubertClass, CohomologyError> {
    Quadric::new(n)?.poincare_dual(c)
}

/// A cohomology class with Laurent coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CohVector {
    coeffs: BTreeMap<SchubertClass, LaurentPolynomial>,
}

impl CohVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(c: SchubertClass) -> Self {
        Self::single(c, LaurentPolynomial::one())
    }

    pub fn single(c: SchubertClass, coef: LaurentPolynomial) -> Self {
        let mut v = Self::zero();
        v.add_to(c, &coef);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, c: SchubertClass) -> LaurentPolynomial {
        self.coeffs.get(&c).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SchubertClass, &LaurentPolynomial)> {
        self.coeffs.iter()
    }

    pub fn add_to(&mut self, c: SchubertClass, coef: &LaurentPolynomial) {
        if coef.is_zero() {
            return;
        }
        let e = self.coeffs.entry(c).or_default();
        *e = &*e + coef;
        if e.is_zero() {
            self.coeffs.remove(&c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, v) in &other.coeffs {
            out.add_to(*c, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_poly(&LaurentPolynomial::from_int(-1)))
    }

    pub fn scale_poly(&self, p: &LaurentPolynomial) -> Self {
        let mut out = Self::zero();
        for (c, v) in &self.coeffs {
            out.add_to(*c, &(v * p));
        }
        out
    }

    pub fn map_coeffs<F: Fn(&LaurentPolynomial) -> LaurentPolynomial>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (c, v) in &self.coeffs {
            out.add_to(*c, &f(v));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(c, v)| serde_json::json!({"class": c.label(), "coef": v.to_json()}))
                .collect(),
        )
    }
}

impl fmt::Debug for CohVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().map(|(c, v)| format!("({})*{}", v, c)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `σ₁ ⋆_q v`, with `q` appearing as a symbol in the coefficients.
pub fn quantum_chevalley(n: usize, c: SchubertClass) -> Result<CohVector, CohomologyError> {
    let qd = Quadric::new(n)?;
    let q = Symbol::new(Q);
    let mut out = CohVector::zero();
    for (k, d, a) in qd.chevalley_terms(c)? {
        let mono = Monomial::from_pairs([(q.clone(), d as i64)]);
        out.add_to(k, &LaurentPolynomial::term(mono, int(a)));
    }
    Ok(out)
}

/// `c₁(TQ_N) ⋆ v = N σ₁ ⋆ v` on a vector whose coefficients may contain `q`.
pub fn first_chern_times(n: usize, v: &CohVector) -> Result<CohVector, CohomologyError> {
    let mut out = CohVector::zero();
    for (c, coef) in v.iter() {
        let img = quantum_chevalley(n, *c)?;
        out = out.add(&img.scale_poly(&coef.scale(&int(n as i64))));
    }
    Ok(out)
}

/// Truncated `q`-series of cohomology classes; `terms[k]` is the `q^k` coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    pub n: usize,
    pub order: usize,
    pub terms: Vec<CohVector>,
}

impl QSeries {
    pub fn zero(n: usize, order: usize) -> Self {
        QSeries { n, order, terms: vec![CohVector::zero(); order + 1] }
    }

    pub fn constant(n: usize, order: usize, v: CohVector) -> Self {
        let mut s = Self::zero(n, order);
        s.terms[0] = v;
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// First nonzero `(q-power, class, coefficient)`, if any.
    pub fn first_nonzero(&self) -> Option<(usize, SchubertClass, LaurentPolynomial)> {
        for (k, t) in self.terms.iter().enumerate() {
            if let Some((c, v)) = t.iter().next() {
                return Some((k, *c, v.clone()));
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, t) in other.terms.iter().enumerate().take(self.order + 1) {
            out.terms[k] = out.terms[k].add(t);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_poly(&LaurentPolynomial::from_int(-1)))
    }

    pub fn scale_poly(&self, p: &LaurentPolynomial) -> Self {
        QSeries {
            n: self.n,
            order: self.order,
            terms: self.terms.iter().map(|t| t.scale_poly(p)).collect(),
        }
    }

    /// `σ₁ ⋆ S`, truncated at the series order.
    pub fn chevalley(&self) -> Result<Self, CohomologyError> {
        let qd = Quadric::new(self.n)?;
        let mut out = Self::zero(self.n, self.order);
        for (k, t) in self.terms.iter().enumerate() {
            for (c, coef) in t.iter() {
                for (img, d, a) in qd.chevalley_terms(*c)? {
                    let kk = k + d as usize;
                    if kk <= self.order {
                        out.terms[kk].add_to(img, &coef.scale(&int(a)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `q ∂_q`, with `q ∂_q L = 1`.
    pub fn q_derivative(&self) -> Self {
        let l = Symbol::new(LOGQ);
        QSeries {
            n: self.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .enumerate()
                .map(|(k, t)| t.map_coeffs(|v| &v.scale(&int(k as i64)) + &v.partial(&l)))
                .collect(),
        }
    }

    /// `ħ ∂_ħ`.
    pub fn hbar_derivative(&self) -> Self {
        let h = Symbol::new(HBAR);
        QSeries {
            n: self.n,
            order: self.order,
            terms: self.terms.iter().map(|t| t.map_coeffs(|v| v.euler(&h))).collect(),
        }
    }

    /// Grading operator applied class-wise.
    pub fn grade(&self) -> Self {
        let qd = Quadric { n: self.n };
        let mut out = Self::zero(self.n, self.order);
        for (k, t) in self.terms.iter().enumerate() {
            for (c, v) in t.iter() {
                out.terms[k].add_to(*c, &v.scale(&int(qd.grading(*c) as i64)));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = Vec::new();
        for (k, t) in self.terms.iter().enumerate() {
            for (c, v) in t.iter() {
                terms.push(serde_json::json!({"q": k, "class": c.label(), "coef": v.to_json()}));
            }
        }
        serde_json::json!({"N": self.n, "order": self.order, "terms": terms})
    }

    /// CSV table: one row per class, one column per power of `q`.
    pub fn to_csv(&self) -> String {
        let qd = Quadric { n: self.n };
        let mut out = String::from("class");
        for k in 0..=self.order {
            out.push_str(&format!(",q^{}", k));
        }
        out.push('\n');
        for c in qd.basis() {
            out.push_str(&c.label());
            for t in &self.terms {
                out.push_str(&format!(",{}", t.get(c)));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            writeln!(f, "q^{}: {:?}", k, t)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Q,
    Hbar,
}

fn hbar_pow(e: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(Monomial::from_pairs([(Symbol::new(HBAR), e)]))
}

/// Applies the dual Dubrovin connection in the given direction:
/// `q∂_q S − ħ⁻¹ σ₁⋆S` or `ħ∂_ħ S + ħ⁻¹ c₁⋆S + Gr(S)`.
pub fn dual_dubrovin_apply(dir: Direction, s: &QSeries) -> Result<QSeries, CohomologyError> {
    Quadric::new(s.n)?;
    let inv_h = hbar_pow(-1);
    let x = s.chevalley()?;
    Ok(match dir {
        Direction::Q => s.q_derivative().sub(&x.scale_poly(&inv_h)),
        Direction::Hbar => {
            let c1 = x.scale_poly(&inv_h.scale(&int(s.n as i64)));
            s.hbar_derivative().add(&c1).add(&s.grade())
        }
    })
}

/// Checks that the two dual connection operators commute on every basis class
/// through `q^order`.
pub fn connection_flatness_certificate(n: usize, order: usize) -> Result<bool, CohomologyError> {
    let qd = Quadric::new(n)?;
    for c in qd.basis() {
        let s = QSeries::constant(n, order, CohVector::basis(c));
        let a = dual_dubrovin_apply(Direction::Hbar, &dual_dubrovin_apply(Direction::Q, &s)?)?;
        let b = dual_dubrovin_apply(Direction::Q, &dual_dubrovin_apply(Direction::Hbar, &s)?)?;
        if !a.sub(&b).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truncated polynomial in the classical σ₁-operator: `coef[r]` multiplies `X^r`.
#[derive(Clone)]
struct NilpotentPoly {
    coef: Vec<LaurentPolynomial>,
}

impl NilpotentPoly {
    fn scalar(n: usize, c: LaurentPolynomial) -> Self {
        let mut coef = vec![LaurentPolynomial::zero(); n + 1];
        coef[0] = c;
        NilpotentPoly { coef }
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.coef.len();
        let mut coef = vec![LaurentPolynomial::zero(); len];
        for (i, a) in self.coef.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coef.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coef[i + j] = &coef[i + j] + &(a * b);
                }
            }
        }
        NilpotentPoly { coef }
    }
}

/// Givental's J-function of `Q_N` through `q^order`, expanded in the classical
/// cup ring. The denominator exponent is `N + 2`.
pub fn j_function(n: usize, order: usize) -> Result<QSeries, CohomologyError> {
    let qd = Quadric::new(n)?;
    let h = |e: i64| hbar_pow(e);
    let l = LaurentPolynomial::named(LOGQ);

    // classical powers σ₁^r
    let mut powers = vec![CohVector::basis(SchubertClass::Standard(0))];
    for r in 1..=n {
        let prev = &powers[r - 1];
        let mut next = CohVector::zero();
        for (c, v) in prev.iter() {
            for (k, a) in qd.classical_chevalley(*c)? {
                next.add_to(k, &v.scale(&int(a)));
            }
        }
        powers.push(next);
    }

    // e^{L X / ħ}
    let mut exp_coef = Vec::with_capacity(n + 1);
    let mut fact = BigRational::one();
    for r in 0..=n {
        if r > 0 {
            fact *= int(r as i64);
        }
        exp_coef.push(&l.pow(r as u32) * &h(-(r as i64)).scale(&(BigRational::one() / &fact)));
    }
    let exp = NilpotentPoly { coef: exp_coef };

    let linear = |a: i64, b: LaurentPolynomial| {
        let mut p = NilpotentPoly::scalar(n, b);
        p.coef[1] = LaurentPolynomial::from_int(a);
        p
    };
    // (X + jħ)^{-1} = Σ_r (-1)^r X^r / (jħ)^{r+1}
    let inv_linear = |j: i64| {
        let mut coef = Vec::with_capacity(n + 1);
        for r in 0..=n as i64 {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let c = rat(sign, 1) / BigRational::from_integer(num::BigInt::from(j).pow(r as u32 + 1));
            coef.push(h(-(r + 1)).scale(&c));
        }
        NilpotentPoly { coef }
    };

    let mut series = QSeries::zero(n, order);
    for d in 0..=order {
        let mut term = NilpotentPoly::scalar(n, LaurentPolynomial::one());
        for j in 1..=(2 * d) as i64 {
            term = term.mul(&linear(2, h(1).scale(&int(j))));
        }
        for j in 1..=d as i64 {
            let inv = inv_linear(j);
            for _ in 0..(n + 2) {
                term = term.mul(&inv);
            }
        }
        let full = exp.mul(&term);
        let mut v = CohVector::zero();
        for (r, c) in full.coef.iter().enumerate() {
            if !c.is_zero() {
                v = v.add(&powers[r].scale_poly(c));
            }
        }
        series.terms[d] = v;
    }
    Ok(series)
}

/// Scalar `C(2k,k)/(k!)^N`.
pub fn hypergeometric_coefficient(n: usize, k: usize) -> BigRational {
    let mut fact = BigRational::one();
    for i in 1..=k {
        fact *= int(i as i64);
    }
    let binom = binomial(2 * k, k);
    let mut den = BigRational::one();
    for _ in 0..n {
        den *= &fact;
    }
    BigRational::from_integer(binom) / den
}

pub fn binomial(n: usize, k: usize) -> num::BigInt {
    let mut r = num::BigInt::one();
    for i in 0..k {
        r = r * num::BigInt::from(n - i) / num::BigInt::from(i + 1);
    }
    r
}

/// L⁰ part of a Laurent polynomial in `L`.
pub fn drop_log(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.coefficient(&[(Symbol::new(LOGQ), 0)])
}
