use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{ArithError, Monomial, Symbol};

/// Sparse multivariate Laurent polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(s: &Symbol) -> Self {
        Self::term(Monomial::var(s.clone()), BigRational::one())
    }

    pub fn named(name: &str) -> Self {
        Self::var(&Symbol::new(name))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigRational::one())
    }

    /// Product of variables, e.g. `product(&[a, b])` = ab.
    pub fn product(vars: &[Symbol]) -> Self {
        Self::monomial(Monomial::from_pairs(vars.iter().map(|s| (s.clone(), 1))))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            let e = terms.entry(m).or_insert_with(BigRational::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn single_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    /// Minimum and maximum exponent of `s` over all terms (0 if absent).
    pub fn exponent_range(&self, s: &Symbol) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = 0;
        for m in self.terms.keys() {
            let e = m.exponent(s);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        (lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self, ArithError> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            terms.insert(n.mul(m)?, c.clone());
        }
        Ok(LaurentPolynomial { terms })
    }

    pub fn try_add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(d) => {
                    *d += c;
                    if d.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        LaurentPolynomial { terms }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2)?;
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(d) => *d += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(LaurentPolynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: &Symbol) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == 0 {
                continue;
            }
            let mut pairs: Vec<(Symbol, i64)> = rest.exponents().to_vec();
            pairs.push((v.clone(), e - 1));
            terms.insert(Monomial::from_pairs(pairs), c * int(e));
        }
        LaurentPolynomial { terms }
    }

    /// `v * d/dv`, which keeps monomials and multiplies by the exponent.
    pub fn euler(&self, v: &Symbol) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let e = m.exponent(v);
                    (e != 0).then(|| (m.clone(), c * int(e)))
                })
                .collect(),
        }
    }

    /// Sub-polynomial of terms whose exponents on the given symbols match exactly,
    /// with those symbols removed.
    pub fn coefficient(&self, partial: &[(Symbol, i64)]) -> Self {
        let mut terms = BTreeMap::new();
        'outer: for (m, c) in &self.terms {
            let mut rest = m.clone();
            for (s, e) in partial {
                let (f, r) = rest.split_off(s);
                if f != *e {
                    continue 'outer;
                }
                rest = r;
            }
            terms.insert(rest, c.clone());
        }
        LaurentPolynomial { terms }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Entry-wise minimum exponent over all terms (a monomial unit dividing everything).
    pub fn monomial_floor(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        let mut pairs: BTreeMap<Symbol, i64> =
            first.exponents().iter().cloned().collect();
        for m in it {
            for (s, e) in pairs.iter_mut() {
                *e = (*e).min(m.exponent(s));
            }
            for (s, e) in m.exponents() {
                if !pairs.contains_key(s) {
                    pairs.insert(s.clone(), (*e).min(0));
                }
            }
        }
        Monomial::from_pairs(pairs)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next()
    }

    /// Applies a homomorphism into any commutative ring, given the images of
    /// variables and, where needed, of their inverses.
    pub fn eval<R, F>(&self, image: F) -> Result<R, ArithError>
    where
        R: EvalRing,
        F: Fn(&Symbol) -> Option<(R, Option<R>)>,
    {
        let mut cache: HashMap<Symbol, (R, Option<R>)> = HashMap::new();
        let mut total = R::zero_like();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (s, e) in m.exponents() {
                if !cache.contains_key(s) {
                    let img = image(s).ok_or_else(|| ArithError::UnboundSymbol(s.to_string()))?;
                    cache.insert(s.clone(), img);
                }
                let (v, inv) = &cache[s];
                let base = if *e > 0 {
                    v
                } else {
                    inv.as_ref().ok_or_else(|| ArithError::NoInverse(s.to_string()))?
                };
                t = t.ring_mul(&base.ring_pow(e.unsigned_abs()));
            }
            total = total.ring_add(&t);
        }
        Ok(total)
    }

    pub fn map_coefficients<F: Fn(&BigRational) -> BigRational>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Serializes to `{"terms":[{"exps":{..},"coef":".."}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .exponents()
                    .iter()
                    .map(|(s, e)| (s.name().to_string(), serde_json::Value::from(*e)))
                    .collect();
                serde_json::json!({"exps": exps, "coef": c.to_string()})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ArithError> {
        let bad = || ArithError::Parse("malformed polynomial json".into());
        let arr = v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)?;
        let mut out = Vec::new();
        for t in arr {
            let exps = t.get("exps").and_then(|e| e.as_object()).ok_or_else(bad)?;
            let coef = t.get("coef").and_then(|c| c.as_str()).ok_or_else(bad)?;
            let c: BigRational = coef.parse().map_err(|_| bad())?;
            let mut pairs = Vec::new();
            for (k, e) in exps {
                pairs.push((Symbol::new(k), e.as_i64().ok_or_else(bad)?));
            }
            out.push((Monomial::from_pairs(pairs), c));
        }
        Ok(Self::from_terms(out))
    }

    /// Parses expressions like `3/4*x^2*y^-1 - z + 2`.
    pub fn parse(s: &str) -> Result<Self, ArithError> {
        super::parse::parse_polynomial(s)
    }
}

/// Target rings for [`LaurentPolynomial::eval`].
pub trait EvalRing: Clone {
    fn zero_like() -> Self;
    fn from_rational(c: &BigRational) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_pow(&self, n: u64) -> Self {
        let mut result = Self::from_rational(&BigRational::one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.ring_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.ring_mul(&base);
            }
        }
        result
    }
}

impl EvalRing for BigRational {
    fn zero_like() -> Self {
        BigRational::zero()
    }
    fn from_rational(c: &BigRational) -> Self {
        c.clone()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl EvalRing for LaurentPolynomial {
    fn zero_like() -> Self {
        LaurentPolynomial::zero()
    }
    fn from_rational(c: &BigRational) -> Self {
        LaurentPolynomial::constant(c.clone())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_add(rhs)
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_add(&-rhs)
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_mul(rhs).expect("exponent overflow in polynomial product")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t { (&self).$m(rhs) }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { self.$m(&rhs) }
        }
    )*};
}
pub(crate) use owned_ops;

owned_ops!(LaurentPolynomial, Add add, Sub sub, Mul mul);

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Symbol> for LaurentPolynomial {
    fn from(s: &Symbol) -> Self {
        Self::var(s)
    }
}
