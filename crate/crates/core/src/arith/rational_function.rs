use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigRational, One, Zero};

use super::laurent::owned_ops;
use super::{ArithError, LaurentPolynomial, Monomial, Symbol};

/// A quotient of Laurent polynomials. No gcd normal form is kept; equality is
/// decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

pub type Substitution = BTreeMap<Symbol, RationalFunction>;

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    /// `num / den`, panicking on a zero denominator.
    pub fn ratio(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    pub fn zero() -> Self {
        RationalFunction { num: LaurentPolynomial::zero(), den: LaurentPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPolynomial::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from(LaurentPolynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from(LaurentPolynomial::from_int(n))
    }

    pub fn var(s: &Symbol) -> Self {
        Self::from(LaurentPolynomial::var(s))
    }

    pub fn named(name: &str) -> Self {
        Self::var(&Symbol::new(name))
    }

    pub fn parse(s: &str) -> Result<Self, ArithError> {
        Ok(Self::from(LaurentPolynomial::parse(s)?))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPolynomial, LaurentPolynomial) {
        (self.num, self.den)
    }

    /// Returns the underlying Laurent polynomial when the denominator is a unit.
    pub fn as_laurent(&self) -> Option<LaurentPolynomial> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&(BigRational::one() / c)))
    }

    fn normalized(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = den.single_term() {
            let scale = BigRational::one() / c;
            let num = num
                .mul_monomial(&m.inverse())
                .expect("exponent overflow")
                .scale(&scale);
            return RationalFunction { num, den: LaurentPolynomial::one() };
        }
        let floor = den.monomial_floor().inverse();
        let lead = den.leading().map(|(_, c)| BigRational::one() / c).unwrap();
        let den = den.mul_monomial(&floor).expect("exponent overflow").scale(&lead);
        let num = num.mul_monomial(&floor).expect("exponent overflow").scale(&lead);
        if num.len() == den.len() {
            // detect num = k * den up to a monomial
            let (mn, cn) = num.leading().unwrap();
            let (md, cd) = den.leading().unwrap();
            let shift = mn.mul(&md.inverse()).expect("exponent overflow");
            let k = cn / cd;
            if den.mul_monomial(&shift).expect("exponent overflow").scale(&k) == num {
                return RationalFunction {
                    num: LaurentPolynomial::term(shift, k),
                    den: LaurentPolynomial::one(),
                };
            }
        }
        RationalFunction { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    /// Exact identity test by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Result<Self, ArithError> {
        if n >= 0 {
            let e = u32::try_from(n).map_err(|_| ArithError::ExponentOverflow)?;
            Ok(Self::normalized(self.num.pow(e), self.den.pow(e)))
        } else {
            self.inverse()?.pow(-n)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Quotient-rule partial derivative.
    pub fn partial(&self, v: &Symbol) -> Self {
        let dn = self.num.partial(v);
        if self.den.as_constant().is_some() {
            return Self::normalized(dn, self.den.clone());
        }
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    /// Logarithmic derivative operator `v * d/dv`.
    pub fn euler(&self, v: &Symbol) -> Self {
        let en = self.num.euler(v);
        let ed = self.den.euler(v);
        if ed.is_zero() {
            return Self::normalized(en, self.den.clone());
        }
        let num = &(&en * &self.den) - &(&self.num * &ed);
        Self::normalized(num, &self.den * &self.den)
    }

    /// Substitutes rational-function images for symbols; unmapped symbols stay.
    pub fn substitute(&self, map: &Substitution) -> Result<Self, ArithError> {
        let (n, d) = substitute_pair(&self.num, &self.den, map)?;
        if d.is_zero() {
            return Err(ArithError::SubstitutionDenominatorZero);
        }
        Ok(Self::normalized(n, d))
    }

    /// Evaluates at a rational point; `None` if the denominator vanishes.
    pub fn eval_rational(&self, point: &HashMap<Symbol, BigRational>) -> Result<Option<BigRational>, ArithError> {
        let img = |s: &Symbol| {
            point.get(s).map(|v| {
                let inv = if v.is_zero() { None } else { Some(BigRational::one() / v) };
                (v.clone(), inv)
            })
        };
        let d: BigRational = self.den.eval(img)?;
        if d.is_zero() {
            return Ok(None);
        }
        let n: BigRational = self.num.eval(img)?;
        Ok(Some(n / d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

fn substitute_pair(
    num: &LaurentPolynomial,
    den: &LaurentPolynomial,
    map: &Substitution,
) -> Result<(LaurentPolynomial, LaurentPolynomial), ArithError> {
    // common exponent window per mapped variable, so both parts share a denominator
    let mut window: BTreeMap<Symbol, (i64, i64)> = BTreeMap::new();
    for p in [num, den] {
        for s in p.variables() {
            if map.contains_key(&s) {
                let (lo, hi) = p.exponent_range(&s);
                let w = window.entry(s).or_insert((0, 0));
                w.0 = w.0.min(lo);
                w.1 = w.1.max(hi);
            }
        }
    }
    let mut powers: HashMap<Symbol, (Vec<LaurentPolynomial>, Vec<LaurentPolynomial>)> =
        HashMap::new();
    for (s, (lo, hi)) in &window {
        let img = &map[s];
        let span = (hi - lo) as usize;
        let mut np = vec![LaurentPolynomial::one()];
        let mut dp = vec![LaurentPolynomial::one()];
        for k in 0..span {
            np.push(&np[k] * &img.num);
            dp.push(&dp[k] * &img.den);
        }
        powers.insert(s.clone(), (np, dp));
    }
    let apply = |p: &LaurentPolynomial| -> Result<LaurentPolynomial, ArithError> {
        let mut acc = LaurentPolynomial::zero();
        for (m, c) in p.terms() {
            let mut rest: Vec<(Symbol, i64)> = Vec::new();
            let mut t = LaurentPolynomial::constant(c.clone());
            for (s, e) in m.exponents() {
                if !window.contains_key(s) {
                    rest.push((s.clone(), *e));
                }
            }
            // variables absent from the term still contribute with exponent 0
            for (s, (lo, hi)) in &window {
                let e = m.exponent(s);
                let (np, dp) = &powers[s];
                t = &t * &np[(e - lo) as usize];
                t = &t * &dp[(hi - e) as usize];
            }
            if !rest.is_empty() {
                t = t.mul_monomial(&Monomial::from_pairs(rest))?;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    };
    Ok((apply(num)?, apply(den)?))
}

/// Substitution helper from `(name, image)` pairs.
pub fn substitution<I, S>(pairs: I) -> Substitution
where
    I: IntoIterator<Item = (S, RationalFunction)>,
    S: Into<Symbol>,
{
    pairs.into_iter().map(|(s, f)| (s.into(), f)).collect()
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction { num: p, den: LaurentPolynomial::one() }
    }
}

impl From<&LaurentPolynomial> for RationalFunction {
    fn from(p: &LaurentPolynomial) -> Self {
        Self::from(p.clone())
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        let inv = rhs.inverse().expect("division by zero rational function");
        self * &inv
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

owned_ops!(RationalFunction, Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RationalFunction {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
