use std::fmt;

use super::{ArithError, Symbol};

/// A Laurent monomial: sorted `(symbol, exponent)` pairs with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Symbol, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i64)>>(pairs: I) -> Self {
        let mut v: Vec<(Symbol, i64)> = pairs.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, i64)> = Vec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => out.push((s, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Symbol, i64)] {
        &self.0
    }

    pub fn exponent(&self, s: &Symbol) -> i64 {
        match self.0.binary_search_by(|(t, _)| t.cmp(s)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, ArithError> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).ok_or(ArithError::ExponentOverflow)?;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Monomial(out))
    }

    pub fn pow(&self, n: i64) -> Result<Monomial, ArithError> {
        if n == 0 {
            return Ok(Monomial::one());
        }
        let mut v = Vec::with_capacity(self.0.len());
        for (s, e) in &self.0 {
            v.push((s.clone(), e.checked_mul(n).ok_or(ArithError::ExponentOverflow)?));
        }
        Ok(Monomial(v))
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect())
    }

    /// Removes one variable, returning its exponent and the remaining monomial.
    pub fn split_off(&self, s: &Symbol) -> (i64, Monomial) {
        let mut rest = self.0.clone();
        match rest.binary_search_by(|(t, _)| t.cmp(s)) {
            Ok(i) => {
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, Monomial(rest)),
        }
    }

    /// Entry-wise minimum of exponents, treating absent variables as 0.
    pub fn gcd_floor(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(Symbol, i64)> = Vec::new();
        for (s, e) in &self.0 {
            let f = other.exponent(s);
            pairs.push((s.clone(), (*e).min(f)));
        }
        for (s, f) in &other.0 {
            if self.exponent(s) == 0 {
                pairs.push((s.clone(), (*f).min(0)));
            }
        }
        Monomial::from_pairs(pairs)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{}^{}", s, e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
