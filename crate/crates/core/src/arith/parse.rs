//! Minimal reader for polynomial literals used in tests and the CLI.

use num::{BigInt, BigRational, One};

use super::{ArithError, LaurentPolynomial, Monomial, Symbol};

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> ArithError {
        ArithError::Parse(format!("{} at byte {}", what, self.i))
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.i]).ok()?.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.i;
        if self.i < self.s.len() && self.s[self.i].is_ascii_alphabetic() {
            self.i += 1;
            while self.i < self.s.len()
                && (self.s[self.i].is_ascii_alphanumeric()
                    || self.s[self.i] == b'_'
                    || self.s[self.i] == b'\'')
            {
                self.i += 1;
            }
            Some(String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
        } else {
            None
        }
    }

    fn signed_int(&mut self) -> Result<i64, ArithError> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let v: i64 = d.try_into().map_err(|_| ArithError::ExponentOverflow)?;
        Ok(if neg { -v } else { v })
    }
}

fn term(c: &mut Cursor) -> Result<(Monomial, BigRational), ArithError> {
    let mut coef = BigRational::one();
    let mut pairs = Vec::new();
    let mut expect_factor = true;
    if let Some(n) = c.digits() {
        let mut r = BigRational::from_integer(n);
        if c.eat(b'/') {
            let d = c.digits().ok_or_else(|| c.err("expected denominator"))?;
            r /= BigRational::from_integer(d);
        }
        coef = r;
        expect_factor = c.eat(b'*');
    }
    if expect_factor {
        loop {
            let name = c.ident().ok_or_else(|| c.err("expected variable"))?;
            let e = if c.eat(b'^') { c.signed_int()? } else { 1 };
            pairs.push((Symbol::new(&name), e));
            if !c.eat(b'*') {
                break;
            }
        }
    }
    Ok((Monomial::from_pairs(pairs), coef))
}

pub(crate) fn parse_polynomial(s: &str) -> Result<LaurentPolynomial, ArithError> {
    let mut c = Cursor { s: s.as_bytes(), i: 0 };
    let mut out = Vec::new();
    let mut sign = if c.eat(b'-') { -1 } else { 1 };
    loop {
        let (m, k) = term(&mut c)?;
        out.push((m, if sign < 0 { -k } else { k }));
        if c.eat(b'+') {
            sign = 1;
        } else if c.eat(b'-') {
            sign = -1;
        } else {
            break;
        }
    }
    if c.peek().is_some() {
        return Err(c.err("trailing input"));
    }
    Ok(LaurentPolynomial::from_terms(out))
}
