//! Sparse polynomials over GF(p) with packed exponent vectors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::PrimeField;

pub const MAX_VARS: usize = 8;

/// Exponent vector packed into a `u64`, eight bits per variable.
///
/// Variable 0 sits in the most significant byte, so integer comparison is
/// lexicographic comparison of exponent vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    #[inline]
    fn shift(i: usize) -> u32 {
        (8 * (MAX_VARS - 1 - i)) as u32
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut v = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent overflow");
            v |= (e as u64) << Self::shift(i);
        }
        Mono(v)
    }

    pub fn var(i: usize) -> Self {
        Mono(1u64 << Self::shift(i))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    /// Product of monomials. Callers keep degrees below 256 per variable.
    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!((0..MAX_VARS).all(|i| self.exp(i) + other.exp(i) < 256));
        Mono(self.0 + other.0)
    }

    pub fn divides(self, other: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// Number of variable factors counted with multiplicity.
    pub fn std_degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    pub fn weighted_degree(self, weights: &[u32]) -> i32 {
        weights.iter().enumerate().map(|(i, &w)| (w * self.exp(i)) as i32).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

/// All monomials of weighted degree `d`, in descending lex order.
pub fn monomials_of_degree(weights: &[u32], d: i32) -> Vec<Mono> {
    fn rec(weights: &[u32], i: usize, left: i32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Mono::from_exps(cur));
            }
            return;
        }
        let w = weights[i] as i32;
        let mut e = left / w;
        loop {
            cur.push(e as u32);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(weights, 0, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Polynomial with coefficients in `0..p`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, u32>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: u32) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn monomial(m: Mono, c: u32) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(f: &PrimeField, terms: impl IntoIterator<Item = (Mono, u32)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(f, m, c);
        }
        p
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

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Mono, u32)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, m: Mono) -> u32 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, f: &PrimeField, m: Mono, c: u32) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add_u(*e, c);
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, f: &PrimeField, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in other.terms() {
            r.add_term(f, m, c);
        }
        r
    }

    pub fn sub(&self, f: &PrimeField, other: &Poly) -> Poly {
        self.add(f, &other.neg(f))
    }

    pub fn neg(&self, f: &PrimeField) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, f.neg_u(*c))).collect() }
    }

    pub fn scale(&self, f: &PrimeField, s: u32) -> Poly {
        if s == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, f.mul_u(*c, s))).collect() }
    }

    pub fn mul(&self, f: &PrimeField, other: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                r.add_term(f, m1.mul(m2), f.mul_u(c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, f: &PrimeField, e: u32) -> Poly {
        let mut r = Poly::constant(1 % f.modulus());
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    /// The weighted degree if all terms share it; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// The constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Mono::ONE).copied(),
            _ => None,
        }
    }

    pub fn format(&self, f: &PrimeField, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let sc = f.signed(c);
            let (neg, abs) = (sc < 0, sc.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, v) in vars.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(v.clone()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                let _ = write!(s, "{abs}");
            } else {
                if abs != 1 {
                    let _ = write!(s, "{abs}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// Parses a polynomial such as `x^2 + 3*y^3 - x y`.
///
/// Accepts integer coefficients, `^` powers, optional `*`, and parentheses.
/// Errors carry the 1-based line and column of the offending character.
pub fn parse_poly(src: &str, vars: &[String], field: &PrimeField) -> Result<Poly> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, vars, field };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty polynomial"));
    }
    let r = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected character '{}'", p.chars[p.pos])));
    }
    Ok(r)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    field: &'a PrimeField,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse { line, column, message: msg.to_string() }
    }

    fn expr(&mut self) -> Result<Poly> {
        let f = *self.field;
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negate = false;
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ if first => {}
                _ => break,
            }
            let t = self.term()?;
            acc = if negate { acc.sub(&f, &t) } else { acc.add(&f, &t) };
            first = false;
            self.skip_ws();
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let f = *self.field;
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let g = self.factor()?;
                    acc = acc.mul(&f, &g);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '_' => {
                    let g = self.factor()?;
                    acc = acc.mul(&f, &g);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let e = self.number()?;
        if e > 255 {
            self.pos = at;
            return Err(self.error("exponent too large"));
        }
        Ok(e as u32)
    }

    fn factor(&mut self) -> Result<Poly> {
        let f = *self.field;
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(&f, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let c = (n % f.modulus() as u64) as u32;
                Ok(Poly::constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    self.pos = start;
                    return Err(self.error(&format!("unknown variable '{name}'")));
                };
                let e = self.exponent()?;
                let mut exps = vec![0u32; self.vars.len()];
                exps[i] = e;
                Ok(Poly::monomial(Mono::from_exps(&exps), 1 % f.modulus()))
            }
            Some(c) => Err(self.error(&format!("unexpected character '{c}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn packed_order_is_lex() {
        let x = Mono::from_exps(&[1, 0]);
        let y2 = Mono::from_exps(&[0, 2]);
        assert!(x > y2);
        assert_eq!(x.mul(y2).exps(2), vec![1, 2]);
        assert_eq!(Mono::var(1), Mono::from_exps(&[0, 1]));
    }

    #[test]
    fn weighted_enumeration() {
        // x^2, y^3 under weights (3, 2)
        let ms = monomials_of_degree(&[3, 2], 6);
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].exps(2), vec![2, 0]);
        assert_eq!(monomials_of_degree(&[1, 1, 1], 3).len(), 10);
        assert!(monomials_of_degree(&[2], 3).is_empty());
        assert_eq!(monomials_of_degree(&[1, 1], 0), vec![Mono::ONE]);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let v = vars(&["x", "y"]);
        let p = parse_poly("x^2 + 3*y^3 - x y", &v, &f).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(Mono::from_exps(&[1, 1])), 6);
        let q = parse_poly(&p.format(&f, &v), &v, &f).unwrap();
        assert_eq!(p, q);
        let r = parse_poly("(x+y)^2", &v, &f).unwrap();
        assert_eq!(r.coeff(Mono::from_exps(&[1, 1])), 2);
        assert_eq!(parse_poly("-1", &v, &f).unwrap(), Poly::constant(6));
    }

    #[test]
    fn parse_errors_report_position() {
        let f = PrimeField::new(7).unwrap();
        let v = vars(&["x", "y"]);
        match parse_poly("x + z", &v, &f) {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x +\n  y $", &v, &f) {
            Err(Error::Parse { line: 2, column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("", &v, &f).is_err());
    }

    #[test]
    fn homogeneity() {
        let f = PrimeField::new(5).unwrap();
        let v = vars(&["x", "y"]);
        let p = parse_poly("x^2+y^3", &v, &f).unwrap();
        assert_eq!(p.homogeneous_degree(&[3, 2]), Some(6));
        assert_eq!(p.homogeneous_degree(&[1, 1]), None);
    }
}
