use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::VariableGrid;
use crate::monomial::Monomial;

/// Which of the two paired rings a polynomial lives in: `R = k[a_ij]`
/// (the base ring carrying the invariants) or `S = k[d_ij]` (the ring of
/// contraction operators).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Base,
    Dual,
}

/// Sparse polynomial with exact rational coefficients over the canonical
/// variables of a [`VariableGrid`]. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub side: Side,
    pub grid: VariableGrid,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(side: Side, grid: VariableGrid) -> Self {
        Polynomial { side, grid, terms: BTreeMap::new() }
    }

    pub fn constant(side: Side, grid: VariableGrid, c: BigRational) -> Self {
        let mut p = Polynomial::zero(side, grid);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn monomial(side: Side, grid: VariableGrid, m: Monomial, c: BigRational) -> Self {
        let mut p = Polynomial::zero(side, grid);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        side: Side,
        grid: VariableGrid,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Polynomial::zero(side, grid);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Terms in ascending diagonal-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under the graded diagonal-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.side != other.side {
            return Err(Error::RingMismatch);
        }
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            side: self.side,
            grid: self.grid,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.side, self.grid);
        }
        Polynomial {
            side: self.side,
            grid: self.grid,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.side, self.grid);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            side: self.side,
            grid: self.grid,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Contraction action `self ∘ target`: each dual variable `d_ij` lowers
    /// the exponent of the matching base variable, a monomial acting as the
    /// product of its variable actions.
    pub fn contract(&self, target: &Polynomial) -> Result<Polynomial> {
        if self.side != Side::Dual || target.side != Side::Base {
            return Err(Error::RingMismatch);
        }
        if self.grid != target.grid {
            return Err(Error::GridMismatch);
        }
        let mut out = Polynomial::zero(Side::Base, target.grid);
        for (mh, ch) in &self.terms {
            for (mf, cf) in &target.terms {
                if let Some(q) = mh.quotient_of(mf) {
                    out.add_term(q, ch * cf);
                }
            }
        }
        Ok(out)
    }

    /// Substitute 1 for one variable (dehomogenization).
    pub fn substitute_one(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.side, self.grid);
        for (m, c) in &self.terms {
            let reduced = Monomial::from_pairs(m.iter().filter(|&(v, _)| v != var));
            out.add_term(reduced, c.clone());
        }
        out
    }

    /// Re-tag to the other ring via the variable correspondence
    /// `a_ij <-> d_ij` (same grid, same exponents).
    pub fn with_side(&self, side: Side) -> Polynomial {
        Polynomial { side, grid: self.grid, terms: self.terms.clone() }
    }

    /// Canonical text form: terms in descending diagonal-lex order, exact
    /// fraction coefficients, variables printed as e.g. `a_{1,2}`.
    pub fn canonical_text(&self) -> String {
        format!("{self}")
    }

    /// Parse the canonical text format (round-trip inverse of
    /// [`Polynomial::canonical_text`]); whitespace-tolerant.
    pub fn parse(side: Side, grid: VariableGrid, input: &str) -> Result<Polynomial> {
        Parser { side, grid, chars: input.chars().collect(), pos: 0 }.parse()
    }
}

struct Parser {
    side: Side,
    grid: VariableGrid,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::InvalidArgument(format!("parse error at offset {}: {msg}", self.pos)))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{c}'"))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.integer()?;
        v.try_into().map_err(|_| Error::InvalidArgument("index out of range".into()))
    }

    // letter_{i,j}[^e]
    fn factor(&mut self) -> Result<(usize, u32)> {
        let letter = self.grid.letter(self.side);
        if !self.eat(letter) {
            return self.err(&format!("expected variable letter '{letter}'"));
        }
        self.expect('_')?;
        self.expect('{')?;
        let i = self.index()?;
        self.expect(',')?;
        let j = self.index()?;
        self.expect('}')?;
        if i < 1 || i > self.grid.rows || j < 1 || j > self.grid.cols {
            return self.err("cell out of range");
        }
        let (idx, sign) = match self.grid.cell(i, j) {
            Some((idx, 1)) => (idx, 1),
            Some(_) | None => return self.err("cell is not a canonical variable"),
        };
        let _ = sign;
        let mut e = 1u32;
        if self.eat('^') {
            let v = self.integer()?;
            e = v.try_into().map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
            if e == 0 {
                return self.err("exponent must be positive");
            }
        }
        Ok((idx, e))
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.side, self.grid);
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        if self.chars.iter().collect::<String>().trim() == "0" {
            return Ok(out);
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') {
                if first {
                    return self.err("unexpected '+'");
                }
                false
            } else if first {
                false
            } else if self.peek().is_none() {
                break;
            } else {
                return self.err("expected '+' or '-'");
            };
            first = false;
            self.skip_ws();
            // optional coefficient
            let had_coeff = matches!(self.peek(), Some(c) if c.is_ascii_digit());
            let mut coeff = if had_coeff {
                let num = self.integer()?;
                let den = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                BigRational::new(num, den)
            } else {
                BigRational::one()
            };
            if negative {
                coeff = -coeff;
            }
            // optional monomial: factors separated by '*'
            let mut pairs: Vec<(usize, u32)> = Vec::new();
            loop {
                self.skip_ws();
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        self.skip_ws();
                        pairs.push(self.factor()?);
                    }
                    Some(c) if c == self.grid.letter(self.side) && pairs.is_empty() => {
                        pairs.push(self.factor()?);
                    }
                    _ => break,
                }
            }
            if !had_coeff && pairs.is_empty() {
                return self.err("expected a coefficient or a variable");
            }
            out.add_term(Monomial::from_pairs(pairs), coeff);
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.grid.letter(self.side);
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                // print variables in row-major reading order
                let mut cells: Vec<(usize, usize, u32)> = m
                    .iter()
                    .map(|(v, e)| {
                        let (i, j) = self.grid.var_cell(v);
                        (i, j, e)
                    })
                    .collect();
                cells.sort_unstable();
                let mut firstv = true;
                for (i, j, e) in cells {
                    if !firstv {
                        write!(f, "*")?;
                    }
                    firstv = false;
                    write!(f, "{letter}_{{{i},{j}}}")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::VariableGrid;

    fn g2() -> VariableGrid {
        VariableGrid::generic(2, 2).unwrap()
    }

    fn var(grid: VariableGrid, side: Side, i: usize, j: usize) -> Polynomial {
        let (idx, s) = grid.cell(i, j).unwrap();
        Polynomial::monomial(side, grid, Monomial::var(idx), rat(s))
    }

    fn det2(grid: VariableGrid) -> Polynomial {
        // a11*a22 - a12*a21
        let a11 = var(grid, Side::Base, 1, 1);
        let a22 = var(grid, Side::Base, 2, 2);
        let a12 = var(grid, Side::Base, 1, 2);
        let a21 = var(grid, Side::Base, 2, 1);
        a11.mul(&a22).unwrap().sub(&a12.mul(&a21).unwrap()).unwrap()
    }

    #[test]
    fn add_cancels_inverse() {
        let g = g2();
        let p = var(g, Side::Base, 1, 1).mul(&var(g, Side::Base, 2, 2)).unwrap();
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_merges_coefficients() {
        let g = g2();
        let d = det2(g);
        let m = var(g, Side::Base, 1, 2).mul(&var(g, Side::Base, 2, 1)).unwrap();
        let s = d.add(&m.scale(&rat(2))).unwrap();
        // a11a22 - a12a21 + 2 a12a21 = a11a22 + a12a21
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coefficient(m.leading().unwrap().0), rat(1));
    }

    #[test]
    fn add_identity() {
        let g = g2();
        let d = det2(g);
        assert_eq!(d.add(&Polynomial::zero(Side::Base, g)).unwrap(), d);
    }

    #[test]
    fn mul_difference_of_squares() {
        let g = g2();
        let a = var(g, Side::Base, 1, 1);
        let d = var(g, Side::Base, 2, 2);
        let p = a.add(&d).unwrap().mul(&a.sub(&d).unwrap()).unwrap();
        let expect = a.mul(&a).unwrap().sub(&d.mul(&d).unwrap()).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn mul_identity_and_square() {
        let g = g2();
        let d = det2(g);
        let one = Polynomial::constant(Side::Base, g, rat(1));
        assert_eq!(one.mul(&d).unwrap(), d);
        let d12 = var(g, Side::Dual, 1, 2);
        let sq = d12.mul(&d12).unwrap();
        assert_eq!(sq.leading().unwrap().0.degree(), 2);
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn mul_ring_mismatch() {
        let g = g2();
        let p = var(g, Side::Base, 1, 1);
        let q = var(g, Side::Dual, 1, 1);
        assert!(matches!(p.mul(&q), Err(Error::RingMismatch)));
    }

    #[test]
    fn contract_single_variable() {
        let g = g2();
        let d11 = var(g, Side::Dual, 1, 1);
        let out = d11.contract(&det2(g)).unwrap();
        assert_eq!(out, var(g, Side::Base, 2, 2));
    }

    #[test]
    fn contract_full_term() {
        let g = g2();
        let d11d22 = var(g, Side::Dual, 1, 1).mul(&var(g, Side::Dual, 2, 2)).unwrap();
        let out = d11d22.contract(&det2(g)).unwrap();
        assert_eq!(out, Polynomial::constant(Side::Base, g, rat(1)));
    }

    #[test]
    fn parse_roundtrip() {
        let g = g2();
        let d = det2(g);
        assert_eq!(Polynomial::parse(Side::Base, g, &d.canonical_text()).unwrap(), d);
        let scaled = d.scale(&(rat(-3) / rat(8)));
        assert_eq!(Polynomial::parse(Side::Base, g, &scaled.canonical_text()).unwrap(), scaled);
        let c = Polynomial::constant(Side::Dual, g, rat(1) / rat(4));
        assert_eq!(Polynomial::parse(Side::Dual, g, "1/4").unwrap(), c);
        assert_eq!(Polynomial::parse(Side::Base, g, "0").unwrap(), Polynomial::zero(Side::Base, g));
        let sq = Polynomial::parse(Side::Dual, g, "d_{1,2}^2 - 2*d_{1,1}*d_{2,2}").unwrap();
        assert_eq!(sq.num_terms(), 2);
        assert_eq!(sq.canonical_text(), "-2*d_{1,1}*d_{2,2} + d_{1,2}^2");
        assert!(Polynomial::parse(Side::Base, g, "a_{1,1} +").is_err());
        assert!(Polynomial::parse(Side::Base, g, "b_{1,1}").is_err());
        assert!(Polynomial::parse(Side::Base, g, "a_{3,1}").is_err());
    }

    #[test]
    fn display_canonical() {
        let g = g2();
        let d = det2(g);
        assert_eq!(d.canonical_text(), "a_{1,1}*a_{2,2} - a_{1,2}*a_{2,1}");
        let half = d.scale(&(rat(-1) / rat(24)));
        assert!(half.canonical_text().starts_with("-1/24*"));
    }
}
