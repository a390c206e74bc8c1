use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A sparse monomial: sorted list of `(variable index, exponent)` pairs with
/// strictly positive exponents.
///
/// The derived ordering on variables (by index) is the diagonal variable
/// order, so the `Ord` implementation below is exactly the graded
/// diagonal-lexicographic monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[(u32, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: SmallVec::new() }
    }

    pub fn var(index: usize) -> Self {
        Monomial { exps: smallvec::smallvec![(index as u32, 1)] }
    }

    /// Build from unsorted pairs; exponents for repeated variables are added,
    /// zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exps: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            exps.push((v as u32, e));
        }
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps
            .binary_search_by_key(&(var as u32), |&(v, _)| v)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|&(v, _)| v as usize)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    exps.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    exps.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v as usize) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        let mut mine = self.exps.iter().peekable();
        for &(v, e) in &other.exps {
            let sub = match mine.peek() {
                Some(&&(mv, me)) if mv == v => {
                    mine.next();
                    me
                }
                _ => 0,
            };
            if sub > e {
                return None;
            }
            if e - sub > 0 {
                exps.push((v, e - sub));
            }
        }
        if mine.peek().is_some() {
            return None;
        }
        Some(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for &(v, e) in &self.exps {
            let oe = other.exponent(v as usize);
            let m = e.min(oe);
            if m > 0 {
                exps.push((v, m));
            }
        }
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((va, ea.max(eb)));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    exps.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    exps.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { exps }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    /// All divisors of `self` of total degree `k`, in no particular order.
    pub fn divisors_of_degree(&self, k: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        fn rec(
            exps: &[(u32, u32)],
            pos: usize,
            remaining: usize,
            cur: &mut SmallVec<[(u32, u32); 4]>,
            out: &mut Vec<Monomial>,
        ) {
            if remaining == 0 {
                out.push(Monomial { exps: cur.clone() });
                return;
            }
            if pos >= exps.len() {
                return;
            }
            let tail: usize = exps[pos..].iter().map(|&(_, e)| e as usize).sum();
            if tail < remaining {
                return;
            }
            let (v, e) = exps[pos];
            let max_take = (e as usize).min(remaining);
            for take in 0..=max_take {
                if take > 0 {
                    cur.push((v, take as u32));
                }
                rec(exps, pos + 1, remaining - take, cur, out);
                if take > 0 {
                    cur.pop();
                }
            }
        }
        rec(&self.exps, 0, k, &mut cur, &mut out);
        out
    }
}

/// Graded diagonal-lexicographic order: total degree first, then
/// lexicographic with respect to the descending variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter().rev();
        let mut b = other.exps.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    match va.cmp(&vb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "v{v}")?;
            } else {
                write!(f, "v{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Enumerate all monomials of total degree `k` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur: Vec<(u32, u32)> = Vec::new();
    fn rec(nvars: usize, from: usize, remaining: usize, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial { exps: cur.iter().copied().collect() });
            return;
        }
        if from >= nvars {
            return;
        }
        for e in (1..=remaining).rev() {
            cur.push((from as u32, e as u32));
            rec(nvars, from + 1, remaining - e, cur, out);
            cur.pop();
        }
        rec(nvars, from + 1, remaining, cur, out);
    }
    rec(nvars, 0, k, &mut cur, &mut out);
    out
}

/// dim of the space of degree-`k` monomials in `nvars` variables,
/// i.e. C(nvars + k - 1, k).
pub fn monomial_space_dim(nvars: usize, k: usize) -> usize {
    crate::bounds::binomial(nvars + k - 1, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_div_roundtrip() {
        let m = Monomial::from_pairs([(0, 2), (3, 1)]);
        let n = Monomial::from_pairs([(0, 1), (5, 2)]);
        let p = m.mul(&n);
        assert_eq!(p.degree(), 6);
        assert_eq!(m.quotient_of(&p), Some(n.clone()));
        assert!(n.divides(&p));
        assert!(!p.divides(&n));
    }

    #[test]
    fn order_is_graded_then_lex_from_top() {
        let a = Monomial::var(0);
        let b = Monomial::var(1);
        assert!(b > a);
        assert!(a.mul(&b) > b); // degree dominates
        // d11*d22 vs d12*d21 in a 2x2 grid (col-major: d11=0, d21=1, d12=2, d22=3)
        let diag = Monomial::from_pairs([(0, 1), (3, 1)]);
        let anti = Monomial::from_pairs([(1, 1), (2, 1)]);
        assert!(diag > anti);
    }

    #[test]
    fn divisor_enumeration() {
        let m = Monomial::from_pairs([(0, 2), (1, 1)]);
        let mut d1 = m.divisors_of_degree(1);
        d1.sort();
        assert_eq!(d1, vec![Monomial::var(0), Monomial::var(1)]);
        assert_eq!(m.divisors_of_degree(2).len(), 2); // v0^2, v0*v1
        assert_eq!(m.divisors_of_degree(3), vec![m.clone()]);
    }

    #[test]
    fn degree_enumeration_count() {
        assert_eq!(monomials_of_degree(4, 3).len(), monomial_space_dim(4, 3));
        assert_eq!(monomial_space_dim(4, 3), 20);
    }
}
