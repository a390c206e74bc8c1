//! Exact linear algebra: incremental sparse row echelon over an abstract
//! field (the rationals, or a word-size prime field as a fast path for rank
//! computations), kernel extraction for catalecticant maps, and a dense
//! fraction-free Bareiss rank as an independent route.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Default word prime for the mod-p fast path.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Coefficient field for rank computations.
pub trait Field {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    // takes &self: the conversion depends on the field instance (e.g. the prime)
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &BigRational) -> Self::Elem;
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn one(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(1))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
}

/// Prime field `Z/p` for a word prime `p < 2^32`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 32), "prime must fit a machine word");
        PrimeField { p }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0);
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, r: &BigRational) -> u64 {
        let p = BigInt::from(self.p);
        let num = ((r.numer() % &p) + &p) % &p;
        let den = ((r.denom() % &p) + &p) % &p;
        let num: u64 = num.try_into().unwrap();
        let den: u64 = den.try_into().unwrap();
        assert!(den != 0, "denominator divisible by the prime");
        self.mul(&num, &self.inv(&den))
    }
}

/// A sparse row: entries sorted descending by key, leading entry first,
/// no zero coefficients.
pub type Row<K, E> = Vec<(K, E)>;

fn merge_sub<K: Ord + Clone, F: Field>(
    field: &F,
    a: &Row<K, F::Elem>,
    b: &Row<K, F::Elem>,
    c: &F::Elem,
) -> Row<K, F::Elem> {
    // a - c*b, both sorted descending
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 > b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 > a[i].0 {
            let v = field.neg(&field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((b[j].0.clone(), v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.neg(&field.mul(c, &b[j].1)));
            if !field.is_zero(&v) {
                out.push((a[i].0.clone(), v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental sparse row echelon accumulator. Pivot of a row is its largest
/// key; inserted rows are normalized to leading coefficient one.
pub struct Echelon<K, F: Field> {
    field: F,
    rows: Vec<Row<K, F::Elem>>,
    pivots: HashMap<K, usize>,
    max_pivots: usize,
}

impl<K: Ord + Hash + Clone, F: Field> Echelon<K, F> {
    pub fn new(field: F, max_pivots: usize) -> Self {
        Echelon { field, rows: Vec::new(), pivots: HashMap::new(), max_pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Forward-reduce a row against the current pivots until its leading key
    /// has no pivot (or the row vanishes).
    pub fn reduce(&self, mut row: Row<K, F::Elem>) -> Row<K, F::Elem> {
        while let Some((k, c)) = row.first().cloned() {
            match self.pivots.get(&k) {
                None => break,
                Some(&i) => {
                    row = merge_sub(&self.field, &row, &self.rows[i], &c);
                }
            }
        }
        row
    }

    /// Insert a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Row<K, F::Elem>) -> Result<bool> {
        let row = self.reduce(row);
        match row.first() {
            None => Ok(false),
            Some((k, c)) => {
                if self.rows.len() >= self.max_pivots {
                    return Err(Error::Ceiling(format!(
                        "pivot count would exceed the configured maximum {}",
                        self.max_pivots
                    )));
                }
                let inv = self.field.inv(c);
                let normalized: Row<K, F::Elem> = row
                    .iter()
                    .map(|(k, v)| (k.clone(), self.field.mul(v, &inv)))
                    .collect();
                self.pivots.insert(k.clone(), self.rows.len());
                self.rows.push(normalized);
                Ok(true)
            }
        }
    }

    pub fn contains(&self, row: Row<K, F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Canonical reduced row-echelon basis: every pivot key appears in
    /// exactly one row, rows sorted by descending pivot.
    pub fn reduced_basis(&self) -> Vec<Row<K, F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| self.rows[a][0].0.cmp(&self.rows[b][0].0));
        // ascending pivot order: rows reduce only against smaller pivots
        let mut reduced: HashMap<K, Row<K, F::Elem>> = HashMap::new();
        for &i in &order {
            let row = &self.rows[i];
            let lead = row[0].clone();
            let mut work: BTreeMap<K, F::Elem> = row[1..].iter().cloned().collect();
            let mut tail: Vec<(K, F::Elem)> = Vec::new();
            while let Some((k, c)) = work.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
                work.remove(&k);
                if let Some(prow) = reduced.get(&k) {
                    // subtract c * prow; prow[0] = (k, 1)
                    for (pk, pv) in &prow[1..] {
                        let delta = self.field.neg(&field_mul(&self.field, &c, pv));
                        match work.get_mut(pk) {
                            Some(existing) => {
                                *existing = self.field.add(existing, &delta);
                                if self.field.is_zero(existing) {
                                    work.remove(pk);
                                }
                            }
                            None => {
                                if !self.field.is_zero(&delta) {
                                    work.insert(pk.clone(), delta);
                                }
                            }
                        }
                    }
                } else {
                    tail.push((k, c));
                }
            }
            let mut out = vec![lead.clone()];
            out.extend(tail);
            reduced.insert(lead.0, out);
        }
        let mut rows: Vec<Row<K, F::Elem>> = reduced.into_values().collect();
        rows.sort_by(|a, b| b[0].0.cmp(&a[0].0));
        rows
    }
}

fn field_mul<F: Field>(f: &F, a: &F::Elem, b: &F::Elem) -> F::Elem {
    f.mul(a, b)
}

/// Column part for augmented kernel rows: image columns outrank augment
/// columns (variant order), so pivots always land on the image side first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AugKey<S, I> {
    Aug(S),
    Img(I),
}

/// Kernel of a linear map given row by row: for each generator `h` of the
/// source, `image` is the sparse coordinate vector of its image. Returns the
/// image rank and a basis of the kernel in source coordinates (triangular,
/// hence independent).
#[allow(clippy::type_complexity)]
pub fn kernel_of_map<KS, KI, F, I>(
    field: F,
    max_pivots: usize,
    rows: I,
) -> Result<(usize, Vec<Row<KS, F::Elem>>)>
where
    KS: Ord + Hash + Clone,
    KI: Ord + Hash + Clone,
    F: Field + Clone,
    I: IntoIterator<Item = (KS, Row<KI, F::Elem>)>,
{
    let mut ech: Echelon<AugKey<KS, KI>, F> = Echelon::new(field.clone(), max_pivots);
    let mut kernel = Vec::new();
    for (h, image) in rows {
        let mut row: Row<AugKey<KS, KI>, F::Elem> =
            image.into_iter().map(|(k, v)| (AugKey::Img(k), v)).collect();
        row.push((AugKey::Aug(h), field.one()));
        let reduced = ech.reduce(row);
        match reduced.first() {
            None => unreachable!("augment column is fresh"),
            Some((AugKey::Img(_), _)) => {
                ech.insert(reduced)?;
            }
            Some((AugKey::Aug(_), _)) => {
                kernel.push(
                    reduced
                        .into_iter()
                        .map(|(k, v)| match k {
                            AugKey::Aug(m) => (m, v),
                            AugKey::Img(_) => unreachable!("img keys outrank aug keys"),
                        })
                        .collect(),
                );
            }
        }
    }
    Ok((ech.rank(), kernel))
}

/// Rank of a dense integer matrix by fraction-free Bareiss elimination.
/// Independent of the sparse echelon path.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let pr = match pivot {
            None => {
                col += 1;
                continue;
            }
            Some(pr) => pr,
        };
        m.swap(rank, pr);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Clear denominators of a rational row to integers (for the Bareiss route).
pub fn rational_rows_to_int(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut lcm = BigInt::from(1);
            for v in row {
                lcm = num_integer::lcm(lcm, v.denom().abs());
            }
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}
