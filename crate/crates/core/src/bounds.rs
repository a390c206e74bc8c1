//! Rank bound evaluators: the Ranestad-Schreyer cactus-rank lower bound from
//! the generating degree, the Landsberg-Teitler catalecticant-plus-singular-
//! locus lower bound, monomial rank formulas, Pfaffian cactus bounds, and the
//! asymptotic convenience estimates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A generating degree that has actually been certified by a computation
/// (direct minimal-generator count or the Groebner route). The
/// Ranestad-Schreyer bound refuses to run from an uncertified degree in
/// strict mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedDegree {
    degree: usize,
    certified: bool,
}

impl CertifiedDegree {
    pub fn certified(degree: usize) -> Self {
        CertifiedDegree { degree, certified: true }
    }

    /// An asserted, unverified degree (rejected by strict-mode consumers).
    pub fn asserted(degree: usize) -> Self {
        CertifiedDegree { degree, certified: false }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

/// Ranestad-Schreyer: `deg Gamma >= length / d`, so the lower bound is
/// `ceil(length / d)`. In strict mode the degree must be certified.
pub fn rs_lower_bound(length: usize, d: CertifiedDegree, strict: bool) -> Result<usize> {
    if d.degree() == 0 {
        return Err(Error::InvalidArgument("generating degree must be >= 1".into()));
    }
    if strict && !d.is_certified() {
        return Err(Error::UncertifiedDegree(d.degree()));
    }
    Ok(length.div_ceil(d.degree()))
}

/// Landsberg-Teitler lower bound for the rank of the n x n determinant:
/// `C(n, floor(n/2))^2 + n^2 - (floor(n/2) + 1)^2`.
pub fn lt_lower_bound_det(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument("Landsberg-Teitler bound needs n >= 2".into()));
    }
    let h = n / 2;
    Ok(binomial(n, h).pow(2) + n * n - (h + 1) * (h + 1))
}

/// General catalecticant lower bound `rank >= h_s + dim Sigma_s + 1` with the
/// convention `dim emptyset = -1`. The singular-locus dimension is supplied
/// by the caller; `h_s` is the rank of the degree-s catalecticant.
pub fn general_lt_lower_bound(h_s: usize, dim_sigma: i64) -> usize {
    (h_s as i64 + dim_sigma + 1).max(0) as usize
}

/// Rank and cactus rank of the monomial `x_1^{b_1} ... x_n^{b_n}` with
/// `1 <= b_1 <= ... <= b_n`:
/// rank is the product of `b_i + 1` skipping the smallest exponent,
/// cactus (= smoothable) rank skips the largest.
pub fn monomial_ranks(b: &[usize]) -> Result<(u128, u128)> {
    if b.is_empty() || b.contains(&0) {
        return Err(Error::InvalidArgument("exponents must be positive".into()));
    }
    if b.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("exponents must be sorted ascending".into()));
    }
    let rank: u128 = b.iter().skip(1).map(|&e| (e + 1) as u128).product();
    let cactus: u128 = b.iter().take(b.len() - 1).map(|&e| (e + 1) as u128).product();
    Ok((rank, cactus))
}

/// Cactus rank bounds for the Pfaffian of a `2n x 2n` skew symmetric matrix:
/// `2^{2n-2} <= cr <= 2^{2n-1}`, the upper bound being the apolar length.
pub fn pfaffian_cactus_bounds(n: usize) -> (u128, u128) {
    (1u128 << (2 * n - 2), 1u128 << (2 * n - 1))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AsymptoticEstimates {
    pub n: usize,
    /// `4^n / (2 sqrt(n pi))` — approximates the Ranestad-Schreyer cactus
    /// lower bound `C(2n, n) / 2`.
    pub rs_lower: f64,
    /// `2 * 4^n / (n pi)` — approximates the Landsberg-Teitler rank bound.
    pub lt_lower: f64,
    /// `C(n, floor(n/2))^2` — the differential length.
    pub l_diff: f64,
    /// `sqrt(2 pi n) (n/e)^n 2^{n-1}` — approximates the monomial-route
    /// rank upper bound `n! 2^{n-1}`.
    pub rank_upper: f64,
    /// `4^n / sqrt(n pi)` — approximates the cactus upper bound `C(2n, n)`.
    pub cactus_upper: f64,
}

pub fn asymptotic_estimates(n: usize) -> AsymptoticEstimates {
    let nf = n as f64;
    let four_n = 4f64.powi(n as i32);
    AsymptoticEstimates {
        n,
        rs_lower: four_n / (2.0 * (nf * std::f64::consts::PI).sqrt()),
        lt_lower: 2.0 * four_n / (nf * std::f64::consts::PI),
        l_diff: (binomial(n, n / 2) as f64).powi(2),
        rank_upper: (2.0 * std::f64::consts::PI * nf).sqrt()
            * (nf / std::f64::consts::E).powi(n as i32)
            * 2f64.powi(n as i32 - 1),
        cactus_upper: four_n / (nf * std::f64::consts::PI).sqrt(),
    }
}

/// One row of the determinant bounds table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub rs_lower: usize,
    pub lt_lower: usize,
    pub l_diff: usize,
}

/// Assemble a table row from computed Hilbert data and a certified
/// generating degree.
pub fn table_row(n: usize, hilbert: &[usize], d: CertifiedDegree, strict: bool) -> Result<TableRow> {
    let length: usize = hilbert.iter().sum();
    let l_diff = hilbert.iter().copied().max().unwrap_or(0);
    Ok(TableRow {
        n,
        rs_lower: rs_lower_bound(length, d, strict)?,
        lt_lower: lt_lower_bound_det(n)?,
        l_diff,
    })
}

/// Full bounds report for one invariant instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    pub invariant: String,
    pub n: usize,
    pub generating_degree: usize,
    pub length: usize,
    pub rs_lower: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lt_lower: Option<usize>,
    pub l_diff: usize,
    pub cactus_upper: usize,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn new(
        invariant: &str,
        n: usize,
        d: CertifiedDegree,
        hilbert: &[usize],
        strict: bool,
    ) -> Result<Self> {
        let length: usize = hilbert.iter().sum();
        let l_diff = hilbert.iter().copied().max().unwrap_or(0);
        let rs_lower = rs_lower_bound(length, d, strict)?;
        let lt_lower = if invariant == "det" { Some(lt_lower_bound_det(n)?) } else { None };
        let mut notes = Vec::new();
        if invariant == "pf" || invariant == "hf" {
            notes.push(
                "cactus upper bound taken as the apolar length 2^(2n-1); the printed 2^(n-1) \
                 fails to dominate l_diff"
                    .to_string(),
            );
        }
        Ok(BoundsReport {
            invariant: invariant.to_string(),
            n,
            generating_degree: d.degree(),
            length,
            rs_lower,
            lt_lower,
            l_diff,
            cactus_upper: length,
            notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> CertifiedDegree {
        CertifiedDegree::certified(2)
    }

    #[test]
    fn rs_lower_examples() {
        assert_eq!(rs_lower_bound(20, d2(), true).unwrap(), 10);
        assert_eq!(rs_lower_bound(924, d2(), true).unwrap(), 462);
        assert_eq!(rs_lower_bound(128, d2(), true).unwrap(), 64);
        // ceil, not floor
        assert_eq!(rs_lower_bound(7, d2(), true).unwrap(), 4);
    }

    #[test]
    fn rs_lower_refuses_uncertified_in_strict_mode() {
        let d = CertifiedDegree::asserted(2);
        assert!(matches!(rs_lower_bound(20, d, true), Err(Error::UncertifiedDegree(2))));
        assert_eq!(rs_lower_bound(20, d, false).unwrap(), 10);
    }

    #[test]
    fn lt_lower_examples() {
        assert_eq!(lt_lower_bound_det(2).unwrap(), 4);
        assert_eq!(lt_lower_bound_det(4).unwrap(), 43);
        assert_eq!(lt_lower_bound_det(5).unwrap(), 116);
        assert!(lt_lower_bound_det(1).is_err());
    }

    #[test]
    fn general_lt_examples() {
        // det n=4, s=2: h_2 = 36, dim Sigma = 6
        assert_eq!(general_lt_lower_bound(36, 6), 43);
        // empty singular locus: dim = -1
        assert_eq!(general_lt_lower_bound(9, -1), 9);
        // det n=5, s=2: h_2 = 100, dim Sigma = n^2 - (floor(n/2)+1)^2 - 1 = 15
        assert_eq!(general_lt_lower_bound(100, 15), 116);
    }

    #[test]
    fn monomial_rank_examples() {
        assert_eq!(monomial_ranks(&[1, 1, 1]).unwrap(), (4, 4));
        assert_eq!(monomial_ranks(&[1, 2, 3]).unwrap(), (12, 6));
        assert!(monomial_ranks(&[2, 1]).is_err());
        assert!(monomial_ranks(&[0, 1]).is_err());
        // det_4 upper bound via xyzw composition: 4! * 2^3
        let (r, _) = monomial_ranks(&[1, 1, 1, 1]).unwrap();
        assert_eq!(24 * r, 192);
    }

    #[test]
    fn pfaffian_bounds_examples() {
        assert_eq!(pfaffian_cactus_bounds(1), (1, 2));
        assert_eq!(pfaffian_cactus_bounds(2), (4, 8));
        assert_eq!(pfaffian_cactus_bounds(3), (16, 32));
    }

    #[test]
    fn asymptotics_are_close_for_n6() {
        let est = asymptotic_estimates(6);
        let exact = 462.0;
        assert!((est.rs_lower - exact).abs() / exact < 0.05, "{}", est.rs_lower);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
