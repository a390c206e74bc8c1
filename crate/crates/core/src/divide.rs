use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;

/// Result of multivariate division: `f = sum q_i * g_i + r`.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division of `f` by an ordered list of divisors. Ties (several
/// divisor leading terms divide the current term) break by list position.
/// No monomial of the remainder is divisible by any divisor leading term.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: TermOrder) -> Result<Division> {
    let _ = order; // only DiagonalLex exists; Polynomial's term order realizes it
    for (i, g) in divisors.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroDivisor(i));
        }
    }
    let leads: Vec<(Monomial, num_rational::BigRational)> =
        divisors.iter().map(|g| {
            let (m, c) = g.leading().unwrap();
            (m.clone(), c.clone())
        }).collect();

    let mut quotients = vec![Polynomial::zero(f.side, f.grid); divisors.len()];
    let mut remainder = Polynomial::zero(f.side, f.grid);
    let mut p = f.clone();

    while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if let Some(q) = gm.quotient_of(&lm) {
                let coeff = &lc / gc;
                quotients[i].add_term(q.clone(), coeff.clone());
                let t = Polynomial::monomial(f.side, f.grid, q, coeff);
                p = p.sub(&t.mul(&divisors[i])?)?;
                reduced = true;
                break;
            }
        }
        if !reduced {
            remainder.add_term(lm.clone(), lc.clone());
            let t = Polynomial::monomial(f.side, f.grid, lm, lc);
            p = p.sub(&t)?;
        }
    }
    Ok(Division { quotients, remainder })
}

/// Remainder of `f` modulo `divisors` (same reduction as [`divide`], without
/// accumulating quotients).
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], order: TermOrder) -> Result<Polynomial> {
    Ok(divide(f, divisors, order)?.remainder)
}
