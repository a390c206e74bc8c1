use std::cmp::Ordering;

use crate::monomial::Monomial;

/// Monomial term orders.
///
/// `DiagonalLex` is the graded lexicographic order induced by the diagonal
/// variable order `d_{ij} < d_{kl}` iff `l > j`, or `l = j` and `k > i`.
/// Under it the leading term of every subpermanent and subdeterminant is its
/// main-diagonal product. The canonical variable numbering of
/// [`crate::grid::VariableGrid`] realizes the variable order directly, so the
/// comparison reduces to [`Monomial`]'s own ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    DiagonalLex,
}

impl TermOrder {
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Ordering {
        match self {
            TermOrder::DiagonalLex => u.cmp(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::VariableGrid;
    use crate::invariants::{build_invariant_on_subgrid, InvariantKind};

    #[test]
    fn compare_equal() {
        let m = Monomial::from_pairs([(0, 1), (3, 1)]);
        assert_eq!(TermOrder::DiagonalLex.compare(&m, &m), Ordering::Equal);
    }

    #[test]
    fn permanent_leading_term_is_main_diagonal() {
        let g = VariableGrid::generic(2, 2).unwrap();
        let perm = build_invariant_on_subgrid(InvariantKind::Permanent, g, &[1, 2], &[1, 2])
            .unwrap()
            .with_side(crate::poly::Side::Dual);
        let d11 = g.cell(1, 1).unwrap().0;
        let d22 = g.cell(2, 2).unwrap().0;
        let diag = Monomial::from_pairs([(d11, 1), (d22, 1)]);
        assert_eq!(*perm.leading().unwrap().0, diag);
    }

    #[test]
    fn leading_of_permanent_polynomial() {
        // d11*d22 + d12*d21 -> d11*d22 leads
        let diag = Monomial::from_pairs([(0, 1), (3, 1)]);
        let anti = Monomial::from_pairs([(1, 1), (2, 1)]);
        assert_eq!(TermOrder::DiagonalLex.compare(&diag, &anti), Ordering::Greater);
    }
}
