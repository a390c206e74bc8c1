use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetry type of a matrix of formal variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    /// Every cell is an independent variable.
    Generic,
    /// `x_{ji} = -x_{ij}`, zero diagonal.
    SkewSymmetric,
    /// `x_{ji} = x_{ij}`, zero diagonal.
    ZeroDiagonalSymmetric,
}

/// A matrix of formal variables with a fixed symmetry type and a canonical
/// variable numbering.
///
/// The numbering is chosen so that ascending variable index agrees with the
/// ascending diagonal variable order (`d_{ij} < d_{kl}` iff `l > j`, or
/// `l = j` and `k > i`): cells are numbered column by column, and within a
/// column by ascending row. For the symmetric kinds only cells with
/// `i < j` carry variables, numbered by `(j, i)` ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableGrid {
    pub rows: usize,
    pub cols: usize,
    pub symmetry: Symmetry,
}

impl VariableGrid {
    pub fn generic(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("grid dimensions must be positive".into()));
        }
        Ok(VariableGrid { rows, cols, symmetry: Symmetry::Generic })
    }

    pub fn skew_symmetric(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("grid dimensions must be positive".into()));
        }
        Ok(VariableGrid { rows: size, cols: size, symmetry: Symmetry::SkewSymmetric })
    }

    pub fn zero_diagonal_symmetric(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("grid dimensions must be positive".into()));
        }
        Ok(VariableGrid { rows: size, cols: size, symmetry: Symmetry::ZeroDiagonalSymmetric })
    }

    pub fn var_count(&self) -> usize {
        match self.symmetry {
            Symmetry::Generic => self.rows * self.cols,
            _ => self.rows * (self.rows - 1) / 2,
        }
    }

    /// Canonical variable of cell `(i, j)` (1-based): `None` for identically
    /// zero cells, otherwise the variable index and the sign picked up by
    /// canonicalization.
    pub fn cell(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "cell out of range");
        match self.symmetry {
            Symmetry::Generic => Some(((j - 1) * self.rows + (i - 1), 1)),
            Symmetry::SkewSymmetric => {
                if i == j {
                    None
                } else {
                    let (lo, hi) = (i.min(j), i.max(j));
                    let sign = if i > j { -1 } else { 1 };
                    Some((pair_index(lo, hi), sign))
                }
            }
            Symmetry::ZeroDiagonalSymmetric => {
                if i == j {
                    None
                } else {
                    let (lo, hi) = (i.min(j), i.max(j));
                    Some((pair_index(lo, hi), 1))
                }
            }
        }
    }

    /// Inverse of `cell`: the canonical row/column pair of a variable index.
    pub fn var_cell(&self, index: usize) -> (usize, usize) {
        debug_assert!(index < self.var_count());
        match self.symmetry {
            Symmetry::Generic => (index % self.rows + 1, index / self.rows + 1),
            _ => {
                // invert (j-1)(j-2)/2 + (i-1)
                let mut j = 2;
                while j * (j - 1) / 2 <= index {
                    j += 1;
                }
                let i = index - (j - 1) * (j - 2) / 2 + 1;
                (i, j)
            }
        }
    }

    /// Variable letter for display, by ring side.
    pub fn letter(&self, side: crate::poly::Side) -> char {
        use crate::poly::Side;
        match (self.symmetry, side) {
            (Symmetry::Generic, Side::Base) => 'a',
            (Symmetry::Generic, Side::Dual) => 'd',
            (_, Side::Base) => 'x',
            (_, Side::Dual) => 'y',
        }
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_indexing_is_column_major() {
        let g = VariableGrid::generic(3, 3).unwrap();
        assert_eq!(g.var_count(), 9);
        assert_eq!(g.cell(1, 1), Some((0, 1)));
        assert_eq!(g.cell(3, 1), Some((2, 1)));
        assert_eq!(g.cell(1, 2), Some((3, 1)));
        for idx in 0..9 {
            let (i, j) = g.var_cell(idx);
            assert_eq!(g.cell(i, j), Some((idx, 1)));
        }
    }

    #[test]
    fn skew_canonicalization() {
        let g = VariableGrid::skew_symmetric(4).unwrap();
        assert_eq!(g.var_count(), 6);
        assert_eq!(g.cell(1, 2), Some((0, 1)));
        assert_eq!(g.cell(2, 1), Some((0, -1)));
        assert_eq!(g.cell(3, 3), None);
        // idempotent: canonical cells map to themselves with sign +1
        for idx in 0..6 {
            let (i, j) = g.var_cell(idx);
            assert!(i < j);
            assert_eq!(g.cell(i, j), Some((idx, 1)));
        }
    }

    #[test]
    fn symmetric_has_positive_signs() {
        let g = VariableGrid::zero_diagonal_symmetric(4).unwrap();
        assert_eq!(g.cell(2, 1), Some((0, 1)));
        assert_eq!(g.cell(1, 1), None);
    }
}
