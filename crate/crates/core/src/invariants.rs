//! Construction of the matrix invariants (determinant, permanent, Pfaffian,
//! Hafnian), their minor families, and the degree-2 candidate generator sets
//! for the apolar ideals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Symmetry, VariableGrid};
use crate::monomial::Monomial;
use crate::poly::{rat, Polynomial, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InvariantKind {
    Determinant,
    Permanent,
    Pfaffian,
    Hafnian,
}

impl InvariantKind {
    /// Grid the size-`n` invariant lives on (Pfaffian/Hafnian take the half
    /// size, the matrix is `2n x 2n`).
    pub fn grid(&self, n: usize) -> Result<VariableGrid> {
        if n == 0 {
            return Err(Error::InvalidArgument("invariant size must be positive".into()));
        }
        match self {
            InvariantKind::Determinant | InvariantKind::Permanent => VariableGrid::generic(n, n),
            InvariantKind::Pfaffian => VariableGrid::skew_symmetric(2 * n),
            InvariantKind::Hafnian => VariableGrid::zero_diagonal_symmetric(2 * n),
        }
    }

    pub fn cli_name(&self) -> &'static str {
        match self {
            InvariantKind::Determinant => "det",
            InvariantKind::Permanent => "perm",
            InvariantKind::Pfaffian => "pf",
            InvariantKind::Hafnian => "hf",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<Self> {
        match s {
            "det" => Some(InvariantKind::Determinant),
            "perm" => Some(InvariantKind::Permanent),
            "pf" => Some(InvariantKind::Pfaffian),
            "hf" => Some(InvariantKind::Hafnian),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorKind {
    DetMinors,
    PermMinors,
    PfaffianMinors,
    HafnianMinors,
}

/// One minor with its row/column labels (1-based matrix indices).
#[derive(Debug, Clone)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: Polynomial,
}

#[derive(Debug, Clone)]
pub struct MinorFamily {
    pub kind: MinorKind,
    pub size: usize,
    pub members: Vec<Minor>,
}

/// All k-subsets of `1..=n`, lexicographically.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for v in from..=n.saturating_sub(need - 1) {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(n, k, 1, &mut cur, &mut out);
    }
    out
}

fn permutations_signed(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    fn rec(perm: &mut Vec<usize>, pos: usize, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if pos == perm.len() {
            out.push((perm.clone(), sign));
            return;
        }
        for i in pos..perm.len() {
            perm.swap(pos, i);
            let s = if i == pos { sign } else { -sign };
            rec(perm, pos + 1, s, out);
            perm.swap(pos, i);
        }
    }
    rec(&mut perm, 0, 1, &mut out);
    out
}

/// Perfect matchings of `0..2t` as flattened sequences
/// `[p1,q1,p2,q2,...]` with `p1 < p2 < ...` and `p_i < q_i`, each with the
/// parity sign of the flattened sequence as a permutation.
fn matchings_signed(two_t: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut used = vec![false; two_t];
    let mut seq = Vec::with_capacity(two_t);
    fn rec(used: &mut Vec<bool>, seq: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        let first = match used.iter().position(|&u| !u) {
            None => {
                let mut inv = 0;
                for i in 0..seq.len() {
                    for j in i + 1..seq.len() {
                        if seq[i] > seq[j] {
                            inv += 1;
                        }
                    }
                }
                let sign = if inv % 2 == 0 { 1 } else { -1 };
                out.push((seq.clone(), sign));
                return;
            }
            Some(p) => p,
        };
        used[first] = true;
        seq.push(first);
        for q in first + 1..used.len() {
            if !used[q] {
                used[q] = true;
                seq.push(q);
                rec(used, seq, out);
                seq.pop();
                used[q] = false;
            }
        }
        seq.pop();
        used[first] = false;
    }
    rec(&mut used, &mut seq, &mut out);
    out
}

/// Determinant/permanent on chosen rows and columns, or Pfaffian/Hafnian on
/// a chosen index set (pass it as both `rows` and `cols`). Signs and zero
/// cells of the grid's symmetry type are honored, so e.g. the determinant of
/// a skew symmetric grid expands over the canonical variables.
pub fn build_invariant_on_subgrid(
    kind: InvariantKind,
    grid: VariableGrid,
    rows: &[usize],
    cols: &[usize],
) -> Result<Polynomial> {
    let mut out = Polynomial::zero(Side::Base, grid);
    match kind {
        InvariantKind::Determinant | InvariantKind::Permanent => {
            if rows.len() != cols.len() {
                return Err(Error::InvalidArgument("minor must be square".into()));
            }
            let k = rows.len();
            for (perm, sign) in permutations_signed(k) {
                let mut coeff: i64 = if kind == InvariantKind::Determinant { sign } else { 1 };
                let mut vars = Vec::with_capacity(k);
                let mut zero = false;
                for (i, &p) in perm.iter().enumerate() {
                    match grid.cell(rows[i], cols[p]) {
                        None => {
                            zero = true;
                            break;
                        }
                        Some((idx, s)) => {
                            coeff *= s;
                            vars.push((idx, 1u32));
                        }
                    }
                }
                if !zero {
                    out.add_term(Monomial::from_pairs(vars), rat(coeff));
                }
            }
        }
        InvariantKind::Pfaffian | InvariantKind::Hafnian => {
            if rows != cols {
                return Err(Error::InvalidArgument(
                    "Pfaffian/Hafnian minors use one index set for rows and columns".into(),
                ));
            }
            if !rows.len().is_multiple_of(2) {
                return Err(Error::InvalidArgument("index set must have even size".into()));
            }
            for (seq, sign) in matchings_signed(rows.len()) {
                let mut coeff: i64 = if kind == InvariantKind::Pfaffian { sign } else { 1 };
                let mut vars = Vec::with_capacity(rows.len() / 2);
                let mut zero = false;
                for pair in seq.chunks(2) {
                    match grid.cell(rows[pair[0]], rows[pair[1]]) {
                        None => {
                            zero = true;
                            break;
                        }
                        Some((idx, s)) => {
                            coeff *= s;
                            vars.push((idx, 1u32));
                        }
                    }
                }
                if !zero {
                    out.add_term(Monomial::from_pairs(vars), rat(coeff));
                }
            }
        }
    }
    Ok(out)
}

/// The full invariant of size `n` (matrix size `2n` for Pfaffian/Hafnian).
pub fn build_invariant(kind: InvariantKind, n: usize) -> Result<Polynomial> {
    let grid = kind.grid(n)?;
    let idx: Vec<usize> = match kind {
        InvariantKind::Determinant | InvariantKind::Permanent => (1..=n).collect(),
        _ => (1..=2 * n).collect(),
    };
    build_invariant_on_subgrid(kind, grid, &idx, &idx)
}

/// Pfaffian by the cofactor-style recursion along the first row:
/// `Pf(X) = sum_{i=2}^{2n} (-1)^i x_{1i} Pf(X with rows/cols 1,i removed)`.
/// Independent route used to cross-check [`build_invariant`].
pub fn pfaffian_recursive(grid: VariableGrid, idx: &[usize]) -> Result<Polynomial> {
    if grid.symmetry != Symmetry::SkewSymmetric {
        return Err(Error::InvalidArgument("recursion applies to skew symmetric grids".into()));
    }
    if idx.is_empty() {
        return Ok(Polynomial::constant(Side::Base, grid, rat(1)));
    }
    let mut out = Polynomial::zero(Side::Base, grid);
    let first = idx[0];
    for (pos, &i) in idx.iter().enumerate().skip(1) {
        let (vidx, s) = grid.cell(first, i).unwrap();
        // (-1)^i with i the position (2-based) within the index set
        let sign = if (pos + 1) % 2 == 0 { 1 } else { -1 };
        let rest: Vec<usize> =
            idx.iter().copied().filter(|&v| v != first && v != i).collect();
        let sub = pfaffian_recursive(grid, &rest)?;
        let xv = Polynomial::monomial(Side::Base, grid, Monomial::var(vidx), rat(sign * s));
        out = out.add(&xv.mul(&sub)?)?;
    }
    Ok(out)
}

/// All `k x k` minors of the given kind. For Det/Perm minors the grid may be
/// rectangular; for Pfaffian/Hafnian minors `k = 2t` indexes a single
/// row-and-column subset.
pub fn build_minors(kind: MinorKind, grid: VariableGrid, k: usize) -> Result<MinorFamily> {
    let mut members = Vec::new();
    match kind {
        MinorKind::DetMinors | MinorKind::PermMinors => {
            if k == 0 || k > grid.rows.min(grid.cols) {
                return Err(Error::InvalidArgument(format!("minor size {k} out of range")));
            }
            let ik = if kind == MinorKind::DetMinors {
                InvariantKind::Determinant
            } else {
                InvariantKind::Permanent
            };
            for rows in subsets(grid.rows, k) {
                for cols in subsets(grid.cols, k) {
                    let poly = build_invariant_on_subgrid(ik, grid, &rows, &cols)?;
                    members.push(Minor { rows: rows.clone(), cols: cols.clone(), poly });
                }
            }
        }
        MinorKind::PfaffianMinors | MinorKind::HafnianMinors => {
            if k == 0 || !k.is_multiple_of(2) || k > grid.rows {
                return Err(Error::InvalidArgument(format!("Pfaffian minor size {k} out of range")));
            }
            let ik = if kind == MinorKind::PfaffianMinors {
                InvariantKind::Pfaffian
            } else {
                InvariantKind::Hafnian
            };
            for idx in subsets(grid.rows, k) {
                let poly = build_invariant_on_subgrid(ik, grid, &idx, &idx)?;
                members.push(Minor { rows: idx.clone(), cols: idx, poly });
            }
        }
    }
    Ok(MinorFamily { kind, size: k, members })
}

fn dual_var(grid: VariableGrid, i: usize, j: usize) -> Monomial {
    Monomial::var(grid.cell(i, j).unwrap().0)
}

/// Unacceptable degree-2 monomials of a generic `n x n` operator grid:
/// squares and products of two variables from the same row or column.
pub fn unacceptable_degree2(grid: VariableGrid) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mono = |m: Monomial| Polynomial::monomial(Side::Dual, grid, m, rat(1));
    for v in 0..grid.var_count() {
        out.push(mono(Monomial::from_pairs([(v, 2)])));
    }
    for i in 1..=grid.rows {
        for j1 in 1..=grid.cols {
            for j2 in j1 + 1..=grid.cols {
                out.push(mono(dual_var(grid, i, j1).mul(&dual_var(grid, i, j2))));
            }
        }
    }
    for j in 1..=grid.cols {
        for i1 in 1..=grid.rows {
            for i2 in i1 + 1..=grid.rows {
                out.push(mono(dual_var(grid, i1, j).mul(&dual_var(grid, i2, j))));
            }
        }
    }
    out
}

/// Degree-2 candidate generators for `Ann(F)`:
/// - determinant: all 2x2 permanents of the operator grid plus the
///   unacceptable monomials;
/// - permanent: the 2x2 minors instead of the permanents;
/// - Pfaffian: the space W (squares, same-row-or-column products, two
///   binomials per 4-subset of indices);
/// - Hafnian: the sign-swapped analogue of W, with every candidate checked
///   to annihilate the Hafnian.
pub fn degree2_candidates(kind: InvariantKind, n: usize) -> Result<Vec<Polynomial>> {
    if n < 2 {
        return Err(Error::InvalidArgument("degree-2 candidates need n >= 2".into()));
    }
    let grid = kind.grid(n)?;
    let mut out = Vec::new();
    match kind {
        InvariantKind::Determinant | InvariantKind::Permanent => {
            let mk = if kind == InvariantKind::Determinant {
                MinorKind::PermMinors
            } else {
                MinorKind::DetMinors
            };
            for m in build_minors(mk, grid, 2)?.members {
                out.push(m.poly.with_side(Side::Dual));
            }
            out.extend(unacceptable_degree2(grid));
        }
        InvariantKind::Pfaffian | InvariantKind::Hafnian => {
            let two_n = 2 * n;
            let mono = |m: Monomial| Polynomial::monomial(Side::Dual, grid, m, rat(1));
            // (a) squares
            for v in 0..grid.var_count() {
                out.push(mono(Monomial::from_pairs([(v, 2)])));
            }
            // (b) products of two distinct variables sharing a row or column
            // index, each unordered pair emitted once
            for v1 in 0..grid.var_count() {
                let (i1, j1) = grid.var_cell(v1);
                for v2 in v1 + 1..grid.var_count() {
                    let (i2, j2) = grid.var_cell(v2);
                    if i1 == i2 || i1 == j2 || j1 == i2 || j1 == j2 {
                        out.push(mono(Monomial::var(v1).mul(&Monomial::var(v2))));
                    }
                }
            }
            // (c) two independent binomials per 4-subset
            for idx in subsets(two_n, 4) {
                let (i1, i2, i3, i4) = (idx[0], idx[1], idx[2], idx[3]);
                let m12_34 = dual_var(grid, i1, i2).mul(&dual_var(grid, i3, i4));
                let m13_24 = dual_var(grid, i1, i3).mul(&dual_var(grid, i2, i4));
                let m14_23 = dual_var(grid, i1, i4).mul(&dual_var(grid, i2, i3));
                let sign13 = if kind == InvariantKind::Pfaffian { rat(1) } else { rat(-1) };
                out.push(Polynomial::from_terms(
                    Side::Dual,
                    grid,
                    [(m12_34.clone(), rat(1)), (m13_24, sign13)],
                ));
                out.push(Polynomial::from_terms(
                    Side::Dual,
                    grid,
                    [(m12_34, rat(1)), (m14_23, rat(-1))],
                ));
            }
            if kind == InvariantKind::Hafnian {
                let hf = build_invariant(kind, n)?;
                for (i, c) in out.iter().enumerate() {
                    let r = c.contract(&hf)?;
                    if !r.is_zero() {
                        return Err(Error::CandidateNotApolar {
                            index: i,
                            detail: format!("candidate {c} leaves remainder {r}"),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::binomial;

    #[test]
    fn determinant_2x2() {
        let d = build_invariant(InvariantKind::Determinant, 2).unwrap();
        assert_eq!(d.canonical_text(), "a_{1,1}*a_{2,2} - a_{1,2}*a_{2,1}");
    }

    #[test]
    fn pfaffian_4x4() {
        let p = build_invariant(InvariantKind::Pfaffian, 2).unwrap();
        // x12 x34 - x13 x24 + x14 x23
        let g = p.grid;
        let t = |a: usize, b: usize, c: usize, d: usize| {
            dual_var(g, a, b).mul(&dual_var(g, c, d))
        };
        assert_eq!(p.coefficient(&t(1, 2, 3, 4)), rat(1));
        assert_eq!(p.coefficient(&t(1, 3, 2, 4)), rat(-1));
        assert_eq!(p.coefficient(&t(1, 4, 2, 3)), rat(1));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn hafnian_4x4_all_positive() {
        let h = build_invariant(InvariantKind::Hafnian, 2).unwrap();
        assert_eq!(h.num_terms(), 3);
        assert!(h.terms().all(|(_, c)| *c == rat(1)));
    }

    #[test]
    fn term_counts() {
        assert_eq!(build_invariant(InvariantKind::Determinant, 3).unwrap().num_terms(), 6);
        assert_eq!(build_invariant(InvariantKind::Permanent, 3).unwrap().num_terms(), 6);
        assert_eq!(build_invariant(InvariantKind::Pfaffian, 3).unwrap().num_terms(), 15);
        assert_eq!(build_invariant(InvariantKind::Hafnian, 3).unwrap().num_terms(), 15);
    }

    #[test]
    fn minor_counts_and_degrees() {
        let g3 = VariableGrid::generic(3, 3).unwrap();
        let dm = build_minors(MinorKind::DetMinors, g3, 2).unwrap();
        assert_eq!(dm.members.len(), 9);
        assert!(dm.members.iter().all(|m| m.poly.degree() == Some(2)));

        let dm3 = build_minors(MinorKind::DetMinors, g3, 3).unwrap();
        assert_eq!(dm3.members.len(), 1);
        assert_eq!(dm3.members[0].poly, build_invariant(InvariantKind::Determinant, 3).unwrap());

        let g6 = VariableGrid::skew_symmetric(6).unwrap();
        let pm = build_minors(MinorKind::PfaffianMinors, g6, 4).unwrap();
        assert_eq!(pm.members.len(), 15);
        assert!(pm.members.iter().all(|m| m.poly.degree() == Some(2)));
    }

    #[test]
    fn rectangular_minors_allowed() {
        let g = VariableGrid::generic(2, 3).unwrap();
        let dm = build_minors(MinorKind::DetMinors, g, 2).unwrap();
        assert_eq!(dm.members.len(), 3);
    }

    #[test]
    fn candidate_counts() {
        // det n=3: 9 permanents + 36 - 9 = 27 unacceptable
        let c = degree2_candidates(InvariantKind::Determinant, 3).unwrap();
        assert_eq!(c.len(), 9 + 27);
        // Pf 2n=4: 6 squares + 12 row/col products + 2 binomials
        let c = degree2_candidates(InvariantKind::Pfaffian, 2).unwrap();
        assert_eq!(c.len(), 6 + 12 + 2);
        // Pf 2n=6: 15 squares, each variable shares an index with 2(2n-2)=8
        // others, two binomials per 4-subset: 15 + 60 + 30 = 105
        let c = degree2_candidates(InvariantKind::Pfaffian, 3).unwrap();
        let type_b = 15 * (2 * (2 * 3 - 2)) / 2;
        assert_eq!(c.len(), 15 + type_b + 2 * binomial(6, 4));
    }

    #[test]
    fn candidates_annihilate_invariant() {
        for (kind, n) in [
            (InvariantKind::Determinant, 3),
            (InvariantKind::Permanent, 3),
            (InvariantKind::Pfaffian, 3),
            (InvariantKind::Hafnian, 2),
        ] {
            let f = build_invariant(kind, n).unwrap();
            for c in degree2_candidates(kind, n).unwrap() {
                assert!(c.contract(&f).unwrap().is_zero(), "{} vs {kind:?}", c);
            }
        }
    }

    #[test]
    fn pfaffian_recursion_matches_direct() {
        for n in [2usize, 3] {
            let grid = VariableGrid::skew_symmetric(2 * n).unwrap();
            let idx: Vec<usize> = (1..=2 * n).collect();
            let rec = pfaffian_recursive(grid, &idx).unwrap();
            let direct = build_invariant(InvariantKind::Pfaffian, n).unwrap();
            assert_eq!(rec, direct);
        }
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        for n in [2usize, 3] {
            let grid = VariableGrid::skew_symmetric(2 * n).unwrap();
            let idx: Vec<usize> = (1..=2 * n).collect();
            let pf = build_invariant(InvariantKind::Pfaffian, n).unwrap();
            let det =
                build_invariant_on_subgrid(InvariantKind::Determinant, grid, &idx, &idx).unwrap();
            assert_eq!(pf.mul(&pf).unwrap(), det);
        }
    }

    #[test]
    fn example_p11_annihilates_det3() {
        // d22 d33 + d23 d32 against the 3x3 determinant
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let g = f.grid;
        let p11 = Polynomial::from_terms(
            Side::Dual,
            g,
            [
                (dual_var(g, 2, 2).mul(&dual_var(g, 3, 3)), rat(1)),
                (dual_var(g, 2, 3).mul(&dual_var(g, 3, 2)), rat(1)),
            ],
        );
        assert!(p11.contract(&f).unwrap().is_zero());
    }
}
