//! The apolarity engine: catalecticant images and kernels, Hilbert
//! functions, minimal generator degrees of apolar ideals, direct-rank
//! verification of degree-2 generation, and Waring decomposition checks.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::CertifiedDegree;
use crate::error::{Error, Result};
use crate::grid::VariableGrid;
use crate::linalg::{kernel_of_map, AugKey, Echelon, Field, PrimeField, Rationals, Row};
use crate::monomial::{monomial_space_dim, monomials_of_degree, Monomial};
use crate::poly::{rat, Polynomial, Side};

/// Coefficient handling for rank computations. Polynomials always carry
/// exact rationals; `ModP` only redirects rank accumulation through a word
/// prime field (mod-p ranks are lower bounds on rational ranks, so a mod-p
/// rank hitting the predicted value certifies it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rational,
    ModP(u64),
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::ModP(_) => "mod-p",
        }
    }
}

/// Resource ceilings: computations refuse (with an explicit error) rather
/// than silently truncate.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest admitted dimension of an ambient monomial space.
    pub max_ambient: usize,
    /// Largest admitted pivot count in one elimination.
    pub max_pivots: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_ambient: 200_000, max_pivots: 50_000 }
    }
}

fn check_ambient(nvars: usize, k: usize, limits: &Limits) -> Result<usize> {
    let dim = monomial_space_dim(nvars, k);
    if dim > limits.max_ambient {
        return Err(Error::Ceiling(format!(
            "ambient dimension {dim} exceeds the configured maximum {}",
            limits.max_ambient
        )));
    }
    Ok(dim)
}

fn homogeneous_degree(f: &Polynomial) -> Result<usize> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    f.degree().ok_or_else(|| Error::InvalidArgument("polynomial must be nonzero".into()))
}

/// Sparse row of a polynomial in monomial coordinates, leading entry first.
pub(crate) fn poly_row(p: &Polynomial) -> Row<Monomial, BigRational> {
    let mut row: Row<Monomial, BigRational> =
        p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    row.reverse();
    row
}

fn row_poly(side: Side, grid: VariableGrid, row: &Row<Monomial, BigRational>) -> Polynomial {
    Polynomial::from_terms(side, grid, row.iter().map(|(m, c)| (m.clone(), c.clone())))
}

/// Degree-k monomials that divide at least one term of `f` — the only ones
/// with a nonzero contraction against `f`. Deterministically ordered.
fn contraction_candidates(f: &Polynomial, k: usize) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for (m, _) in f.terms() {
        if m.degree() >= k {
            out.extend(m.divisors_of_degree(k));
        }
    }
    out
}

fn contract_monomial(h: &Monomial, f: &Polynomial) -> Polynomial {
    Polynomial::monomial(Side::Dual, f.grid, h.clone(), rat(1))
        .contract(f)
        .expect("dual monomial over the same grid")
}

/// A degree-graded subspace of one side's polynomial ring, held as a
/// canonical reduced row-echelon basis under the diagonal-lex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSubspace {
    pub side: Side,
    pub grid: VariableGrid,
    pub degree: usize,
    basis: Vec<Polynomial>,
}

impl GradedSubspace {
    fn from_echelon(
        side: Side,
        grid: VariableGrid,
        degree: usize,
        ech: &Echelon<Monomial, Rationals>,
    ) -> Self {
        let basis = ech.reduced_basis().iter().map(|r| row_poly(side, grid, r)).collect();
        GradedSubspace { side, grid, degree, basis }
    }

    /// Span of a list of homogeneous degree-`degree` polynomials.
    pub fn span(
        side: Side,
        grid: VariableGrid,
        degree: usize,
        polys: &[Polynomial],
        limits: &Limits,
    ) -> Result<Self> {
        let mut ech = Echelon::new(Rationals, limits.max_pivots);
        for p in polys {
            if p.side != side || p.grid != grid {
                return Err(Error::RingMismatch);
            }
            if !p.is_homogeneous() || (!p.is_zero() && p.degree() != Some(degree)) {
                return Err(Error::NotHomogeneous);
            }
            ech.insert(poly_row(p))?;
        }
        Ok(GradedSubspace::from_echelon(side, grid, degree, &ech))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical RREF basis, rows by descending pivot monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        let mut ech = Echelon::new(Rationals, self.basis.len() + 1);
        for b in &self.basis {
            ech.insert(poly_row(b))?;
        }
        Ok(ech.contains(poly_row(p)))
    }
}

fn image_rank_with<F: Field + Clone>(
    field: F,
    f: &Polynomial,
    k: usize,
    limits: &Limits,
) -> Result<usize> {
    let d = homogeneous_degree(f)?;
    if k > d {
        return Err(Error::DegreeOutOfRange { degree: k, max: d });
    }
    // rank can exceed neither the source nor the target dimension
    let cap = monomial_space_dim(f.grid.var_count(), k)
        .min(monomial_space_dim(f.grid.var_count(), d - k));
    let mut ech: Echelon<Monomial, F> = Echelon::new(field.clone(), limits.max_pivots);
    for h in contraction_candidates(f, k) {
        let img = contract_monomial(&h, f);
        let row: Row<Monomial, F::Elem> = poly_row(&img)
            .into_iter()
            .map(|(m, c)| (m, field.from_rational(&c)))
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        ech.insert(row)?;
        if ech.rank() == cap {
            break;
        }
    }
    Ok(ech.rank())
}

/// Rank of the degree-k catalecticant of `F` (the Hilbert value `h_k`).
pub fn image_rank(f: &Polynomial, k: usize, mode: Mode, limits: &Limits) -> Result<usize> {
    match mode {
        Mode::Rational => image_rank_with(Rationals, f, k, limits),
        Mode::ModP(p) => image_rank_with(PrimeField::new(p), f, k, limits),
    }
}

/// `S_k ∘ F` with its canonical RREF basis. Only monomials dividing a term
/// of `F` contribute nonzero rows, so the ambient degree-k space is never
/// enumerated.
pub fn image_space(f: &Polynomial, k: usize, limits: &Limits) -> Result<GradedSubspace> {
    let d = homogeneous_degree(f)?;
    if k > d {
        return Err(Error::DegreeOutOfRange { degree: k, max: d });
    }
    let mut ech = Echelon::new(Rationals, limits.max_pivots);
    for h in contraction_candidates(f, k) {
        ech.insert(poly_row(&contract_monomial(&h, f)))?;
    }
    Ok(GradedSubspace::from_echelon(Side::Base, f.grid, d - k, &ech))
}

/// `Ann(F)_k = ker(S_k → R_{deg F − k})`, by exact elimination on the
/// catalecticant. At `k = deg F + 1` (and beyond, capped by the ceiling)
/// every operator annihilates and the full space is returned.
pub fn graded_annihilator(f: &Polynomial, k: usize, limits: &Limits) -> Result<GradedSubspace> {
    let d = homogeneous_degree(f)?;
    let nvars = f.grid.var_count();
    check_ambient(nvars, k, limits)?;
    let mut ech = Echelon::new(Rationals, limits.max_pivots);
    if k > d {
        for m in monomials_of_degree(nvars, k) {
            ech.insert(vec![(m, rat(1))])?;
        }
        return Ok(GradedSubspace::from_echelon(Side::Dual, f.grid, k, &ech));
    }
    let rows = monomials_of_degree(nvars, k)
        .into_iter()
        .map(|m| {
            let img = contract_monomial(&m, f);
            (m, poly_row(&img))
        });
    let (_rank, kernel) = kernel_of_map(Rationals, limits.max_pivots, rows)?;
    for row in kernel {
        ech.insert(row)?;
    }
    Ok(GradedSubspace::from_echelon(Side::Dual, f.grid, k, &ech))
}

/// Degree-k annihilator of a family: operators killing every member at once
/// (the intersection of the members' annihilators).
pub fn family_annihilator(
    members: &[Polynomial],
    k: usize,
    limits: &Limits,
) -> Result<GradedSubspace> {
    let grid = members
        .first()
        .ok_or_else(|| Error::InvalidArgument("family must be nonempty".into()))?
        .grid;
    if members.iter().any(|p| p.grid != grid || p.side != Side::Base) {
        return Err(Error::RingMismatch);
    }
    let nvars = grid.var_count();
    check_ambient(nvars, k, limits)?;
    let rows = monomials_of_degree(nvars, k).into_iter().map(|m| {
        let mut row: Row<(usize, Monomial), BigRational> = Vec::new();
        for (i, f) in members.iter().enumerate().rev() {
            let img = contract_monomial(&m, f);
            row.extend(poly_row(&img).into_iter().map(|(t, c)| ((i, t), c)));
        }
        (m, row)
    });
    let (_rank, kernel) = kernel_of_map(Rationals, limits.max_pivots, rows)?;
    let mut ech = Echelon::new(Rationals, limits.max_pivots);
    for row in kernel {
        ech.insert(row)?;
    }
    Ok(GradedSubspace::from_echelon(Side::Dual, grid, k, &ech))
}

/// Per-degree dimensions of the apolar algebra `S/Ann(F)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
    pub length: usize,
}

pub fn hilbert_function(f: &Polynomial, mode: Mode, limits: &Limits) -> Result<HilbertFunction> {
    let d = homogeneous_degree(f)?;
    let mut values = Vec::with_capacity(d + 1);
    for k in 0..=d {
        values.push(image_rank(f, k, mode, limits)?);
    }
    let length = values.iter().sum();
    Ok(HilbertFunction { values, length })
}

/// Per-degree minimal generator counts `μ_k` of `Ann(F)`.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorReport {
    /// `(k, μ_k)` for `k = 1..=k_max`.
    pub mu: Vec<(usize, usize)>,
    pub degree_of_f: usize,
    pub k_max: usize,
}

impl GeneratorReport {
    pub fn mu_at(&self, k: usize) -> Option<usize> {
        self.mu.iter().find(|&&(d, _)| d == k).map(|&(_, c)| c)
    }

    pub fn max_generating_degree(&self) -> usize {
        self.mu.iter().filter(|&&(_, c)| c > 0).map(|&(k, _)| k).max().unwrap_or(0)
    }

    /// The generating degree is certified once the scan covers
    /// `deg F + 1`: beyond that every operator already lies in
    /// `S_1 · Ann(F)_{k−1}`, so no new generators can appear.
    pub fn certified_degree(&self) -> CertifiedDegree {
        let d = self.max_generating_degree();
        if self.k_max > self.degree_of_f {
            CertifiedDegree::certified(d)
        } else {
            CertifiedDegree::asserted(d)
        }
    }
}

pub fn minimal_generator_degrees(
    f: &Polynomial,
    k_max: usize,
    limits: &Limits,
) -> Result<GeneratorReport> {
    let d = homogeneous_degree(f)?;
    let nvars = f.grid.var_count();
    let mut mu = Vec::new();
    let mut prev: Option<GradedSubspace> = None;
    for k in 1..=k_max {
        if k > d + 1 {
            // Ann_{k-1} is already the full space, so S_1 * Ann_{k-1} = S_k
            mu.push((k, 0));
            continue;
        }
        let ann = graded_annihilator(f, k, limits)?;
        let grown = match &prev {
            None => 0,
            Some(p) => {
                let mut ech = Echelon::new(Rationals, limits.max_pivots);
                for b in p.basis() {
                    for v in 0..nvars {
                        ech.insert(poly_row(&b.mul_monomial(&Monomial::var(v))))?;
                    }
                }
                ech.rank()
            }
        };
        mu.push((k, ann.dim() - grown));
        prev = Some(ann);
    }
    Ok(GeneratorReport { mu, degree_of_f: d, k_max })
}

/// One degree of the direct degree-2 generation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub k: usize,
    /// dim S_k.
    pub ambient: usize,
    /// Hilbert value h_k.
    pub hilbert: usize,
    /// dim Ann(F)_k = ambient − hilbert.
    pub expected: usize,
    /// dim span(S_{k−2} · candidates).
    pub spanned: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectVerification {
    pub checks: Vec<DegreeCheck>,
    pub all_equal: bool,
}

/// Direct route: candidates must annihilate `F`; at each `k ≤ k_max` the
/// rank of `S_{k−2} · candidates` is compared with `dim S_k − h_k`.
pub fn verify_degree2_generation_direct(
    f: &Polynomial,
    candidates: &[Polynomial],
    k_max: usize,
    limits: &Limits,
) -> Result<DirectVerification> {
    let d = homogeneous_degree(f)?;
    let nvars = f.grid.var_count();
    for (i, c) in candidates.iter().enumerate() {
        let r = c.contract(f)?;
        if !r.is_zero() {
            return Err(Error::CandidateNotApolar {
                index: i,
                detail: format!("candidate {c} leaves remainder {r}"),
            });
        }
    }
    let mut checks = Vec::new();
    for k in 0..=k_max {
        let ambient = check_ambient(nvars, k, limits)?;
        let hilbert = if k <= d { image_rank(f, k, Mode::Rational, limits)? } else { 0 };
        let expected = ambient - hilbert;
        let spanned = if k < 2 {
            0
        } else {
            let mut ech = Echelon::new(Rationals, limits.max_pivots);
            for m in monomials_of_degree(nvars, k - 2) {
                for c in candidates {
                    ech.insert(poly_row(&c.mul_monomial(&m)))?;
                    if ech.rank() == expected {
                        break;
                    }
                }
                if ech.rank() == expected {
                    break;
                }
            }
            ech.rank()
        };
        checks.push(DegreeCheck { k, ambient, hilbert, expected, spanned, equal: spanned == expected });
    }
    let all_equal = checks.iter().all(|c| c.equal);
    Ok(DirectVerification { checks, all_equal })
}

/// Whether every degree-k monomial in `nvars` variables is divisible by some
/// generator (used for the `(𝒰)_{deg F + 1} = S_{deg F + 1}` check).
pub fn monomials_fill_degree(
    gens: &[Monomial],
    nvars: usize,
    k: usize,
    limits: &Limits,
) -> Result<bool> {
    check_ambient(nvars, k, limits)?;
    Ok(monomials_of_degree(nvars, k)
        .iter()
        .all(|m| gens.iter().any(|g| g.divides(m))))
}

fn poly_pow(p: &Polynomial, e: usize) -> Result<Polynomial> {
    let mut out = Polynomial::constant(p.side, p.grid, rat(1));
    for _ in 0..e {
        out = out.mul(p)?;
    }
    Ok(out)
}

fn check_waring_inputs(f: &Polynomial, forms: &[Polynomial]) -> Result<usize> {
    let d = homogeneous_degree(f)?;
    for l in forms {
        if l.side != f.side || l.grid != f.grid {
            return Err(Error::RingMismatch);
        }
        if !l.is_homogeneous() || l.degree() != Some(1) {
            return Err(Error::InvalidArgument("forms must be homogeneous of degree 1".into()));
        }
    }
    Ok(d)
}

/// Check `F = Σ cᵢ lᵢ^{deg F}` exactly.
pub fn waring_verify(
    f: &Polynomial,
    forms: &[Polynomial],
    coefficients: &[BigRational],
) -> Result<bool> {
    let d = check_waring_inputs(f, forms)?;
    if forms.len() != coefficients.len() {
        return Err(Error::InvalidArgument("one coefficient per form required".into()));
    }
    let mut sum = Polynomial::zero(f.side, f.grid);
    for (l, c) in forms.iter().zip(coefficients) {
        sum = sum.add(&poly_pow(l, d)?.scale(c))?;
    }
    Ok(&sum == f)
}

/// Solve `F = Σ cᵢ lᵢ^{deg F}` for the `cᵢ` by exact elimination;
/// `None` when `F ∉ span{lᵢ^{deg F}}`.
pub fn waring_solve(
    f: &Polynomial,
    forms: &[Polynomial],
    limits: &Limits,
) -> Result<Option<Vec<BigRational>>> {
    let d = check_waring_inputs(f, forms)?;
    let mut ech: Echelon<AugKey<usize, Monomial>, Rationals> =
        Echelon::new(Rationals, limits.max_pivots);
    for (i, l) in forms.iter().enumerate() {
        let mut row: Row<AugKey<usize, Monomial>, BigRational> = poly_row(&poly_pow(l, d)?)
            .into_iter()
            .map(|(m, c)| (AugKey::Img(m), c))
            .collect();
        row.push((AugKey::Aug(i), rat(1)));
        ech.insert(row)?;
    }
    let mut frow: Row<AugKey<usize, Monomial>, BigRational> =
        poly_row(f).into_iter().map(|(m, c)| (AugKey::Img(m), c)).collect();
    frow.push((AugKey::Aug(forms.len()), rat(1)));
    let reduced = ech.reduce(frow);
    if matches!(reduced.first(), Some((AugKey::Img(_), _))) {
        return Ok(None);
    }
    // reduced = F + Σ aᵢ lᵢ^d in the augment columns, so cᵢ = −aᵢ
    let mut coeffs = vec![BigRational::zero(); forms.len()];
    for (key, v) in &reduced {
        match key {
            AugKey::Aug(i) if *i < forms.len() => coeffs[*i] = -v.clone(),
            AugKey::Aug(_) => debug_assert_eq!(*v, rat(1)),
            AugKey::Img(_) => unreachable!("leading key was an augment"),
        }
    }
    debug_assert!(waring_verify(f, forms, &coeffs)?);
    Ok(Some(coeffs))
}

/// Dimension data of `Diff(F_l)` for a dehomogenized polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffDimension {
    /// `dim_k Diff(g)`: span of all iterated contractions of `g`.
    pub total: usize,
    /// Hilbert function of the associated graded algebra: dimension drop of
    /// the span of order-`≥ k` contractions from `k` to `k + 1`.
    pub by_order: Vec<usize>,
}

/// Substitute 1 for `var` in `F` and measure the span of all iterated
/// contractions of the result (the Bernardi–Ranestad cactus upper bound).
pub fn dehomogenized_diff_dimension(
    f: &Polynomial,
    var: usize,
    limits: &Limits,
) -> Result<DiffDimension> {
    let g = f.substitute_one(var);
    if g.is_zero() {
        return Err(Error::InvalidArgument("dehomogenization vanished".into()));
    }
    let dmax = g.degree().unwrap();
    // insert orders from the top: after finishing order k the accumulated
    // rank is dim span{h ∘ g : deg h >= k}
    let mut ech = Echelon::new(Rationals, limits.max_pivots);
    let mut cumulative = vec![0usize; dmax + 2];
    for k in (0..=dmax).rev() {
        for h in contraction_candidates(&g, k) {
            ech.insert(poly_row(&contract_monomial(&h, &g)))?;
        }
        cumulative[k] = ech.rank();
    }
    let by_order = (0..=dmax).map(|k| cumulative[k] - cumulative[k + 1]).collect();
    Ok(DiffDimension { total: ech.rank(), by_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{
        build_invariant, build_minors, degree2_candidates, InvariantKind, MinorKind,
    };
    use crate::linalg::DEFAULT_PRIME;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn image_space_det3_is_minor_span() {
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let img = image_space(&f, 1, &lim()).unwrap();
        assert_eq!(img.dim(), 9);
        let minors: Vec<Polynomial> = build_minors(MinorKind::DetMinors, f.grid, 2)
            .unwrap()
            .members
            .into_iter()
            .map(|m| m.poly)
            .collect();
        let span = GradedSubspace::span(Side::Base, f.grid, 2, &minors, &lim()).unwrap();
        assert_eq!(img, span);
    }

    #[test]
    fn image_space_pfaffian_is_pfaffian_minor_span() {
        let f = build_invariant(InvariantKind::Pfaffian, 3).unwrap();
        let img = image_space(&f, 1, &lim()).unwrap();
        assert_eq!(img.dim(), 15);
        let minors: Vec<Polynomial> = build_minors(MinorKind::PfaffianMinors, f.grid, 4)
            .unwrap()
            .members
            .into_iter()
            .map(|m| m.poly)
            .collect();
        let span = GradedSubspace::span(Side::Base, f.grid, 2, &minors, &lim()).unwrap();
        assert_eq!(img, span);
    }

    #[test]
    fn image_at_top_degree_is_constants() {
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let img = image_space(&f, 3, &lim()).unwrap();
        assert_eq!(img.dim(), 1);
        assert_eq!(img.degree, 0);
    }

    #[test]
    fn hilbert_small_invariants() {
        let l = lim();
        let det3 = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let h = hilbert_function(&det3, Mode::Rational, &l).unwrap();
        assert_eq!(h.values, vec![1, 9, 9, 1]);
        assert_eq!(h.length, 20);

        let pf2 = build_invariant(InvariantKind::Pfaffian, 2).unwrap();
        let h = hilbert_function(&pf2, Mode::Rational, &l).unwrap();
        assert_eq!(h.values, vec![1, 6, 1]);

        let hf2 = build_invariant(InvariantKind::Hafnian, 2).unwrap();
        let h = hilbert_function(&hf2, Mode::Rational, &l).unwrap();
        assert_eq!(h.values, vec![1, 6, 1]);
    }

    #[test]
    fn mod_p_ranks_match_rational() {
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let hq = hilbert_function(&f, Mode::Rational, &lim()).unwrap();
        let hp = hilbert_function(&f, Mode::ModP(DEFAULT_PRIME), &lim()).unwrap();
        assert_eq!(hq, hp);
    }

    #[test]
    fn annihilator_dims_and_rank_nullity() {
        let l = lim();
        let det2 = build_invariant(InvariantKind::Determinant, 2).unwrap();
        assert_eq!(graded_annihilator(&det2, 0, &l).unwrap().dim(), 0);
        assert_eq!(graded_annihilator(&det2, 2, &l).unwrap().dim(), 9);
        // k = deg F + 1: full space
        assert_eq!(
            graded_annihilator(&det2, 3, &l).unwrap().dim(),
            monomial_space_dim(4, 3)
        );

        let det3 = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let ann2 = graded_annihilator(&det3, 2, &l).unwrap();
        assert_eq!(ann2.dim(), 36);
        let cands = degree2_candidates(InvariantKind::Determinant, 3).unwrap();
        let span = GradedSubspace::span(Side::Dual, det3.grid, 2, &cands, &l).unwrap();
        assert_eq!(ann2, span);
    }

    #[test]
    fn family_annihilator_intersects() {
        // Remark 1.4: Ann(F)_k = degree-k annihilator of S_{d-k} ∘ F
        let l = lim();
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let family = image_space(&f, 1, &l).unwrap();
        let via_family = family_annihilator(family.basis(), 2, &l).unwrap();
        let direct = graded_annihilator(&f, 2, &l).unwrap();
        assert_eq!(via_family, direct);
    }

    #[test]
    fn generator_degrees_det2_and_pf4() {
        let l = lim();
        let det2 = build_invariant(InvariantKind::Determinant, 2).unwrap();
        let rep = minimal_generator_degrees(&det2, 3, &l).unwrap();
        assert_eq!(rep.mu, vec![(1, 0), (2, 9), (3, 0)]);
        assert_eq!(rep.max_generating_degree(), 2);
        assert!(rep.certified_degree().is_certified());

        let pf2 = build_invariant(InvariantKind::Pfaffian, 2).unwrap();
        let rep = minimal_generator_degrees(&pf2, 3, &l).unwrap();
        assert_eq!(rep.mu_at(2), Some(20));
        assert_eq!(rep.mu_at(3), Some(0));
    }

    #[test]
    fn direct_verification_det3() {
        let l = lim();
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let cands = degree2_candidates(InvariantKind::Determinant, 3).unwrap();
        let v = verify_degree2_generation_direct(&f, &cands, 4, &l).unwrap();
        assert!(v.all_equal, "{:?}", v.checks);
        assert_eq!(v.checks.len(), 5);
    }

    #[test]
    fn direct_verification_detects_missing_candidate() {
        let l = lim();
        let f = build_invariant(InvariantKind::Determinant, 2).unwrap();
        let mut cands = degree2_candidates(InvariantKind::Determinant, 2).unwrap();
        cands.remove(0);
        let v = verify_degree2_generation_direct(&f, &cands, 3, &l).unwrap();
        assert!(!v.all_equal);
    }

    #[test]
    fn non_apolar_candidate_rejected() {
        let l = lim();
        let f = build_invariant(InvariantKind::Determinant, 2).unwrap();
        let bad = Polynomial::monomial(
            Side::Dual,
            f.grid,
            Monomial::from_pairs([(0, 1), (3, 1)]),
            rat(1),
        );
        assert!(matches!(
            verify_degree2_generation_direct(&f, &[bad], 2, &l),
            Err(Error::CandidateNotApolar { index: 0, .. })
        ));
    }

    #[test]
    fn unacceptable_monomials_fill_top_degree() {
        let f = build_invariant(InvariantKind::Determinant, 2).unwrap();
        let gens: Vec<Monomial> = crate::invariants::unacceptable_degree2(f.grid)
            .iter()
            .map(|p| p.leading().unwrap().0.clone())
            .collect();
        assert!(monomials_fill_degree(&gens, 4, 3, &lim()).unwrap());
        assert!(!monomials_fill_degree(&gens, 4, 2, &lim()).unwrap());
    }

    #[test]
    fn waring_det2_example() {
        // det = ad - bc = 1/4(a+d)^2 - 1/4(a-d)^2 - 1/4(b+c)^2 + 1/4(b-c)^2
        let f = build_invariant(InvariantKind::Determinant, 2).unwrap();
        let g = f.grid;
        let v = |i: usize, j: usize| {
            Polynomial::monomial(Side::Base, g, Monomial::var(g.cell(i, j).unwrap().0), rat(1))
        };
        let (a, b, c, d) = (v(1, 1), v(1, 2), v(2, 1), v(2, 2));
        let forms = vec![
            a.add(&d).unwrap(),
            a.sub(&d).unwrap(),
            b.add(&c).unwrap(),
            b.sub(&c).unwrap(),
        ];
        let quarter = rat(1) / rat(4);
        let coeffs = vec![quarter.clone(), -quarter.clone(), -quarter.clone(), quarter.clone()];
        assert!(waring_verify(&f, &forms, &coeffs).unwrap());
        let solved = waring_solve(&f, &forms, &lim()).unwrap().unwrap();
        // the four squares are independent, so the solution is unique
        assert_eq!(solved, coeffs);
        // a, d alone cannot reach the bc-terms
        assert!(waring_solve(&f, &forms[..2], &lim()).unwrap().is_none());
    }

    #[test]
    fn dehomogenized_det3_diff_dimension() {
        let f = build_invariant(InvariantKind::Determinant, 3).unwrap();
        let a11 = f.grid.cell(1, 1).unwrap().0;
        let d = dehomogenized_diff_dimension(&f, a11, &lim()).unwrap();
        assert_eq!(d.total, 18);
        assert_eq!(d.by_order, vec![1, 8, 8, 1]);
    }
}
