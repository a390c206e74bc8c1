//! Buchberger S-pair verification, initial ideals and standard-monomial
//! counting under diagonal orders — the scalable second route to the
//! degree-2 generation results.

use serde::Serialize;

use crate::apolarity::{image_rank, Limits, Mode};
use crate::divide::reduce;
use crate::error::{Error, Result};
use crate::grid::VariableGrid;
use crate::invariants::subsets;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{rat, Polynomial, Side};

/// One S-pair whose remainder did not vanish.
#[derive(Debug, Clone, Serialize)]
pub struct SPairFailure {
    pub pair: (usize, usize),
    /// Canonical text of the nonzero remainder.
    pub remainder: String,
}

/// Outcome of running Buchberger's criterion over a proposed basis.
#[derive(Debug, Clone, Serialize)]
pub struct GroebnerReport {
    pub generators: usize,
    pub pairs: usize,
    pub skipped: usize,
    #[serde(rename = "reducedToZero")]
    pub reduced_to_zero: usize,
    pub failures: Vec<SPairFailure>,
    #[serde(rename = "isGroebner")]
    pub is_groebner: bool,
    /// No generator's leading term divides another's.
    pub minimal: bool,
    /// Additionally: generators monic, no trailing term divisible by any
    /// leading term.
    pub reduced: bool,
}

/// `S(f,g) = (lcm/LT(f))·f − (lcm/LT(g))·g`, leading terms cancelled.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Result<Polynomial> {
    let _ = order;
    let (fm, fc) = f.leading().ok_or(Error::ZeroDivisor(0))?;
    let (gm, gc) = g.leading().ok_or(Error::ZeroDivisor(1))?;
    let lcm = fm.lcm(gm);
    let uf = Polynomial::monomial(f.side, f.grid, fm.quotient_of(&lcm).unwrap(), rat(1) / fc);
    let ug = Polynomial::monomial(g.side, g.grid, gm.quotient_of(&lcm).unwrap(), rat(1) / gc);
    uf.mul(f)?.sub(&ug.mul(g)?)
}

fn minimality_flags(gens: &[Polynomial]) -> (bool, bool) {
    let leads: Vec<&Monomial> = gens.iter().map(|g| g.leading().unwrap().0).collect();
    let minimal = !leads.iter().enumerate().any(|(i, lt)| {
        leads.iter().enumerate().any(|(j, other)| i != j && other.divides(lt))
    });
    let reduced = minimal
        && gens.iter().enumerate().all(|(i, g)| {
            *g.leading().unwrap().1 == rat(1)
                && g.terms().all(|(m, _)| {
                    m == leads[i] || !leads.iter().any(|lt| lt.divides(m))
                })
        });
    (minimal, reduced)
}

/// All S-pair indices in the normal strategy order: by lcm degree, then by
/// the lcm under the term order, then by index for determinism.
fn spair_schedule(gens: &[Polynomial], order: TermOrder) -> Vec<(usize, usize, Monomial)> {
    let mut pairs = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let lcm = gens[i].leading().unwrap().0.lcm(gens[j].leading().unwrap().0);
            pairs.push((i, j, lcm));
        }
    }
    pairs.sort_by(|a, b| {
        order.compare(&a.2, &b.2).then_with(|| (a.0, a.1).cmp(&(b.0, b.1)))
    });
    pairs
}

/// Verify a proposed basis by reducing every S-pair. `skip_coprime` applies
/// Buchberger's first criterion (coprime leading terms reduce to zero).
pub fn buchberger_check_opts(
    gens: &[Polynomial],
    order: TermOrder,
    skip_coprime: bool,
) -> Result<GroebnerReport> {
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroDivisor(i));
        }
    }
    let (minimal, reduced) = minimality_flags(gens);
    let mut skipped = 0;
    let mut reduced_to_zero = 0;
    let mut failures = Vec::new();
    let schedule = spair_schedule(gens, order);
    let pairs = schedule.len();
    for (i, j, lcm) in schedule {
        let lti = gens[i].leading().unwrap().0;
        let ltj = gens[j].leading().unwrap().0;
        if skip_coprime && lcm.degree() == lti.degree() + ltj.degree() {
            skipped += 1;
            continue;
        }
        let s = s_polynomial(&gens[i], &gens[j], order)?;
        let r = reduce(&s, gens, order)?;
        if r.is_zero() {
            reduced_to_zero += 1;
        } else {
            failures.push(SPairFailure { pair: (i, j), remainder: r.canonical_text() });
        }
    }
    let is_groebner = failures.is_empty();
    Ok(GroebnerReport {
        generators: gens.len(),
        pairs,
        skipped,
        reduced_to_zero,
        failures,
        is_groebner,
        minimal,
        reduced,
    })
}

pub fn buchberger_check(gens: &[Polynomial], order: TermOrder) -> Result<GroebnerReport> {
    buchberger_check_opts(gens, order, true)
}

/// Buchberger completion: extend `gens` with nonzero S-pair remainders until
/// the criterion holds, then minimalize and inter-reduce. Out of the
/// verification path; used to derive reference bases.
pub fn reduced_groebner_basis(
    gens: &[Polynomial],
    order: TermOrder,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            queue.push((i, j));
        }
    }
    while let Some((i, j)) = queue.pop() {
        let lti = basis[i].leading().unwrap().0;
        let ltj = basis[j].leading().unwrap().0;
        if lti.lcm(ltj).degree() == lti.degree() + ltj.degree() {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = reduce(&s, &basis, order)?;
        if r.is_zero() {
            continue;
        }
        if basis.len() >= limits.max_pivots {
            return Err(Error::Ceiling(format!(
                "completion basis would exceed {} elements",
                limits.max_pivots
            )));
        }
        let lc = r.leading().unwrap().1.clone();
        basis.push(r.scale(&(rat(1) / lc)));
        let new = basis.len() - 1;
        for k in 0..new {
            queue.push((k, new));
        }
    }
    // minimalize: drop generators whose leading term another's divides
    let mut keep: Vec<Polynomial> = Vec::new();
    'outer: for (i, g) in basis.iter().enumerate() {
        let lt = g.leading().unwrap().0;
        for (j, h) in basis.iter().enumerate() {
            let ht = h.leading().unwrap().0;
            if i != j && ht.divides(lt) && (ht != lt || j < i) {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }
    // inter-reduce trailing terms
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let lt = keep[i].leading().unwrap().0.clone();
        let lc = keep[i].leading().unwrap().1.clone();
        let head = Polynomial::monomial(keep[i].side, keep[i].grid, lt, lc);
        let tail = keep[i].sub(&head)?;
        let r = head.add(&reduce(&tail, &others, order)?)?;
        let lc = r.leading().unwrap().1.clone();
        out.push(r.scale(&(rat(1) / lc)));
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    Ok(out)
}

/// A monomial ideal by its minimal generators (pairwise non-dividing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalize an arbitrary generating set.
    pub fn new(mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        // ascending order: earlier monomials cannot be divisible by later
        // ones of larger degree; equal-degree divisibility means equality
        for m in gens {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdeal { gens: minimal }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }
}

/// Leading-term ideal of a generating set.
pub fn initial_ideal(gens: &[Polynomial], order: TermOrder) -> Result<MonomialIdeal> {
    let _ = order;
    let mut lts = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        lts.push(g.leading().ok_or(Error::ZeroDivisor(i))?.0.clone());
    }
    Ok(MonomialIdeal::new(lts))
}

/// Number of degree-k monomials in `nvars` variables outside the ideal, by
/// backtracking enumeration: variables are taken in ascending index order,
/// and a branch is pruned as soon as a generator divides the partial
/// monomial (generators are indexed by their largest variable, which is the
/// last one to be placed).
pub fn standard_monomial_count(
    ideal: &MonomialIdeal,
    nvars: usize,
    k: usize,
    limits: &Limits,
) -> Result<usize> {
    let mut by_max_var: Vec<Vec<&Monomial>> = vec![Vec::new(); nvars];
    for g in ideal.generators() {
        match g.max_var() {
            Some(v) if v < nvars => by_max_var[v].push(g),
            Some(_) => {}
            None => return Ok(0), // 1 ∈ ideal
        }
    }
    struct State<'a> {
        by_max_var: Vec<Vec<&'a Monomial>>,
        nvars: usize,
        cur: Vec<(usize, u32)>,
        count: usize,
        max: usize,
    }
    fn rec(s: &mut State<'_>, from: usize, remaining: usize) -> Result<()> {
        if remaining == 0 {
            s.count += 1;
            if s.count > s.max {
                return Err(Error::Ceiling(format!(
                    "standard monomial count exceeds the configured maximum {}",
                    s.max
                )));
            }
            return Ok(());
        }
        if from >= s.nvars {
            return Ok(());
        }
        rec(s, from + 1, remaining)?;
        for e in 1..=remaining as u32 {
            s.cur.push((from, e));
            let divisible = s.by_max_var[from].iter().any(|g| {
                g.iter().all(|(v, ge)| {
                    s.cur.iter().any(|&(cv, ce)| cv == v && ce >= ge)
                })
            });
            if divisible {
                s.cur.pop();
                break; // larger exponents stay divisible
            }
            rec(s, from + 1, remaining - e as usize)?;
            s.cur.pop();
        }
        Ok(())
    }
    let mut s = State {
        by_max_var,
        nvars,
        cur: Vec::new(),
        count: 0,
        max: limits.max_ambient,
    };
    rec(&mut s, 0, k)?;
    Ok(s.count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerDegreeCheck {
    pub k: usize,
    /// Standard monomials of the candidates' initial ideal at degree k.
    pub standard: usize,
    /// Hilbert value h_k of F.
    pub hilbert: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroebnerVerification {
    pub report: GroebnerReport,
    /// False when the Buchberger criterion failed and the route is
    /// unavailable (not a verification failure of F itself).
    pub route_available: bool,
    pub checks: Vec<GroebnerDegreeCheck>,
    pub all_equal: bool,
}

/// Gröbner route: candidates annihilate F and pass Buchberger, so the
/// Hilbert function of S/(candidates) is the standard-monomial count; count
/// agreement with h_k at every k ≤ deg F + 1 certifies
/// (candidates) = Ann(F).
pub fn verify_degree2_generation_via_groebner(
    f: &Polynomial,
    candidates: &[Polynomial],
    order: TermOrder,
    mode: Mode,
    limits: &Limits,
) -> Result<GroebnerVerification> {
    for (i, c) in candidates.iter().enumerate() {
        let r = c.contract(f)?;
        if !r.is_zero() {
            return Err(Error::CandidateNotApolar {
                index: i,
                detail: format!("candidate {c} leaves remainder {r}"),
            });
        }
    }
    let d = f
        .degree()
        .ok_or_else(|| Error::InvalidArgument("polynomial must be nonzero".into()))?;
    let report = buchberger_check(candidates, order)?;
    if !report.is_groebner {
        return Ok(GroebnerVerification {
            report,
            route_available: false,
            checks: Vec::new(),
            all_equal: false,
        });
    }
    let ideal = initial_ideal(candidates, order)?;
    let nvars = f.grid.var_count();
    let mut checks = Vec::new();
    for k in 0..=d + 1 {
        let standard = standard_monomial_count(&ideal, nvars, k, limits)?;
        let hilbert = if k <= d { image_rank(f, k, mode, limits)? } else { 0 };
        checks.push(GroebnerDegreeCheck { k, standard, hilbert, equal: standard == hilbert });
    }
    let all_equal = checks.iter().all(|c| c.equal);
    Ok(GroebnerVerification { report, route_available: true, checks, all_equal })
}

fn dvar(grid: VariableGrid, i: usize, j: usize) -> Monomial {
    Monomial::var(grid.cell(i, j).unwrap().0)
}

/// The Laubenbacher–Swanson minimal reduced Gröbner basis of the 2×2
/// subpermanent ideal 𝒫_D of a generic grid: the subpermanents (item 1),
/// four families of cubic monomials with a repeated row or column (items
/// 2–5), and the degree-4 monomials on three rows and three strictly
/// decreasing columns with one exponent doubled (item 6).
pub fn laubenbacher_swanson_basis(grid: VariableGrid) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = crate::invariants::build_minors(
        crate::invariants::MinorKind::PermMinors,
        grid,
        2,
    )?
    .members
    .into_iter()
    .map(|m| m.poly.with_side(Side::Dual))
    .collect();
    out.extend(laubenbacher_swanson_monomials(grid));
    Ok(out)
}

/// Items (2)–(6) of the Laubenbacher–Swanson basis: the monomial members.
pub fn laubenbacher_swanson_monomials(grid: VariableGrid) -> Vec<Polynomial> {
    let (n, m) = (grid.rows, grid.cols);
    let mono =
        |mn: Monomial| Polynomial::monomial(Side::Dual, grid, mn, rat(1));
    let mut out = Vec::new();
    // (2) d_{i1,j1} d_{i1,j2} d_{i2,j3} and (3) d_{i1,j1} d_{i2,j2} d_{i2,j3},
    // i1 > i2, j1 < j2 < j3
    for i2 in 1..=n {
        for i1 in i2 + 1..=n {
            for js in subsets(m, 3) {
                let (j1, j2, j3) = (js[0], js[1], js[2]);
                out.push(mono(dvar(grid, i1, j1).mul(&dvar(grid, i1, j2)).mul(&dvar(grid, i2, j3))));
                out.push(mono(dvar(grid, i1, j1).mul(&dvar(grid, i2, j2)).mul(&dvar(grid, i2, j3))));
            }
        }
    }
    // (4) d_{i1,j1} d_{i2,j1} d_{i3,j2} and (5) d_{i1,j1} d_{i2,j2} d_{i3,j2},
    // i1 < i2 < i3, j1 > j2
    for is in subsets(n, 3) {
        let (i1, i2, i3) = (is[0], is[1], is[2]);
        for j2 in 1..=m {
            for j1 in j2 + 1..=m {
                out.push(mono(dvar(grid, i1, j1).mul(&dvar(grid, i2, j1)).mul(&dvar(grid, i3, j2))));
                out.push(mono(dvar(grid, i1, j1).mul(&dvar(grid, i2, j2)).mul(&dvar(grid, i3, j2))));
            }
        }
    }
    // (6) d_{i1,j1}^{e1} d_{i2,j2}^{e2} d_{i3,j3}^{e3},
    // i1 < i2 < i3, j1 > j2 > j3, exponent product 2
    for is in subsets(n, 3) {
        let (i1, i2, i3) = (is[0], is[1], is[2]);
        for js in subsets(m, 3) {
            let (j3, j2, j1) = (js[0], js[1], js[2]);
            for exps in [(2, 1, 1), (1, 2, 1), (1, 1, 2)] {
                let mn = Monomial::from_pairs([
                    (grid.cell(i1, j1).unwrap().0, exps.0),
                    (grid.cell(i2, j2).unwrap().0, exps.1),
                    (grid.cell(i3, j3).unwrap().0, exps.2),
                ]);
                out.push(mono(mn));
            }
        }
    }
    out
}
