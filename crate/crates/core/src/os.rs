//! Degree ≤ 2 of the Orlik–Solomon algebra over ℤ/m.
//!
//! Degree-2 elements are stored per multiple point `X` (Brieskorn block) in
//! the basis `f_j = e_{i₁}∧e_j`, `j ∈ X∖{i₁}`, where `i₁ = min X`. In this
//! basis `e_a∧e_b = f_b − f_a` (with `f_{i₁} = 0`), so for `η|_X = Σ a_k e_k`
//! and `ω|_X = Σ b_k e_k` the coefficient of `f_j` in `η∧ω` is
//! `A·b_j − B·a_j` with `A = Σ_X a`, `B = Σ_X b`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::incidence::{Block, Incidence, LineId};
use crate::zmod::{self, is_prime, ModMatrix, Modulus, ModuleInvariants};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OsError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("the 1-form is not the diagonal element")]
    NotDiagonal,
    #[error("the 1-form has nonzero coefficient sum {0}")]
    NonZeroBoundary(u64),
    #[error("1-form already has a coefficient on the line at infinity")]
    AlreadyConed,
    #[error("line {0} is not in the arrangement")]
    UnknownLine(LineId),
    #[error("1-form lines {got:?} do not match arrangement lines {want:?}")]
    LineMismatch { got: Vec<LineId>, want: Vec<LineId> },
    #[error("moduli {0} and {1} differ")]
    ModulusMismatch(u64, u64),
    #[error("expected {want} coefficients, got {got}")]
    WrongLength { want: usize, got: usize },
}

/// `Σ a_i e_i` over ℤ/m, with coefficients listed against sorted line ids.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OneForm {
    modulus: u64,
    ids: Vec<LineId>,
    coeffs: Vec<u64>,
}

impl OneForm {
    pub fn new(modulus: u64, ids: Vec<LineId>, coeffs: Vec<u64>) -> Result<Self, OsError> {
        if ids.len() != coeffs.len() {
            return Err(OsError::WrongLength { want: ids.len(), got: coeffs.len() });
        }
        let md = Modulus::new(modulus);
        let mut pairs: Vec<(LineId, u64)> = ids.into_iter().zip(coeffs.into_iter().map(|c| c % md.get())).collect();
        pairs.sort_by_key(|p| p.0);
        let (ids, coeffs) = pairs.into_iter().unzip();
        Ok(OneForm { modulus, ids, coeffs })
    }

    /// From signed integers, reduced mod `m`.
    pub fn from_ints(modulus: u64, ids: &[LineId], coeffs: &[i64]) -> Result<Self, OsError> {
        let md = Modulus::new(modulus);
        Self::new(modulus, ids.to_vec(), coeffs.iter().map(|&c| md.reduce(c as i128)).collect())
    }

    pub fn zero(modulus: u64, ids: &[LineId]) -> Self {
        OneForm { modulus, ids: ids.to_vec(), coeffs: vec![0; ids.len()] }
    }

    /// The diagonal element `Σ e_i`.
    pub fn diagonal(modulus: u64, ids: &[LineId]) -> Self {
        OneForm { modulus, ids: ids.to_vec(), coeffs: vec![1 % modulus; ids.len()] }
    }

    /// The basis element `e_id`.
    pub fn basis(modulus: u64, ids: &[LineId], id: LineId) -> Self {
        let mut w = Self::zero(modulus, ids);
        w.set(id, 1);
        w
    }

    /// `e(S) = Σ_{i ∈ S} e_i`.
    pub fn indicator(modulus: u64, ids: &[LineId], subset: &[LineId]) -> Self {
        let mut w = Self::zero(modulus, ids);
        for &i in subset {
            w.set(i, 1);
        }
        w
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ids(&self) -> &[LineId] {
        &self.ids
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, id: LineId) -> u64 {
        self.ids.binary_search(&id).map(|i| self.coeffs[i]).unwrap_or(0)
    }

    pub fn set(&mut self, id: LineId, value: u64) {
        let i = self.ids.binary_search(&id).expect("line id present");
        self.coeffs[i] = value % self.modulus;
    }

    fn ring(&self) -> Modulus {
        Modulus::new(self.modulus)
    }

    /// `α = Σ a_i`.
    pub fn alpha(&self) -> u64 {
        let md = self.ring();
        self.coeffs.iter().fold(0, |s, &c| md.add(s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> Vec<LineId> {
        self.ids.iter().zip(&self.coeffs).filter(|(_, &c)| c != 0).map(|(&i, _)| i).collect()
    }

    pub fn scale(&self, c: u64) -> OneForm {
        let md = self.ring();
        OneForm { coeffs: self.coeffs.iter().map(|&x| md.mul(x, c)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &OneForm) -> Result<OneForm, OsError> {
        self.compatible(other)?;
        let md = self.ring();
        Ok(OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| md.add(x, y)).collect(), ..self.clone() })
    }

    pub fn neg(&self) -> OneForm {
        let md = self.ring();
        OneForm { coeffs: self.coeffs.iter().map(|&x| md.neg(x)).collect(), ..self.clone() }
    }

    fn compatible(&self, other: &OneForm) -> Result<(), OsError> {
        if self.modulus != other.modulus {
            return Err(OsError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.ids != other.ids {
            return Err(OsError::LineMismatch { got: other.ids.clone(), want: self.ids.clone() });
        }
        Ok(())
    }

    /// Check that the form lives on exactly the lines of `inc`.
    pub fn check_lines(&self, inc: &Incidence) -> Result<(), OsError> {
        if self.ids != inc.ids() {
            return Err(OsError::LineMismatch { got: self.ids.clone(), want: inc.ids().to_vec() });
        }
        Ok(())
    }

    /// Same coefficients reduced to a divisor of the modulus.
    pub fn reduce_mod(&self, m: u64) -> OneForm {
        assert!(self.modulus % m == 0, "{m} does not divide {}", self.modulus);
        OneForm { modulus: m, ids: self.ids.clone(), coeffs: self.coeffs.iter().map(|&c| c % m).collect() }
    }

    /// Signed representatives in `(−m/2, m/2]`, handy for display.
    pub fn centered(&self) -> Vec<i64> {
        let m = self.modulus as i64;
        self.coeffs.iter().map(|&c| if (c as i64) * 2 > m { c as i64 - m } else { c as i64 }).collect()
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneForm(mod {}; ", self.modulus)?;
        let terms: Vec<String> = self
            .ids
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| format!("{c}·e{i}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0)")
        } else {
            write!(f, "{})", terms.join(" + "))
        }
    }
}

/// A set of lines, possibly including the line at infinity `0`.
pub type Subarrangement = Vec<LineId>;

/// Coning map `e_i ↦ ẽ_i − ẽ_0`: adds `ẽ_0` with coefficient `−Σ a_i`.
pub fn cone_oneform(w: &OneForm) -> Result<OneForm, OsError> {
    if w.ids.first() == Some(&0) {
        return Err(OsError::AlreadyConed);
    }
    let md = w.ring();
    let mut ids = vec![0];
    ids.extend(&w.ids);
    let mut coeffs = vec![md.neg(w.alpha())];
    coeffs.extend(&w.coeffs);
    Ok(OneForm { modulus: w.modulus, ids, coeffs })
}

/// Inverse of coning in the chart where line `i` is at infinity: drop the
/// coefficient of `i` and renumber the remaining lines `1..` in order,
/// matching the line numbering of the deconed arrangement.
pub fn decone_oneform(w: &OneForm, i: LineId) -> Result<OneForm, OsError> {
    if w.ids.binary_search(&i).is_err() {
        return Err(OsError::UnknownLine(i));
    }
    let a = w.alpha();
    if a != 0 {
        return Err(OsError::NonZeroBoundary(a));
    }
    let coeffs: Vec<u64> = w.ids.iter().zip(&w.coeffs).filter(|(&j, _)| j != i).map(|(_, &c)| c).collect();
    let ids = (1..=coeffs.len()).collect();
    Ok(OneForm { modulus: w.modulus, ids, coeffs })
}

/// `ω|_X`: keep only the coefficients of lines through `X`.
pub fn localize(w: &OneForm, block: &Block) -> OneForm {
    let coeffs = block.lines.iter().map(|&i| w.coeff(i)).collect();
    OneForm { modulus: w.modulus, ids: block.lines.clone(), coeffs }
}

/// Degree-2 element: one coefficient vector per block of the incidence, in
/// the basis `e_{min X}∧e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoForm {
    pub modulus: u64,
    pub blocks: Vec<Vec<u64>>,
}

impl TwoForm {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&c| c == 0))
    }

    /// Indices of blocks with a nonzero component.
    pub fn nonzero_blocks(&self) -> Vec<usize> {
        self.blocks.iter().enumerate().filter(|(_, b)| b.iter().any(|&c| c != 0)).map(|(i, _)| i).collect()
    }
}

/// `η∧ω`, block by block.
pub fn wedge(inc: &Incidence, eta: &OneForm, omega: &OneForm) -> Result<TwoForm, OsError> {
    eta.compatible(omega)?;
    eta.check_lines(inc)?;
    let md = eta.ring();
    let blocks = inc
        .blocks()
        .iter()
        .map(|b| {
            let a_sum = b.lines.iter().fold(0, |s, &i| md.add(s, eta.coeff(i)));
            let b_sum = b.lines.iter().fold(0, |s, &i| md.add(s, omega.coeff(i)));
            b.lines[1..]
                .iter()
                .map(|&j| md.sub(md.mul(a_sum, omega.coeff(j)), md.mul(b_sum, eta.coeff(j))))
                .collect()
        })
        .collect();
    Ok(TwoForm { modulus: eta.modulus, blocks })
}

/// Matrix of `ω ↦ η∧ω`: rows are the lines of `inc` (sorted ids), columns
/// the concatenated block bases. Row vectors act on the left.
pub fn wedge_matrix(inc: &Incidence, eta: &OneForm) -> Result<ModMatrix, OsError> {
    eta.check_lines(inc)?;
    let md = eta.ring();
    let cols = inc.rank_two();
    let mut m = ModMatrix::zeros(eta.modulus, inc.n(), cols);
    let mut col = 0;
    for b in inc.blocks() {
        let a_sum = b.lines.iter().fold(0, |s, &i| md.add(s, eta.coeff(i)));
        for &j in &b.lines[1..] {
            for &k in &b.lines {
                let r = inc.index_of(k).expect("block line in incidence");
                let delta = if k == j { a_sum } else { 0 };
                m.set(r, col, md.sub(delta, eta.coeff(j)));
            }
            col += 1;
        }
    }
    Ok(m)
}

/// A cohomology group with one representative 1-form per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1 {
    pub invariants: ModuleInvariants,
    pub representatives: Vec<OneForm>,
}

impl H1 {
    fn from_invariants(inv: ModuleInvariants, ids: &[LineId]) -> Self {
        let representatives = inv
            .generators
            .iter()
            .map(|g| OneForm { modulus: inv.modulus, ids: ids.to_vec(), coeffs: g.clone() })
            .collect();
        H1 { invariants: inv, representatives }
    }
}

/// `Ker(η∧−) / R·η` on the full degree-1 part.
pub fn h1_direct(inc: &Incidence, eta: &OneForm) -> Result<H1, OsError> {
    let w = wedge_matrix(inc, eta)?;
    let ker = zmod::kernel_generators(&w);
    let image = ModMatrix::from_residue_rows(eta.modulus, inc.n(), vec![eta.coeffs.clone()]);
    let inv = zmod::quotient_invariants(&ker, &image).expect("η∧η = 0, so η lies in the kernel");
    Ok(H1::from_invariants(inv, inc.ids()))
}

/// `Ker(η̃∧−) / R·η̃` on the subspace `{ω̃ : Σ ω̃ = 0}` of a projective
/// (central) arrangement; `η̃` itself must have zero coefficient sum.
pub fn h1_coned(inc: &Incidence, eta: &OneForm) -> Result<H1, OsError> {
    let a = eta.alpha();
    if a != 0 {
        return Err(OsError::NonZeroBoundary(a));
    }
    let w = wedge_matrix(inc, eta)?;
    let mut rows = w.to_rows();
    for r in rows.iter_mut() {
        r.push(1 % eta.modulus);
    }
    let aug = ModMatrix::from_residue_rows(eta.modulus, w.ncols() + 1, rows);
    let ker = zmod::kernel_generators(&aug);
    let image = ModMatrix::from_residue_rows(eta.modulus, inc.n(), vec![eta.coeffs.clone()]);
    let inv = zmod::quotient_invariants(&ker, &image).expect("η̃ is a boundary-free cocycle");
    Ok(H1::from_invariants(inv, inc.ids()))
}

/// Which local condition failed at a block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum LocalViolation {
    /// `p` divides `|X|` but `Σ_X b ≠ 0`.
    SumNonzero { lines: Vec<LineId>, sum: u64 },
    /// `p ∤ |X|` but the coefficients on `X` are not all equal.
    NotConstant { lines: Vec<LineId>, coeffs: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub is_cocycle: bool,
    pub violations: Vec<LocalViolation>,
}

/// Local mod-p test for `η̃₀∧ω = 0`: at each point `X`, if `p | |X|` the
/// coefficients on `X` sum to zero, otherwise they are all equal.
pub fn is_cocycle_modp(inc: &Incidence, eta: &OneForm, omega: &OneForm) -> Result<CocycleReport, OsError> {
    let p = eta.modulus;
    if !is_prime(p) {
        return Err(OsError::NotPrime(p));
    }
    eta.compatible(omega)?;
    eta.check_lines(inc)?;
    if eta.coeffs.iter().any(|&c| c != 1) {
        return Err(OsError::NotDiagonal);
    }
    let md = Modulus::new(p);
    let mut violations = Vec::new();
    for b in inc.blocks() {
        let coeffs: Vec<u64> = b.lines.iter().map(|&i| omega.coeff(i)).collect();
        if b.multiplicity() as u64 % p == 0 {
            let sum = coeffs.iter().fold(0, |s, &c| md.add(s, c));
            if sum != 0 {
                violations.push(LocalViolation::SumNonzero { lines: b.lines.clone(), sum });
            }
        } else if coeffs.windows(2).any(|w| w[0] != w[1]) {
            violations.push(LocalViolation::NotConstant { lines: b.lines.clone(), coeffs });
        }
    }
    Ok(CocycleReport { is_cocycle: violations.is_empty(), violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetViolation {
    pub lines: Vec<LineId>,
    pub selected: Vec<LineId>,
    /// `"parity"` when `|X|` is even, `"monochrome"` when it is odd.
    pub condition: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    pub passes: bool,
    pub violations: Vec<SubsetViolation>,
}

/// Parity test for a subset `S`: at every point `X`, `|S_X|` is even when
/// `|X|` is even, and `S_X ∈ {∅, X}` when `|X|` is odd.
pub fn mod2_subset_check(inc: &Incidence, subset: &[LineId]) -> Result<SubsetReport, OsError> {
    for &s in subset {
        if inc.index_of(s).is_none() {
            return Err(OsError::UnknownLine(s));
        }
    }
    let mut violations = Vec::new();
    for b in inc.blocks() {
        let selected: Vec<LineId> = b.lines.iter().copied().filter(|i| subset.contains(i)).collect();
        let t = b.multiplicity();
        let bad = if t % 2 == 0 { selected.len() % 2 == 1 } else { !selected.is_empty() && selected.len() != t };
        if bad {
            violations.push(SubsetViolation {
                lines: b.lines.clone(),
                selected,
                condition: if t % 2 == 0 { "parity" } else { "monochrome" },
            });
        }
    }
    Ok(SubsetReport { passes: violations.is_empty(), violations })
}

/// All `S` with `η̃₀∧e(S) = 0` over F₂, from a kernel basis rather than by
/// trying all subsets. Sorted by size, then lexicographically.
pub fn enumerate_f2_cocycles(inc: &Incidence) -> Vec<Subarrangement> {
    let eta = OneForm::diagonal(2, inc.ids());
    let w = wedge_matrix(inc, &eta).expect("diagonal matches incidence");
    let basis = zmod::kernel_generators(&w);
    let k = basis.nrows();
    assert!(k < 31, "cocycle space too large to list");
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let mut v = vec![0u64; inc.n()];
        for (r, row) in basis.rows().enumerate() {
            if mask >> r & 1 == 1 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        out.push(inc.ids().iter().zip(&v).filter(|(_, &c)| c == 1).map(|(&i, _)| i).collect::<Vec<_>>());
    }
    out.sort_by(|a: &Vec<LineId>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::incidence::Block;

    fn single_block(t: usize) -> Incidence {
        let ids: Vec<LineId> = (1..=t).collect();
        let names = ids.iter().map(|i| format!("H{i}")).collect();
        Incidence::new(ids.clone(), names, vec![Block { lines: ids, cyclic: None }]).unwrap()
    }

    #[test]
    fn lemma_on_a_triple_point() {
        let inc = single_block(3);
        let (a1, a2, a3) = (2i64, 5, 7);
        let eta = OneForm::from_ints(101, &[1, 2, 3], &[a1, a2, a3]).unwrap();
        let omega = OneForm::from_ints(101, &[1, 2, 3], &[1, -1, 0]).unwrap();
        let w = wedge(&inc, &eta, &omega).unwrap();
        // −(a1+a2+a3) on e1∧e2, nothing on e1∧e3
        assert_eq!(w.blocks, vec![vec![Modulus::new(101).reduce(-(a1 + a2 + a3) as i128), 0]]);
    }

    #[test]
    fn wedge_is_alternating() {
        let inc = single_block(4);
        let eta = OneForm::from_ints(8, &[1, 2, 3, 4], &[1, 3, 5, 2]).unwrap();
        let om = OneForm::from_ints(8, &[1, 2, 3, 4], &[0, 7, 1, 6]).unwrap();
        assert!(wedge(&inc, &eta, &eta).unwrap().is_zero());
        let x = wedge(&inc, &eta, &om).unwrap();
        let y = wedge(&inc, &om, &eta).unwrap();
        let md = Modulus::new(8);
        assert!(x.blocks[0].iter().zip(&y.blocks[0]).all(|(&p, &q)| md.add(p, q) == 0));
    }

    #[test]
    fn cone_examples() {
        let w = OneForm::from_ints(5, &[1, 2, 3], &[1, 0, 0]).unwrap();
        let c = cone_oneform(&w).unwrap();
        assert_eq!(c.coeffs(), &[4, 1, 0, 0]);
        assert_eq!(decone_oneform(&c, 0).unwrap(), w);
        let d = OneForm::diagonal(2, &[1, 2, 3]);
        assert_eq!(cone_oneform(&d).unwrap(), OneForm::diagonal(2, &[0, 1, 2, 3]));
        assert!(cone_oneform(&OneForm::zero(7, &[1, 2])).unwrap().is_zero());
    }

    #[test]
    fn localize_filters() {
        let w = OneForm::from_ints(7, &[1, 2, 3, 4, 5, 6, 7], &[1, 2, 3, 4, 5, 6, 0]).unwrap();
        let b = Block { lines: vec![1, 4, 7], cyclic: None };
        let l = localize(&w, &b);
        assert_eq!(l.ids(), &[1, 4, 7]);
        assert_eq!(l.coeffs(), &[1, 4, 0]);
    }

    #[test]
    fn local_conditions_match_wedge() {
        for t in 2..=5 {
            let inc = single_block(t);
            let ids: Vec<LineId> = (1..=t).collect();
            for p in [2u64, 3, 5] {
                let eta = OneForm::diagonal(p, &ids);
                let total = (p as usize).pow(t as u32);
                for code in 0..total {
                    let coeffs: Vec<u64> = (0..t).map(|k| (code / (p as usize).pow(k as u32)) as u64 % p).collect();
                    let om = OneForm::new(p, ids.clone(), coeffs).unwrap();
                    let local = is_cocycle_modp(&inc, &eta, &om).unwrap().is_cocycle;
                    assert_eq!(local, wedge(&inc, &eta, &om).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn preconditions_of_local_test() {
        let inc = single_block(2);
        let eta = OneForm::diagonal(4, &[1, 2]);
        assert_eq!(is_cocycle_modp(&inc, &eta, &eta), Err(OsError::NotPrime(4)));
        let eta = OneForm::from_ints(3, &[1, 2], &[1, 2]).unwrap();
        assert_eq!(is_cocycle_modp(&inc, &eta, &eta), Err(OsError::NotDiagonal));
        let eta = OneForm::diagonal(3, &[1, 2]);
        let e1 = OneForm::basis(3, &[1, 2], 1);
        let r = is_cocycle_modp(&inc, &eta, &e1).unwrap();
        assert!(!r.is_cocycle);
        assert!(matches!(r.violations[0], LocalViolation::NotConstant { .. }));
    }

    #[test]
    fn pencil_h1_vanishes_for_diagonal() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, -1, 0)]).unwrap();
        let inc = a.incidence();
        let h = h1_direct(&inc, &OneForm::diagonal(2, inc.ids())).unwrap();
        assert!(h.invariants.is_trivial());
    }

    #[test]
    fn generic_arrangement_cocycles_are_trivial() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]).unwrap();
        let cone = a.projectivize().incidence();
        let all = enumerate_f2_cocycles(&cone);
        assert_eq!(all, vec![vec![], vec![0, 1, 2, 3]]);
    }
}
