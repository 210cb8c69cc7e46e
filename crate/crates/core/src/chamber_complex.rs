//! The chamber cochain complex `R[ch⁰] → R[ch¹] → R[ch²]` of a flag.

use serde::Serialize;
use thiserror::Error;

use crate::chambers::{ChamberClasses, FlagChamber};
use crate::os::{OneForm, OsError, H1};
use crate::zmod::{self, ModMatrix, Modulus};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Form(#[from] OsError),
    #[error("∇∘∇ ≠ 0: the image of ∇ on C_0 is not in the kernel of ∇ on ch¹")]
    NotAComplex,
}

/// `deg(C_i, D)` for `C_i ∈ ch¹` (rows) and `D ∈ ch²` (columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    pub rows: Vec<Vec<i8>>,
}

fn degree(i: usize, n: usize, d: &FlagChamber) -> i8 {
    if i < n {
        match (d.plus(i), d.plus(i + 1)) {
            (false, true) => 1,
            (true, false) => -1,
            _ => 0,
        }
    } else if d.plus(n) {
        -1
    } else {
        0
    }
}

pub fn degree_table(cc: &ChamberClasses) -> DegreeTable {
    let n = cc.n();
    DegreeTable { rows: (1..=n).map(|i| cc.d.iter().map(|d| degree(i, n, d)).collect()).collect() }
}

/// Coefficients of η in flag order: entry `k` is `a` of `H_{k+1}`.
fn flag_coeffs(cc: &ChamberClasses, eta: &OneForm) -> Result<Vec<u64>, OsError> {
    let ids: Vec<usize> = (1..=cc.n()).collect();
    if eta.ids() != ids.as_slice() {
        return Err(OsError::LineMismatch { got: eta.ids().to_vec(), want: ids });
    }
    Ok(cc.flag.order.iter().map(|&id| eta.coeff(id)).collect())
}

fn sep_sum(md: Modulus, a: &[u64], c: &FlagChamber, d: &FlagChamber) -> u64 {
    c.separating_positions(d).into_iter().fold(0, |s, p| md.add(s, a[p - 1]))
}

/// `∇_η([C_0]) = Σ (a_1 + … + a_i)·[C_i]`.
pub fn nabla0(cc: &ChamberClasses, eta: &OneForm) -> Result<Vec<u64>, OsError> {
    let a = flag_coeffs(cc, eta)?;
    let md = Modulus::new(eta.modulus());
    Ok(a.iter()
        .scan(0, |s, &x| {
            *s = md.add(*s, x);
            Some(*s)
        })
        .collect())
}

/// `∇_η([C]) = Σ_D deg(C, D)·(Σ_{Sep(C,D)} a)·[D]`, as a `|ch¹| × |ch²|` matrix.
pub fn nabla1(cc: &ChamberClasses, eta: &OneForm) -> Result<ModMatrix, OsError> {
    let a = flag_coeffs(cc, eta)?;
    let md = Modulus::new(eta.modulus());
    let n = cc.n();
    let rows = cc
        .c
        .iter()
        .enumerate()
        .map(|(i, ci)| {
            cc.d.iter()
                .map(|d| match degree(i + 1, n, d) {
                    0 => 0,
                    1 => sep_sum(md, &a, ci, d),
                    _ => md.neg(sep_sum(md, &a, ci, d)),
                })
                .collect()
        })
        .collect();
    Ok(ModMatrix::from_residue_rows(eta.modulus(), cc.d.len(), rows))
}

/// `φ([C_i]) = e_i − e_{i+1}`, `φ([C_n]) = e_n`, with flag positions mapped
/// back to line ids.
pub fn phi(cc: &ChamberClasses, modulus: u64, cochain: &[u64]) -> OneForm {
    let n = cc.n();
    let md = Modulus::new(modulus);
    let mut by_pos = vec![0u64; n];
    for (i, &x) in cochain.iter().enumerate() {
        by_pos[i] = md.add(by_pos[i], x);
        if i + 1 < n {
            by_pos[i + 1] = md.sub(by_pos[i + 1], x);
        }
    }
    let mut w = OneForm::zero(modulus, &(1..=n).collect::<Vec<_>>());
    for (pos, &id) in cc.flag.order.iter().enumerate() {
        w.set(id, by_pos[pos]);
    }
    w
}

/// `Ker ∇ / Im ∇` at degree 1, with representatives pushed through φ.
pub fn h1_chambers(cc: &ChamberClasses, eta: &OneForm) -> Result<H1, ComplexError> {
    let m = eta.modulus();
    let d1 = nabla1(cc, eta)?;
    let d0 = nabla0(cc, eta)?;
    let ker = zmod::kernel_generators(&d1);
    let image = ModMatrix::from_residue_rows(m, cc.n(), vec![d0]);
    let invariants = zmod::quotient_invariants(&ker, &image).map_err(|_| ComplexError::NotAComplex)?;
    let representatives = invariants.generators.iter().map(|g| phi(cc, m, g)).collect();
    Ok(H1 { invariants, representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::chambers::{classify_chambers, Flag};

    #[test]
    fn phi_examples() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let n = cc.n();
        let last = phi(&cc, 5, &[0, 0, 1]);
        assert_eq!(last.coeff(cc.flag.order[n - 1]), 1);
        assert_eq!(last.support().len(), 1);
        let tele = phi(&cc, 5, &[1, 1, 1]);
        assert_eq!(tele.support(), vec![cc.flag.order[0]]);
        let c2 = phi(&cc, 2, &[0, 1, 0]);
        let mut s = c2.support();
        s.sort_unstable();
        let mut want = vec![cc.flag.order[1], cc.flag.order[2]];
        want.sort_unstable();
        assert_eq!(s, want);
    }

    #[test]
    fn zero_eta_gives_zero_maps() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, -1, 0)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let z = OneForm::zero(7, &[1, 2, 3]);
        assert!(nabla0(&cc, &z).unwrap().iter().all(|&x| x == 0));
        assert!(nabla1(&cc, &z).unwrap().is_zero());
    }

    #[test]
    fn diagonal_prefix_parities() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (1, 0, 1), (1, 0, 2), (0, 1, 0), (0, 1, 1), (0, 1, 2)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let d0 = nabla0(&cc, &OneForm::diagonal(2, &a.ids())).unwrap();
        assert_eq!(d0, vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn pencil_complex_is_exact_for_diagonal() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, -1, 0)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let h = h1_chambers(&cc, &OneForm::diagonal(2, &a.ids())).unwrap();
        assert!(h.invariants.is_trivial());
    }
}
