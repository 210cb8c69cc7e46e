//! Bands between consecutive parallel lines, η-resonance, the reduced map
//! `∇̃_η` on resonant bands, and the fast H¹ computation built on it.

use serde::Serialize;
use thiserror::Error;

use crate::chamber_complex::{self, ComplexError};
use crate::chambers::{ChamberClasses, FlagChamber};
use crate::incidence::LineId;
use crate::os::{h1_direct, OneForm, OsError, H1};
use crate::arrangement::Arrangement;
use crate::zmod::{self, is_prime, ModMatrix, Modulus, ModuleInvariants};

/// The strip between `H_i` and `H_{i+1}` when they are parallel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Band {
    /// Flag positions `(i, i + 1)`, 1-based.
    pub positions: (usize, usize),
    /// Line ids of the two walls.
    pub walls: (LineId, LineId),
    /// `U_1 = C_i`, as an index into ch¹.
    pub u1: usize,
    /// `U_2` as an index into ch², or `None` when no line crosses the band
    /// (then the band is a single chamber).
    pub u2: Option<usize>,
    /// Ids of the lines crossing the band, i.e. `Sep(U_1, U_2)`.
    pub crossing: Vec<LineId>,
}

impl Band {
    pub fn length(&self) -> usize {
        self.crossing.len()
    }

    fn contains(&self, d: &FlagChamber) -> bool {
        d.plus(self.positions.0) && !d.plus(self.positions.1)
    }
}

/// One band per pair of flag-consecutive parallel lines.
pub fn bands(a: &Arrangement, cc: &ChamberClasses) -> Vec<Band> {
    let order = &cc.flag.order;
    let n = order.len();
    let mut out = Vec::new();
    for i in 1..n {
        let (l, r) = (a.line(order[i - 1]), a.line(order[i]));
        if !l.is_parallel(r) {
            continue;
        }
        let u1 = &cc.c[i - 1];
        let flip: Vec<bool> = order.iter().map(|&id| !a.line(id).is_parallel(l)).collect();
        let target: Vec<bool> = u1.sigma.iter().zip(&flip).map(|(&s, &f)| s ^ f).collect();
        let u2 = if flip.iter().any(|&f| f) {
            Some(cc.d.iter().position(|d| d.sigma == target).expect("far end of a band is a chamber"))
        } else {
            None
        };
        let mut crossing: Vec<LineId> = order.iter().zip(&flip).filter(|(_, &f)| f).map(|(&id, _)| id).collect();
        crossing.sort_unstable();
        out.push(Band { positions: (i, i + 1), walls: (order[i - 1], order[i]), u1: i - 1, u2, crossing });
    }
    out
}

/// A band together with its resonance status and `∇̃_η` row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandRow {
    pub band: Band,
    /// `Σ_{Sep(U_1, U_2)} a`.
    pub weight: u64,
    pub resonant: bool,
    /// `Σ_{D ⊂ B} (Σ_{Sep(U_1, D)} a)·[D]` over ch².
    pub row: Vec<u64>,
}

/// All bands with their rows; filter on `resonant` for `RB_η`.
pub fn band_rows(a: &Arrangement, cc: &ChamberClasses, eta: &OneForm) -> Result<Vec<BandRow>, OsError> {
    let md = Modulus::new(eta.modulus());
    let coeff_at = |pos: usize| eta.coeff(cc.flag.order[pos - 1]);
    let nabla = chamber_complex::nabla1(cc, eta)?;
    Ok(bands(a, cc)
        .into_iter()
        .map(|band| {
            let weight = band.crossing.iter().fold(0, |s, &id| md.add(s, eta.coeff(id)));
            let u1 = &cc.c[band.u1];
            let row: Vec<u64> = cc
                .d
                .iter()
                .map(|d| {
                    if band.contains(d) {
                        u1.separating_positions(d).into_iter().fold(0, |s, p| md.add(s, coeff_at(p)))
                    } else {
                        0
                    }
                })
                .collect();
            // the same row is −∇_η(U_1)
            debug_assert!(row.iter().zip(nabla.row(band.u1)).all(|(&x, &y)| md.add(x, y) == 0));
            BandRow { band, weight, resonant: weight == 0, row }
        })
        .collect())
}

/// The η-resonant bands with their `∇̃_η` rows.
pub fn resonant_bands(a: &Arrangement, cc: &ChamberClasses, eta: &OneForm) -> Result<Vec<BandRow>, OsError> {
    Ok(band_rows(a, cc, eta)?.into_iter().filter(|b| b.resonant).collect())
}

/// `Ker ∇̃_η` on `R[RB_η]`: Howell-canonical generators (one coefficient per
/// resonant band, in band order) and invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RbKernel {
    pub bands: Vec<BandRow>,
    pub generators: Vec<Vec<u64>>,
    pub invariants: ModuleInvariants,
}

pub fn kernel_rb(a: &Arrangement, cc: &ChamberClasses, eta: &OneForm) -> Result<RbKernel, OsError> {
    let rb = resonant_bands(a, cc, eta)?;
    let rows: Vec<Vec<u64>> = rb.iter().map(|b| b.row.clone()).collect();
    let m = ModMatrix::from_residue_rows(eta.modulus(), cc.d.len(), rows);
    let (gens, invariants) = zmod::kernel(&m);
    Ok(RbKernel { bands: rb, generators: gens.to_rows(), invariants })
}

/// `Ψ: [B] ↦ e_i − e_{i+1}` for a band with walls `(H_i, H_{i+1})`.
pub fn psi(bands: &[Band], n: usize, modulus: u64, v: &[u64]) -> OneForm {
    assert_eq!(bands.len(), v.len());
    let md = Modulus::new(modulus);
    let mut w = OneForm::zero(modulus, &(1..=n).collect::<Vec<_>>());
    for (b, &c) in bands.iter().zip(v) {
        let (l, r) = b.walls;
        w.set(l, md.add(w.coeff(l), c));
        w.set(r, md.sub(w.coeff(r), c));
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RbStatus {
    /// The resonant-band kernel is H¹ (prime modulus, or every band resonant).
    Isomorphic,
    /// Composite modulus with a non-resonant band: the kernel only injects
    /// into H¹.
    InjectiveOnly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RbError {
    #[error("α = Σ a_i = {alpha} is not a unit mod {modulus}")]
    NonUnitAlpha { alpha: u64, modulus: u64 },
    #[error(transparent)]
    Form(#[from] OsError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RbH1 {
    pub status: RbStatus,
    pub kernel: RbKernel,
    /// Ψ of each kernel generator.
    pub representatives: Vec<OneForm>,
    /// Whether the result matches the brute-force H¹ (checked when `Isomorphic`).
    pub agrees_with_direct: Option<bool>,
}

impl RbH1 {
    pub fn invariants(&self) -> &ModuleInvariants {
        &self.kernel.invariants
    }
}

/// H¹ through resonant bands. Requires `α` to be a unit. The answer is
/// exact when the modulus is prime or every band is resonant; otherwise it
/// is reported as a lower bound (`InjectiveOnly`).
pub fn h1_via_rb(a: &Arrangement, cc: &ChamberClasses, eta: &OneForm) -> Result<RbH1, RbError> {
    let m = eta.modulus();
    let alpha = eta.alpha();
    if !Modulus::new(m).is_unit(alpha) {
        return Err(RbError::NonUnitAlpha { alpha, modulus: m });
    }
    let all = band_rows(a, cc, eta)?;
    let status = if is_prime(m) || all.iter().all(|b| b.resonant) {
        RbStatus::Isomorphic
    } else {
        RbStatus::InjectiveOnly
    };
    let kernel = kernel_rb(a, cc, eta)?;
    let rb: Vec<Band> = kernel.bands.iter().map(|b| b.band.clone()).collect();
    let representatives = kernel.invariants.generators.iter().map(|g| psi(&rb, a.n(), m, g)).collect();
    let agrees_with_direct = match status {
        RbStatus::Isomorphic => {
            let direct: H1 = h1_direct(&a.incidence(), eta)?;
            Some(direct.invariants.same_type(&kernel.invariants))
        }
        RbStatus::InjectiveOnly => None,
    };
    Ok(RbH1 { status, kernel, representatives, agrees_with_direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::{classify_chambers, Flag};

    #[test]
    fn no_parallels_no_bands() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        assert!(bands(&a, &cc).is_empty());
        let k = kernel_rb(&a, &cc, &OneForm::diagonal(3, &a.ids())).unwrap();
        assert!(k.invariants.is_trivial());
    }

    #[test]
    fn zero_eta_makes_every_band_resonant() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (1, 0, 1), (0, 1, 0), (1, 1, 5)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let rows = resonant_bands(&a, &cc, &OneForm::zero(4, &a.ids())).unwrap();
        assert_eq!(rows.len(), bands(&a, &cc).len());
        assert!(rows.iter().all(|r| r.row.iter().all(|&x| x == 0)));
    }

    #[test]
    fn band_with_nothing_crossing() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (1, 0, 1)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let b = bands(&a, &cc);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].u2, None);
        assert_eq!(b[0].length(), 0);
    }

    #[test]
    fn even_diagonal_is_not_a_unit() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (1, 0, 1), (0, 1, 0), (0, 1, 1)]).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        let r = h1_via_rb(&a, &cc, &OneForm::diagonal(2, &a.ids()));
        assert_eq!(r.unwrap_err(), RbError::NonUnitAlpha { alpha: 0, modulus: 2 });
    }
}
