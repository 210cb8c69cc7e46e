//! Linear algebra over ℤ/m for any modulus `m ≥ 2`.
//!
//! Row spaces are canonicalized with the Howell normal form, which is what
//! makes kernels and quotients well defined when `m` is not prime. Vectors
//! are rows and matrices act on the right: the kernel of `M` is
//! `{x : x·M = 0}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Residue = u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row {0} of the submodule is not contained in the ambient row space")]
    NotASubmodule(usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("column count mismatch: {0} vs {1}")]
    ShapeMismatch(usize, usize),
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` over the integers.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs with increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Arithmetic helpers for a fixed modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        Modulus(m)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0)
    }

    pub fn reduce(self, x: i128) -> Residue {
        x.rem_euclid(self.0 as i128) as u64
    }

    pub fn add(self, a: Residue, b: Residue) -> Residue {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        self.add(a, self.neg(b))
    }

    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn is_unit(self, a: Residue) -> bool {
        gcd(a % self.0, self.0) == 1
    }

    pub fn inverse(self, a: Residue) -> Option<Residue> {
        let (g, s, _) = xgcd(a as i128, self.0 as i128);
        (g == 1).then(|| self.reduce(s))
    }

    /// A unit `c` with `c·a ≡ gcd(a, m)`, so that `c·a` is the canonical
    /// generator of the ideal `(a)`.
    fn normalizing_unit(self, a: Residue) -> Residue {
        let m = self.0;
        let g = gcd(a, m);
        let m_red = m / g;
        if m_red == 1 {
            return 1;
        }
        let c0 = Modulus(m_red).inverse((a / g) % m_red).expect("coprime by construction");
        let mut c = c0;
        while gcd(c, m) != 1 {
            c += m_red;
        }
        c
    }
}

/// Dense matrix over ℤ/m.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModMatrix {
    modulus: Modulus,
    cols: usize,
    rows: Vec<Vec<Residue>>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        ModMatrix { modulus: Modulus::new(modulus), cols, rows: vec![vec![0; cols]; rows] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.rows[i][i] = 1 % modulus;
        }
        m
    }

    /// Build from signed integer rows, reducing every entry.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: u64, cols: usize, rows: &[R]) -> Self {
        let md = Modulus::new(modulus);
        let rows = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), cols, "ragged matrix");
                r.iter().map(|&x| md.reduce(x as i128)).collect()
            })
            .collect();
        ModMatrix { modulus: md, cols, rows }
    }

    pub fn from_residue_rows(modulus: u64, cols: usize, rows: Vec<Vec<Residue>>) -> Self {
        let md = Modulus::new(modulus);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x % md.0).collect()).collect();
        ModMatrix { modulus: md, cols, rows }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.0
    }

    pub fn ring(&self) -> Modulus {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Residue] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Residue]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn get(&self, i: usize, j: usize) -> Residue {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Residue) {
        self.rows[i][j] = v % self.modulus.0;
    }

    pub fn push_row(&mut self, row: Vec<Residue>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row.into_iter().map(|x| x % self.modulus.0).collect());
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn to_rows(&self) -> Vec<Vec<Residue>> {
        self.rows.clone()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &ModMatrix) -> Result<ModMatrix, LinalgError> {
        self.check_compatible(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(ModMatrix { modulus: self.modulus, cols: self.cols, rows })
    }

    fn check_compatible(&self, other: &ModMatrix) -> Result<(), LinalgError> {
        if self.modulus != other.modulus {
            return Err(LinalgError::ModulusMismatch(self.modulus.0, other.modulus.0));
        }
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(self.cols, other.cols));
        }
        Ok(())
    }

    /// `x·M` for a row vector `x`.
    pub fn left_apply(&self, x: &[Residue]) -> Vec<Residue> {
        assert_eq!(x.len(), self.rows.len());
        let md = self.modulus;
        let mut out = vec![0; self.cols];
        for (xi, row) in x.iter().zip(&self.rows) {
            if *xi == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = md.add(*o, md.mul(*xi, r));
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows.len());
        let rows = self.rows.iter().map(|r| other.left_apply(r)).collect();
        ModMatrix { modulus: self.modulus, cols: other.cols, rows }
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix mod {} ({}x{})", self.modulus.0, self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

fn row_is_zero(r: &[Residue]) -> bool {
    r.iter().all(|&x| x == 0)
}

fn scale_row(md: Modulus, r: &[Residue], c: Residue) -> Vec<Residue> {
    r.iter().map(|&x| md.mul(x, c)).collect()
}

/// `a ← a - c·b`
fn sub_multiple(md: Modulus, a: &mut [Residue], b: &[Residue], c: Residue) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x = md.sub(*x, md.mul(c, y));
    }
}

/// Unimodular 2×2 combination of rows `p` and `r` at column `col`:
/// returns `(p', r')` with `p'[col] = gcd`, `r'[col] = 0`.
fn combine_rows(
    md: Modulus,
    p: &[Residue],
    r: &[Residue],
    col: usize,
) -> (Vec<Residue>, Vec<Residue>) {
    let a = p[col] as i128;
    let b = r[col] as i128;
    let (g, s, t) = xgcd(a, b);
    let u = md.reduce(-(b / g));
    let v = md.reduce(a / g);
    let s = md.reduce(s);
    let t = md.reduce(t);
    let new_p = p.iter().zip(r).map(|(&x, &y)| md.add(md.mul(s, x), md.mul(t, y))).collect();
    let new_r = p.iter().zip(r).map(|(&x, &y)| md.add(md.mul(u, x), md.mul(v, y))).collect();
    (new_p, new_r)
}

/// Howell normal form of a row space.
///
/// Invariants: rows are nonzero and in echelon form; each pivot divides the
/// modulus; entries above a pivot lie in `[0, pivot)`; and for every pivot
/// column `j`, the rows with pivot beyond `j` span every element of the row
/// space vanishing in columns `0..=j`. Equal row spaces have equal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HowellForm {
    matrix: ModMatrix,
    pivots: Vec<usize>,
}

impl HowellForm {
    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ModMatrix {
        self.matrix
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Number of elements of the row space, when it fits in a `u128`.
    pub fn row_space_size(&self) -> Option<u128> {
        let m = self.matrix.modulus();
        self.pivots.iter().enumerate().try_fold(1u128, |acc, (i, &c)| {
            acc.checked_mul((m / self.matrix.get(i, c)) as u128)
        })
    }

    /// Greedy reduction; returns the remainder, which is zero iff `v` lies in
    /// the row space.
    pub fn reduce(&self, v: &[Residue]) -> Vec<Residue> {
        let md = self.matrix.ring();
        let mut v: Vec<Residue> = v.iter().map(|&x| x % md.get()).collect();
        for (i, &c) in self.pivots.iter().enumerate() {
            let g = self.matrix.get(i, c);
            if v[c] % g == 0 {
                let q = v[c] / g;
                sub_multiple(md, &mut v, self.matrix.row(i), q);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Residue]) -> bool {
        row_is_zero(&self.reduce(v))
    }
}

/// Howell normal form of the row space of `m`.
pub fn howell_form(m: &ModMatrix) -> HowellForm {
    let md = m.ring();
    let modulus = md.get();
    let mut pending: Vec<Vec<Residue>> =
        m.rows.iter().filter(|r| !row_is_zero(r)).cloned().collect();
    let mut basis: Vec<Vec<Residue>> = Vec::new();
    let mut pivots = Vec::new();

    for col in 0..m.cols {
        let mut pivot: Option<Vec<Residue>> = None;
        let mut rest = Vec::with_capacity(pending.len());
        for row in pending.drain(..) {
            if row[col] == 0 {
                rest.push(row);
                continue;
            }
            pivot = Some(match pivot.take() {
                None => row,
                Some(p) => {
                    let (p, r) = combine_rows(md, &p, &row, col);
                    if !row_is_zero(&r) {
                        rest.push(r);
                    }
                    p
                }
            });
        }
        pending = rest;
        if let Some(p) = pivot {
            let p = scale_row(md, &p, md.normalizing_unit(p[col]));
            let g = p[col];
            // (m/g)·p vanishes at `col` and must stay in play for later columns
            let ann = scale_row(md, &p, modulus / g);
            if !row_is_zero(&ann) {
                pending.push(ann);
            }
            basis.push(p);
            pivots.push(col);
        }
    }

    for k in 0..basis.len() {
        let col = pivots[k];
        let g = basis[k][col];
        let (above, below) = basis.split_at_mut(k);
        for r in above.iter_mut() {
            let q = r[col] / g;
            sub_multiple(md, r, &below[0], q);
        }
    }

    HowellForm { matrix: ModMatrix { modulus: md, cols: m.cols, rows: basis }, pivots }
}

/// Presentation-free description of a finite ℤ/m-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub modulus: u64,
    /// Invariant factors `d_1 | d_2 | … | d_k`, each `> 1` and dividing the modulus.
    pub factors: Vec<u64>,
    /// One representative vector per invariant factor, of additive order `d_i`
    /// in the module.
    pub generators: Vec<Vec<Residue>>,
}

impl ModuleInvariants {
    pub fn trivial(modulus: u64) -> Self {
        ModuleInvariants { modulus, factors: Vec::new(), generators: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Whether the module is free, i.e. every factor equals the modulus.
    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|&d| d == self.modulus)
    }

    /// Compare only the isomorphism type.
    pub fn same_type(&self, other: &ModuleInvariants) -> bool {
        self.modulus == other.modulus && self.factors == other.factors
    }
}

impl fmt::Display for ModuleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        if is_prime(self.modulus) {
            let k = self.factors.len();
            return if k == 1 {
                write!(f, "F{}", self.modulus)
            } else {
                write!(f, "F{}^{}", self.modulus, k)
            };
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let d = self.factors[i];
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == d {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{}", j - i) });
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Kernel `{x : x·M = 0}`: canonical (Howell) generators and invariants.
pub fn kernel(m: &ModMatrix) -> (ModMatrix, ModuleInvariants) {
    let gens = kernel_generators(m);
    let inv = submodule_invariants(&gens);
    (gens, inv)
}

/// Howell-canonical generators of the left kernel of `m`.
pub fn kernel_generators(m: &ModMatrix) -> ModMatrix {
    let md = m.ring();
    let r = m.nrows();
    let c = m.ncols();
    let rows: Vec<Vec<Residue>> = (0..r)
        .map(|i| {
            let mut row = m.rows[i].clone();
            row.extend((0..r).map(|j| if i == j { 1 % md.get() } else { 0 }));
            row
        })
        .collect();
    let aug = ModMatrix { modulus: md, cols: c + r, rows };
    let h = howell_form(&aug);
    let gens: Vec<Vec<Residue>> = h
        .pivots
        .iter()
        .enumerate()
        .filter(|&(_, &p)| p >= c)
        .map(|(i, _)| h.matrix.rows[i][c..].to_vec())
        .collect();
    howell_form(&ModMatrix { modulus: md, cols: r, rows: gens }).into_matrix()
}

/// Invariants of the row space of `gens`.
pub fn submodule_invariants(gens: &ModMatrix) -> ModuleInvariants {
    let zero = ModMatrix::zeros(gens.modulus(), 0, gens.ncols());
    quotient_invariants(gens, &zero).expect("zero is a submodule")
}

/// Invariants of `rowspace(big) / rowspace(sub)` with representative
/// generators taken from `rowspace(big)`.
pub fn quotient_invariants(
    big: &ModMatrix,
    sub: &ModMatrix,
) -> Result<ModuleInvariants, LinalgError> {
    big.check_compatible(sub)?;
    let md = big.ring();
    let modulus = md.get();
    let hb = howell_form(big);
    for (i, r) in sub.rows().enumerate() {
        if !hb.contains(r) {
            return Err(LinalgError::NotASubmodule(i));
        }
    }
    let k = hb.rank();
    if k == 0 {
        return Ok(ModuleInvariants::trivial(modulus));
    }
    let hs = howell_form(sub);

    // relations y with y·B ∈ rowspace(sub)
    let stacked = hb.matrix.stack(&hs.matrix)?;
    let rel = kernel_generators(&stacked);
    let relations: Vec<Vec<Residue>> = rel.rows().map(|r| r[..k].to_vec()).collect();

    // cyclic pieces (order, generator) in the ambient coordinates
    let pieces: Vec<(u64, Vec<Residue>)> = cyclic_pieces(md, k, &relations)
        .into_iter()
        .map(|(o, y)| (o, hb.matrix.left_apply(&y)))
        .collect();

    Ok(canonicalize(md, pieces))
}

/// Cyclic decomposition of `(Z/m)^k / span(rows)`: for each prime power
/// `q = p^e ∥ m`, diagonalize over the local ring `Z/q`, then lift the
/// generators back with the CRT idempotent. Returns `(order, coordinates)`
/// for every nontrivial piece.
fn cyclic_pieces(md: Modulus, k: usize, rows: &[Vec<Residue>]) -> Vec<(u64, Vec<Residue>)> {
    let m = md.get();
    let mut out = Vec::new();
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        let mq = Modulus::new(q);
        let local: Vec<Vec<Residue>> = rows.iter().map(|r| r.iter().map(|&x| x % q).collect()).collect();
        let cof = m / q;
        let idem = md.mul(cof % m, mq.inverse(cof % q).expect("cofactor is prime to q"));
        for (order, y) in local_smith(mq, p, k, local) {
            if order > 1 {
                out.push((order, y.iter().map(|&x| md.mul(x, idem)).collect()));
            }
        }
    }
    out
}

fn valuation(p: u64, mut x: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Smith reduction over `Z/p^e`. The pivot of least valuation divides every
/// remaining entry, so one elimination pass per pivot suffices. Returns the
/// order and generator coordinates of each of the `k` cyclic factors.
fn local_smith(mq: Modulus, p: u64, k: usize, mut a: Vec<Vec<Residue>>) -> Vec<(u64, Vec<Residue>)> {
    let q = mq.get();
    // rows of `qinv` are generator coordinates; the column op
    // `col_j −= c·col_t` acts on them as `qinv[t] += c·qinv[j]`
    let mut qinv: Vec<Vec<Residue>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let nrows = a.len();
    let mut t = 0;
    while t < k.min(nrows) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.map_or(true, |(bv, _, _)| valuation(p, x) < bv) {
                    best = Some((valuation(p, x), i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            qinv.swap(t, pj);
        }
        let pv = p.pow(v);
        let uinv = mq.inverse(a[t][t] / pv).expect("unit part");
        for i in t + 1..nrows {
            if a[i][t] != 0 {
                let c = mq.mul(a[i][t] / pv, uinv);
                let pivot_row = a[t].clone();
                for (x, &y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = mq.sub(*x, mq.mul(c, y));
                }
            }
        }
        for j in t + 1..k {
            if a[t][j] != 0 {
                let c = mq.mul(a[t][j] / pv, uinv);
                for row in a.iter_mut() {
                    row[j] = mq.sub(row[j], mq.mul(c, row[t]));
                }
                let add: Vec<Residue> = qinv[j].iter().map(|&x| mq.mul(c, x)).collect();
                for (x, y) in qinv[t].iter_mut().zip(add) {
                    *x = mq.add(*x, y);
                }
            }
        }
        t += 1;
    }
    (0..k)
        .map(|i| {
            let order = if i < t { gcd(a[i][i], q) } else { q };
            (order, qinv[i].clone())
        })
        .collect()
}

/// Turn arbitrary cyclic pieces into invariant-factor form.
fn canonicalize(md: Modulus, pieces: Vec<(u64, Vec<Residue>)>) -> ModuleInvariants {
    let modulus = md.get();
    let Some(dim) = pieces.first().map(|(_, g)| g.len()) else {
        return ModuleInvariants::trivial(modulus);
    };
    // primary components per prime: (p^e, generator)
    let mut by_prime: Vec<(u64, Vec<(u64, Vec<Residue>)>)> = Vec::new();
    for (order, g) in pieces {
        for (p, e) in factorize(order) {
            let pe = p.pow(e);
            let comp = scale_row(md, &g, order / pe);
            match by_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, v)) => v.push((pe, comp)),
                None => by_prime.push((p, vec![(pe, comp)])),
            }
        }
    }
    for (_, v) in by_prime.iter_mut() {
        v.sort_by(|a, b| b.0.cmp(&a.0));
    }
    let count = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(count);
    let mut generators = Vec::with_capacity(count);
    for idx in 0..count {
        let mut d = 1u64;
        let mut g = vec![0; dim];
        for (_, v) in &by_prime {
            if let Some((pe, comp)) = v.get(idx) {
                d *= pe;
                for (x, &y) in g.iter_mut().zip(comp) {
                    *x = md.add(*x, y);
                }
            }
        }
        factors.push(d);
        generators.push(g);
    }
    factors.reverse();
    generators.reverse();
    ModuleInvariants { modulus, factors, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_vectors(m: u64, n: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Brute-force row space by closure under addition of generators.
    fn brute_span(m: &ModMatrix) -> std::collections::BTreeSet<Vec<u64>> {
        let md = m.ring();
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; m.ncols()]);
        loop {
            let mut grew = false;
            let current: Vec<_> = set.iter().cloned().collect();
            for v in &current {
                for r in m.rows() {
                    let w: Vec<u64> = v.iter().zip(r).map(|(&a, &b)| md.add(a, b)).collect();
                    grew |= set.insert(w);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn zero_matrix_has_empty_howell_form() {
        let h = howell_form(&ModMatrix::zeros(6, 3, 4));
        assert_eq!(h.rank(), 0);
        assert_eq!(h.row_space_size(), Some(1));
    }

    #[test]
    fn single_two_mod_eight_is_normalized() {
        let h = howell_form(&ModMatrix::from_rows(8, 1, &[[2]]));
        assert_eq!(h.matrix().to_rows(), vec![vec![2]]);
        let h = howell_form(&ModMatrix::from_rows(8, 1, &[[6]]));
        assert_eq!(h.matrix().to_rows(), vec![vec![2]]);
    }

    #[test]
    fn howell_property_adds_annihilator_row() {
        // rowspace of [2 1] over Z/4 contains 2·[2 1] = [0 2]
        let h = howell_form(&ModMatrix::from_rows(4, 2, &[[2, 1]]));
        assert_eq!(h.matrix().to_rows(), vec![vec![2, 1], vec![0, 2]]);
        assert!(h.contains(&[0, 2]));
        assert!(!h.contains(&[0, 1]));
        assert_eq!(h.row_space_size(), Some(4));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let (g, inv) = kernel(&ModMatrix::identity(5, 3));
        assert_eq!(g.nrows(), 0);
        assert!(inv.is_trivial());
    }

    #[test]
    fn kernel_of_two_mod_eight() {
        // exhaustive: x·2 ≡ 0 mod 8 iff x ∈ {0, 4}
        let brute: Vec<u64> = (0..8).filter(|x| (2 * x) % 8 == 0).collect();
        assert_eq!(brute, vec![0, 4]);
        let (g, inv) = kernel(&ModMatrix::from_rows(8, 1, &[[2]]));
        assert_eq!(g.to_rows(), vec![vec![4]]);
        assert_eq!(inv.factors, vec![2]);
    }

    #[test]
    fn kernel_of_all_ones_mod_two() {
        let m = ModMatrix::from_rows(2, 2, &[[1, 1], [1, 1]]);
        let brute: Vec<Vec<u64>> =
            all_vectors(2, 2).into_iter().filter(|x| m.left_apply(x).iter().all(|&v| v == 0)).collect();
        assert_eq!(brute, vec![vec![0, 0], vec![1, 1]]);
        let (g, inv) = kernel(&m);
        assert_eq!(g.to_rows(), vec![vec![1, 1]]);
        assert_eq!(inv.to_string(), "F2");
    }

    #[test]
    fn quotient_of_free_by_zero() {
        let big = ModMatrix::identity(3, 2);
        let sub = ModMatrix::zeros(3, 0, 2);
        let q = quotient_invariants(&big, &sub).unwrap();
        assert_eq!(q.factors, vec![3, 3]);
        assert_eq!(q.to_string(), "F3^2");
    }

    #[test]
    fn quotient_by_itself_is_trivial() {
        let big = ModMatrix::from_rows(6, 3, &[[1, 2, 3], [0, 3, 3]]);
        let q = quotient_invariants(&big, &big).unwrap();
        assert!(q.is_trivial());
        assert_eq!(q.to_string(), "0");
    }

    #[test]
    fn quotient_mod_four_counted_by_cosets() {
        let big = ModMatrix::from_rows(4, 2, &[[1, 0], [0, 2]]);
        let sub = ModMatrix::from_rows(4, 2, &[[2, 0]]);
        // coset enumeration over all 16 vectors
        let b = brute_span(&big);
        let s = brute_span(&sub);
        assert_eq!(b.len(), 8);
        assert_eq!(s.len(), 2);
        // exponent of the quotient: smallest e with e·b ∈ S for all b
        let md = Modulus::new(4);
        let exponent = (1..=4)
            .find(|&e| b.iter().all(|v| s.contains(&scale_row(md, v, e))))
            .unwrap();
        assert_eq!(exponent, 2);
        // order 4, exponent 2 ⇒ Z/2 ⊕ Z/2
        let q = quotient_invariants(&big, &sub).unwrap();
        assert_eq!(q.factors, vec![2, 2]);
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn non_submodule_is_rejected() {
        let big = ModMatrix::from_rows(4, 2, &[[2, 0]]);
        let sub = ModMatrix::from_rows(4, 2, &[[1, 0]]);
        assert_eq!(quotient_invariants(&big, &sub), Err(LinalgError::NotASubmodule(0)));
    }

    #[test]
    fn mixed_primes_combine_into_invariant_factors() {
        // Z/6 ⊕ Z/2 inside (Z/12)^2: rows [2 0], [0 6]
        let big = ModMatrix::from_rows(12, 2, &[[2, 0], [0, 6]]);
        let inv = submodule_invariants(&big);
        assert_eq!(inv.factors, vec![2, 6]);
        assert_eq!(inv.to_string(), "Z/2 + Z/6");
    }

    fn arb_matrix(max_m: u64, max_r: usize, max_c: usize) -> impl Strategy<Value = ModMatrix> {
        (2..=max_m, 0..=max_r, 1..=max_c).prop_flat_map(|(m, r, c)| {
            proptest::collection::vec(proptest::collection::vec(0..m, c), r)
                .prop_map(move |rows| ModMatrix::from_residue_rows(m, c, rows))
        })
    }

    /// Additive order of `v` inside the module given by `gens` modulo nothing.
    fn order_of(md: Modulus, v: &[u64]) -> u64 {
        (1..=md.get()).find(|&e| v.iter().all(|&x| md.mul(x, e) == 0)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn howell_is_canonical_and_idempotent(m in arb_matrix(8, 4, 3), seed in any::<u64>()) {
            let h = howell_form(&m);
            prop_assert_eq!(&howell_form(h.matrix()), &h);
            let mut rows = m.to_rows();
            let n = rows.len();
            if n > 1 {
                rows.rotate_left((seed as usize) % n);
                rows.swap(0, n - 1);
            }
            let shuffled = ModMatrix::from_residue_rows(m.modulus(), m.ncols(), rows);
            prop_assert_eq!(&howell_form(&shuffled), &h);
        }

        #[test]
        fn row_space_size_matches_brute_force(m in arb_matrix(8, 3, 3)) {
            let h = howell_form(&m);
            let b = brute_span(&m);
            prop_assert_eq!(h.row_space_size(), Some(b.len() as u128));
            for v in all_vectors(m.modulus(), m.ncols()) {
                prop_assert_eq!(h.contains(&v), b.contains(&v));
            }
        }

        #[test]
        fn kernel_matches_exhaustive_search(m in arb_matrix(6, 3, 3)) {
            let (g, inv) = kernel(&m);
            let brute: std::collections::BTreeSet<Vec<u64>> = all_vectors(m.modulus(), m.nrows())
                .into_iter()
                .filter(|x| m.left_apply(x).iter().all(|&v| v == 0))
                .collect();
            prop_assert_eq!(brute_span(&g), brute.clone());
            prop_assert_eq!(inv.order(), brute.len() as u128);
        }

        #[test]
        fn rank_nullity_over_primes(p in prop::sample::select(vec![2u64, 3, 5, 7]), r in 1usize..4, c in 1usize..4, data in proptest::collection::vec(0u64..7, 16)) {
            let rows: Vec<Vec<u64>> = (0..r).map(|i| (0..c).map(|j| data[i * 4 + j] % p).collect()).collect();
            let m = ModMatrix::from_residue_rows(p, c, rows);
            let rank = howell_form(&m).rank();
            let (_, inv) = kernel(&m);
            prop_assert_eq!(inv.rank() + rank, r);
        }

        #[test]
        fn quotient_order_and_generators(big in arb_matrix(12, 3, 3), pick in proptest::collection::vec(0u64..12, 3)) {
            let md = big.ring();
            // a submodule: one combination of the big rows
            let comb: Vec<u64> = (0..big.nrows()).map(|i| pick[i % 3] % md.get()).collect();
            let sub_row = if big.nrows() == 0 { vec![0; big.ncols()] } else { big.left_apply(&comb) };
            let sub = ModMatrix::from_residue_rows(md.get(), big.ncols(), vec![sub_row]);
            let q = quotient_invariants(&big, &sub).unwrap();
            let nb = howell_form(&big).row_space_size().unwrap();
            let ns = howell_form(&sub).row_space_size().unwrap();
            prop_assert_eq!(q.order(), nb / ns);
            for w in q.factors.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            let hs = howell_form(&sub);
            let hb = howell_form(&big);
            for (d, g) in q.factors.iter().zip(&q.generators) {
                prop_assert!(hb.contains(g));
                // order of the class of g in big/sub is exactly d
                let class_order = (1..=md.get()).find(|&e| hs.contains(&scale_row(md, g, e))).unwrap();
                prop_assert_eq!(class_order, *d);
                prop_assert!(order_of(md, g) % d == 0);
            }
        }

        #[test]
        fn quotient_of_free_module_by_dense_relations(m in prop::sample::select(vec![4u64, 8, 12, 36]), data in proptest::collection::vec(0u64..36, 30)) {
            // dense relation blocks over composite moduli used to stall the reduction
            let md = Modulus::new(m);
            let free = ModMatrix::from_residue_rows(m, 5, (0..5).map(|i| (0..5).map(|j| u64::from(i == j)).collect()).collect());
            let rows: Vec<Vec<u64>> = data.chunks(5).map(|c| c.iter().map(|&x| x % m).collect()).collect();
            let sub = ModMatrix::from_residue_rows(m, 5, rows);
            let q = quotient_invariants(&free, &sub).unwrap();
            let ns = howell_form(&sub).row_space_size().unwrap();
            prop_assert_eq!(q.order() * ns, (m as u128).pow(5));
            let hs = howell_form(&sub);
            for (d, g) in q.factors.iter().zip(&q.generators) {
                let class_order = (1..=m).find(|&e| hs.contains(&scale_row(md, g, e))).unwrap();
                prop_assert_eq!(class_order, *d);
            }
        }
    }
}
