//! Nets and multinets on projective incidences: verification, 3-nets from
//! F₃ cocycles, the F₂ cocycles of a 4-net, the non-separation check at
//! quadruple points, exhaustive net search, and 4-net refutation.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::incidence::{Block, Incidence, LineId};
use crate::os::{h1_coned, mod2_subset_check, OneForm, OsError, Subarrangement, SubsetReport};
use crate::zmod::{howell_form, ModMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("classes do not partition the lines: {0}")]
    NotAPartition(String),
    #[error("the incidence is not projective: some pair of lines does not meet")]
    NotProjective,
    #[error("{n} lines cannot split into {k} classes")]
    BadLineCount { n: usize, k: usize },
    #[error("only 3 or 4 classes are supported, got {0}")]
    UnsupportedK(usize),
    #[error("point {lines:?} has multiplicity {}, a multiple of 3 above 3", lines.len())]
    BadMultiplicity { lines: Vec<LineId> },
    #[error("subset is not an F₂ cocycle ({} local violations)", .0.violations.len())]
    NotACocycle(SubsetReport),
    #[error("all lines pass through one point; the arrangement is not essential")]
    NotEssential,
    #[error("no cyclic order is known at point {0:?}")]
    MissingCyclicOrder(Vec<LineId>),
    #[error("the partition is not a 4-net")]
    NotAFourNet(Box<MultinetReport>),
    #[error(transparent)]
    Form(#[from] OsError),
}

/// `k` classes of `d` lines and the base locus `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetPartition {
    pub classes: Vec<Vec<LineId>>,
    /// Points meeting every class, as sorted line sets.
    pub base: Vec<Vec<LineId>>,
    pub d: usize,
}

impl NetPartition {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// `classes` with each class sorted and the classes ordered by smallest id.
    pub fn canonical(classes: &[Vec<LineId>]) -> Vec<Vec<LineId>> {
        let mut out: Vec<Vec<LineId>> = classes
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum NetViolation {
    TooFewClasses { k: usize },
    /// Condition (i).
    UnequalSizes { sizes: Vec<usize> },
    /// `|X| ≤ 1`.
    DegenerateBase { size: usize },
    /// Condition (ii): lines from different classes meet off the base locus.
    CrossPairOffBase { pair: (LineId, LineId), point: Vec<LineId> },
    /// Condition (iii): per-class counts at a base point differ.
    Unbalanced { point: Vec<LineId>, counts: Vec<usize> },
    /// Condition (iv): a class is disconnected through non-base points.
    Disconnected { class: usize, components: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultinetReport {
    pub is_multinet: bool,
    /// A multinet with one line per class through every base point.
    pub is_net: bool,
    pub violations: Vec<NetViolation>,
    pub partition: NetPartition,
}

fn class_map(inc: &Incidence, classes: &[Vec<LineId>]) -> Result<Vec<usize>, NetError> {
    let mut of = vec![usize::MAX; inc.n()];
    for (c, class) in classes.iter().enumerate() {
        for &id in class {
            let i = inc.index_of(id).ok_or_else(|| NetError::NotAPartition(format!("unknown line {id}")))?;
            if of[i] != usize::MAX {
                return Err(NetError::NotAPartition(format!("{} is in two classes", inc.name(id))));
            }
            of[i] = c;
        }
    }
    if let Some(i) = of.iter().position(|&c| c == usize::MAX) {
        return Err(NetError::NotAPartition(format!("{} is in no class", inc.name(inc.ids()[i]))));
    }
    Ok(of)
}

fn counts_at(inc: &Incidence, of: &[usize], k: usize, b: &Block) -> Vec<usize> {
    let mut counts = vec![0; k];
    for &id in &b.lines {
        counts[of[inc.index_of(id).unwrap()]] += 1;
    }
    counts
}

/// Checks the reduced multinet conditions (i)–(iv) with `X` taken to be the
/// points meeting every class.
pub fn verify_multinet(inc: &Incidence, classes: &[Vec<LineId>]) -> Result<MultinetReport, NetError> {
    let of = class_map(inc, classes)?;
    let k = classes.len();
    let mut violations = Vec::new();
    if k < 3 {
        violations.push(NetViolation::TooFewClasses { k });
    }
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    if sizes.windows(2).any(|w| w[0] != w[1]) {
        violations.push(NetViolation::UnequalSizes { sizes: sizes.clone() });
    }
    let mut base = Vec::new();
    let mut is_base = vec![false; inc.blocks().len()];
    let mut single = true;
    for (bi, b) in inc.blocks().iter().enumerate() {
        let counts = counts_at(inc, &of, k, b);
        if counts.iter().all(|&c| c > 0) {
            is_base[bi] = true;
            base.push(b.lines.clone());
            if counts.windows(2).any(|w| w[0] != w[1]) {
                violations.push(NetViolation::Unbalanced { point: b.lines.clone(), counts: counts.clone() });
            }
            single &= counts.iter().all(|&c| c == 1);
        }
    }
    if base.len() <= 1 {
        violations.push(NetViolation::DegenerateBase { size: base.len() });
    }
    let ids = inc.ids();
    for (i, &p) in ids.iter().enumerate() {
        for (j, &q) in ids.iter().enumerate().skip(i + 1) {
            if of[i] == of[j] {
                continue;
            }
            let at = inc.blocks().iter().position(|b| b.contains(p) && b.contains(q));
            if !at.is_some_and(|bi| is_base[bi]) {
                let point = at.map(|bi| inc.blocks()[bi].lines.clone()).unwrap_or_default();
                violations.push(NetViolation::CrossPairOffBase { pair: (p, q), point });
            }
        }
    }
    // connectivity inside each class through non-base points
    for (c, class) in classes.iter().enumerate() {
        let mut uf = UnionFind::new(inc.n());
        for (bi, b) in inc.blocks().iter().enumerate() {
            if is_base[bi] {
                continue;
            }
            let members: Vec<usize> =
                b.lines.iter().map(|&id| inc.index_of(id).unwrap()).filter(|&i| of[i] == c).collect();
            for w in members.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let roots: BTreeSet<usize> = class.iter().map(|&id| uf.find(inc.index_of(id).unwrap())).collect();
        if roots.len() > 1 {
            violations.push(NetViolation::Disconnected { class: c + 1, components: roots.len() });
        }
    }
    let is_multinet = violations.is_empty();
    let d = sizes.first().copied().unwrap_or(0);
    Ok(MultinetReport {
        is_multinet,
        is_net: is_multinet && single,
        violations,
        partition: NetPartition { classes: classes.to_vec(), base, d },
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeNets {
    /// `H¹` of the coned complex over F₃ at the diagonal.
    pub h1_rank: usize,
    /// `3^rank − 1`.
    pub nonzero_classes: usize,
    pub nets: Vec<NetPartition>,
    /// Classes whose value partition failed verification.
    pub rejected: Vec<MultinetReport>,
}

impl ThreeNets {
    /// `|nonzero classes| = 2·|3-nets|`.
    pub fn count_identity_holds(&self) -> bool {
        self.nonzero_classes == 2 * self.nets.len()
    }
}

/// 3-nets from nonzero classes of `H¹` over F₃ at the diagonal, one per
/// pair `{ω, 2ω}`, with lines grouped by coefficient value.
pub fn extract_3nets(inc: &Incidence) -> Result<ThreeNets, NetError> {
    if !inc.is_projective_plane_closed() {
        return Err(NetError::NotProjective);
    }
    if inc.n() % 3 != 0 {
        return Err(NetError::BadLineCount { n: inc.n(), k: 3 });
    }
    if let Some(b) = inc.blocks().iter().find(|b| b.multiplicity() % 3 == 0 && b.multiplicity() > 3) {
        return Err(NetError::BadMultiplicity { lines: b.lines.clone() });
    }
    let h = h1_coned(inc, &OneForm::diagonal(3, inc.ids()))?;
    let r = h.representatives.len();
    assert!(r <= 12, "H¹ too large to enumerate");
    let total = 3usize.pow(r as u32);
    let mut nets = Vec::new();
    let mut rejected = Vec::new();
    for code in 1..total {
        let digits: Vec<u64> = (0..r).map(|i| (code / 3usize.pow(i as u32) % 3) as u64).collect();
        if digits.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut omega = OneForm::zero(3, inc.ids());
        for (g, &c) in h.representatives.iter().zip(&digits) {
            omega = omega.add(&g.scale(c))?;
        }
        let classes: Vec<Vec<LineId>> = (0..3)
            .map(|v| inc.ids().iter().copied().filter(|&id| omega.coeff(id) == v).collect::<Vec<_>>())
            .filter(|c: &Vec<LineId>| !c.is_empty())
            .collect();
        let classes = NetPartition::canonical(&classes);
        let report = verify_multinet(inc, &classes)?;
        if report.is_net {
            nets.push(report.partition);
        } else {
            rejected.push(report);
        }
    }
    nets.sort_by(|a, b| a.classes.cmp(&b.classes));
    Ok(ThreeNets { h1_rank: r, nonzero_classes: total - 1, nets, rejected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourNetCocycles {
    pub s12: Subarrangement,
    pub s13: Subarrangement,
    pub s14: Subarrangement,
    /// Each `S_1j` passes the mod-2 subset test.
    pub all_cocycles: bool,
    /// `e(S_12) + e(S_13) + e(S_14) = η̃₀` over F₂.
    pub sums_to_diagonal: bool,
    /// F₂-rank of the span of the three after quotienting by `η̃₀`.
    pub rank_mod_diagonal: usize,
}

fn union_sorted(a: &[LineId], b: &[LineId]) -> Vec<LineId> {
    let mut s: Vec<LineId> = a.iter().chain(b).copied().collect();
    s.sort_unstable();
    s
}

/// The three F₂ cocycles `A_1 ∪ A_j` of a 4-net.
pub fn fournet_cocycles(inc: &Incidence, classes: &[Vec<LineId>]) -> Result<FourNetCocycles, NetError> {
    let report = verify_multinet(inc, classes)?;
    if !report.is_net || classes.len() != 4 {
        return Err(NetError::NotAFourNet(Box::new(report)));
    }
    let s: Vec<Subarrangement> = (1..4).map(|j| union_sorted(&classes[0], &classes[j])).collect();
    let mut all_cocycles = true;
    for sub in &s {
        all_cocycles &= mod2_subset_check(inc, sub)?.passes;
    }
    let vec_of = |sub: &[LineId]| -> Vec<u64> { inc.ids().iter().map(|id| sub.contains(id) as u64).collect() };
    let rows: Vec<Vec<u64>> = s.iter().map(|x| vec_of(x)).collect();
    let sum: Vec<u64> = (0..inc.n()).map(|i| rows.iter().map(|r| r[i]).sum::<u64>() % 2).collect();
    let sums_to_diagonal = sum.iter().all(|&x| x == 1);
    let mut with_diag = rows.clone();
    with_diag.push(vec![1; inc.n()]);
    let rank = howell_form(&ModMatrix::from_residue_rows(2, inc.n(), with_diag)).rank();
    let mut it = s.into_iter();
    Ok(FourNetCocycles {
        s12: it.next().unwrap(),
        s13: it.next().unwrap(),
        s14: it.next().unwrap(),
        all_cocycles,
        sums_to_diagonal,
        rank_mod_diagonal: rank - 1,
    })
}

/// Local picture at a quadruple point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCase {
    /// No selected line.
    Empty,
    /// All four selected.
    Full,
    /// Two selected lines, consecutive in the cyclic order.
    Adjacent,
    /// Two selected lines separated by unselected ones.
    Separated,
}

impl LocalCase {
    pub fn numeral(self) -> &'static str {
        match self {
            LocalCase::Empty => "i",
            LocalCase::Full => "ii",
            LocalCase::Adjacent => "iii",
            LocalCase::Separated => "iv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonSepEntry {
    pub point: Vec<LineId>,
    pub cyclic: Vec<LineId>,
    pub selected: Vec<LineId>,
    pub case: LocalCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonSepReport {
    /// One entry per quadruple point with exactly two selected lines.
    pub entries: Vec<NonSepEntry>,
    /// Quadruple points with no selected line, and with all four selected.
    pub empty_points: usize,
    pub full_points: usize,
}

impl NonSepReport {
    pub fn separated(&self) -> Vec<&NonSepEntry> {
        self.entries.iter().filter(|e| e.case == LocalCase::Separated).collect()
    }

    pub fn holds(&self) -> bool {
        self.separated().is_empty()
    }
}

/// Classifies every quadruple point by how `subset` meets it. `subset` must
/// be an F₂ cocycle and the arrangement must not be a pencil.
pub fn non_separation_check(inc: &Incidence, subset: &[LineId]) -> Result<NonSepReport, NetError> {
    let cocycle = mod2_subset_check(inc, subset)?;
    if !cocycle.passes {
        return Err(NetError::NotACocycle(cocycle));
    }
    if inc.is_pencil() {
        return Err(NetError::NotEssential);
    }
    let mut report = NonSepReport { entries: Vec::new(), empty_points: 0, full_points: 0 };
    for b in inc.blocks().iter().filter(|b| b.multiplicity() == 4) {
        let selected: Vec<LineId> = b.lines.iter().copied().filter(|id| subset.contains(id)).collect();
        match selected.len() {
            0 => report.empty_points += 1,
            4 => report.full_points += 1,
            _ => {
                let cyclic = b.cyclic.clone().ok_or_else(|| NetError::MissingCyclicOrder(b.lines.clone()))?;
                let case = if b.adjacent(selected[0], selected[1]) == Some(true) {
                    LocalCase::Adjacent
                } else {
                    LocalCase::Separated
                };
                report.entries.push(NonSepEntry { point: b.lines.clone(), cyclic, selected, case });
            }
        }
    }
    Ok(report)
}

/// All `k`-nets of a projective incidence, classes canonically ordered.
/// Empty when `k` does not divide the number of lines.
///
/// Points whose multiplicity is not `k` force their lines into one class;
/// `k`-fold points are either single-class or meet every class once.
pub fn search_nets(inc: &Incidence, k: usize) -> Result<Vec<NetPartition>, NetError> {
    if !(3..=4).contains(&k) {
        return Err(NetError::UnsupportedK(k));
    }
    if !inc.is_projective_plane_closed() {
        return Err(NetError::NotProjective);
    }
    let n = inc.n();
    if n == 0 || n % k != 0 {
        return Ok(Vec::new());
    }
    let d = n / k;
    let idx = |id: LineId| inc.index_of(id).unwrap();
    let mut uf = UnionFind::new(n);
    for b in inc.blocks().iter().filter(|b| b.multiplicity() != k) {
        for w in b.lines.windows(2) {
            uf.union(idx(w[0]), idx(w[1]));
        }
    }
    // a k-fold point with two lines already tied together is single-class
    loop {
        let mut changed = false;
        for b in inc.blocks().iter().filter(|b| b.multiplicity() == k) {
            let roots: BTreeSet<usize> = b.lines.iter().map(|&id| uf.find(idx(id))).collect();
            if roots.len() < k {
                for w in b.lines.windows(2) {
                    changed |= uf.union(idx(w[0]), idx(w[1]));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = uf.find(i);
        if comp_of[r] == usize::MAX {
            comp_of[r] = comps.len();
            comps.push(Vec::new());
        }
        comp_of[i] = comp_of[r];
        comps[comp_of[i]].push(i);
    }
    if comps.iter().any(|c| c.len() > d) {
        return Ok(Vec::new());
    }
    // rainbow candidates: k-fold points spread over k components
    let constraints: Vec<Vec<usize>> = inc
        .blocks()
        .iter()
        .filter(|b| b.multiplicity() == k)
        .map(|b| b.lines.iter().map(|&id| comp_of[idx(id)]).collect::<Vec<_>>())
        .filter(|cs: &Vec<usize>| cs.iter().collect::<BTreeSet<_>>().len() == k)
        .collect();
    let mut touching = vec![Vec::new(); comps.len()];
    for (ci, cs) in constraints.iter().enumerate() {
        for &c in cs {
            touching[c].push(ci);
        }
    }
    let mut search = Search {
        k,
        d,
        comps: &comps,
        constraints: &constraints,
        touching: &touching,
        color: vec![usize::MAX; comps.len()],
        size: vec![0; k],
        found: Vec::new(),
    };
    search.go(0, 0);
    let mut out = Vec::new();
    for colors in search.found {
        let mut classes = vec![Vec::new(); k];
        for (c, members) in comps.iter().enumerate() {
            for &i in members {
                classes[colors[c]].push(inc.ids()[i]);
            }
        }
        let classes = NetPartition::canonical(&classes);
        let report = verify_multinet(inc, &classes)?;
        if report.is_net {
            out.push(report.partition);
        }
    }
    out.sort_by(|a, b| a.classes.cmp(&b.classes));
    Ok(out)
}

struct Search<'a> {
    k: usize,
    d: usize,
    comps: &'a [Vec<usize>],
    constraints: &'a [Vec<usize>],
    touching: &'a [Vec<usize>],
    color: Vec<usize>,
    size: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn consistent(&self, c: usize) -> bool {
        self.touching[c].iter().all(|&ci| {
            let seen: Vec<usize> =
                self.constraints[ci].iter().map(|&x| self.color[x]).filter(|&x| x != usize::MAX).collect();
            let distinct = seen.iter().collect::<BTreeSet<_>>().len();
            distinct == 1 || distinct == seen.len()
        })
    }

    fn go(&mut self, c: usize, used: usize) {
        if c == self.comps.len() {
            if used == self.k && self.size.iter().all(|&s| s == self.d) {
                self.found.push(self.color.clone());
            }
            return;
        }
        let len = self.comps[c].len();
        for col in 0..(used + 1).min(self.k) {
            if self.size[col] + len > self.d {
                continue;
            }
            self.color[c] = col;
            self.size[col] += len;
            if self.consistent(c) {
                self.go(c + 1, used.max(col + 1));
            }
            self.size[col] -= len;
            self.color[c] = usize::MAX;
        }
    }
}

/// Why a claimed 4-net cannot exist on a real arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    NotAPartition { reason: String },
    /// The partition fails the net conditions.
    NotANet { violations: Vec<NetViolation> },
    /// `A_1 ∪ A_3` is not an F₂ cocycle.
    NotACocycle { subset: Subarrangement, report: SubsetReport },
    /// With classes relabeled along the cyclic order at `point`, `A_1 ∪ A_3`
    /// is a cocycle whose two lines at `point` are separated.
    Separated { classes: Vec<Vec<LineId>>, subset: Subarrangement, witness: NonSepEntry },
}

/// A certificate against a claimed 4-net; never accepts one.
pub fn refute_4net(inc: &Incidence, classes: &[Vec<LineId>]) -> Result<Certificate, NetError> {
    let report = match verify_multinet(inc, classes) {
        Ok(r) => r,
        Err(NetError::NotAPartition(reason)) => return Ok(Certificate::NotAPartition { reason }),
        Err(e) => return Err(e),
    };
    let mut violations = report.violations.clone();
    if classes.len() != 4 {
        violations.insert(0, NetViolation::TooFewClasses { k: classes.len() });
    }
    if !report.is_net || classes.len() != 4 {
        if violations.is_empty() {
            // a multinet with a base point of multiplicity above 4
            let point = report.partition.base.iter().find(|p| p.len() != 4).cloned().unwrap_or_default();
            let of = class_map(inc, classes)?;
            let b = inc.blocks().iter().find(|b| b.lines == point).expect("base point is a block");
            violations.push(NetViolation::Unbalanced { point, counts: counts_at(inc, &of, 4, b) });
        }
        return Ok(Certificate::NotANet { violations });
    }
    let x = inc
        .blocks()
        .iter()
        .find(|b| b.multiplicity() == 4 && report.partition.base.contains(&b.lines))
        .expect("a net has base points");
    let cyclic = x.cyclic.clone().ok_or_else(|| NetError::MissingCyclicOrder(x.lines.clone()))?;
    let of = class_map(inc, classes)?;
    let relabeled: Vec<Vec<LineId>> = cyclic.iter().map(|&id| classes[of[inc.index_of(id).unwrap()]].clone()).collect();
    let subset = union_sorted(&relabeled[0], &relabeled[2]);
    let check = mod2_subset_check(inc, &subset)?;
    if !check.passes {
        return Ok(Certificate::NotACocycle { subset, report: check });
    }
    let ns = non_separation_check(inc, &subset)?;
    let witness = ns
        .entries
        .into_iter()
        .find(|e| e.point == x.lines)
        .expect("opposite lines at the chosen point");
    debug_assert_eq!(witness.case, LocalCase::Separated);
    Ok(Certificate::Separated { classes: relabeled, subset, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{hesse_classes, hesse_configuration};

    /// Complete quadrilateral: lines 0..5, triple points 012, 034, 135, 245.
    fn quad() -> Incidence {
        let ids: Vec<LineId> = (0..6).collect();
        let names = ids.iter().map(|i| format!("H{i}")).collect();
        let tri = |l: [LineId; 3]| Block { lines: l.to_vec(), cyclic: Some(l.to_vec()) };
        let dbl = |l: [LineId; 2]| Block { lines: l.to_vec(), cyclic: Some(l.to_vec()) };
        let blocks = vec![tri([0, 1, 2]), tri([0, 3, 4]), tri([1, 3, 5]), tri([2, 4, 5]), dbl([0, 5]), dbl([1, 4]), dbl([2, 3])];
        Incidence::new(ids, names, blocks).unwrap()
    }

    #[test]
    fn quadrilateral_net() {
        let q = quad();
        let r = verify_multinet(&q, &[vec![0, 5], vec![1, 4], vec![2, 3]]).unwrap();
        assert!(r.is_net, "{:?}", r.violations);
        assert_eq!(r.partition.base.len(), 4);
        let bad = verify_multinet(&q, &[vec![0, 4], vec![1, 5], vec![2, 3]]).unwrap();
        assert!(!bad.is_multinet);
        assert!(bad.violations.iter().any(|v| matches!(v, NetViolation::CrossPairOffBase { .. })));
    }

    #[test]
    fn one_class_is_rejected() {
        let r = verify_multinet(&quad(), &[(0..6).collect()]).unwrap();
        assert!(r.violations.contains(&NetViolation::TooFewClasses { k: 1 }));
    }

    #[test]
    fn partition_errors() {
        assert!(matches!(verify_multinet(&quad(), &[vec![0, 1], vec![1, 2]]), Err(NetError::NotAPartition(_))));
        assert!(matches!(verify_multinet(&quad(), &[vec![0, 1, 2]]), Err(NetError::NotAPartition(_))));
    }

    #[test]
    fn quadrilateral_three_nets_agree() {
        let q = quad();
        let ex = extract_3nets(&q).unwrap();
        assert_eq!(ex.nets.len(), 1);
        assert!(ex.count_identity_holds());
        let found = search_nets(&q, 3).unwrap();
        assert_eq!(found, ex.nets);
        assert_eq!(found[0].classes, vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
        assert!(search_nets(&q, 4).unwrap().is_empty());
        assert_eq!(search_nets(&q, 5), Err(NetError::UnsupportedK(5)));
    }

    #[test]
    fn hesse_is_a_four_net() {
        let h = hesse_configuration();
        let nets = search_nets(&h, 4).unwrap();
        assert_eq!(nets.len(), 1);
        assert_eq!(nets[0].classes, hesse_classes());
        let fc = fournet_cocycles(&h, &hesse_classes()).unwrap();
        assert!(fc.all_cocycles && fc.sums_to_diagonal);
        assert_eq!(fc.rank_mod_diagonal, 2);
    }

    #[test]
    fn hesse_refuted_by_separation() {
        let h = hesse_configuration();
        match refute_4net(&h, &hesse_classes()).unwrap() {
            Certificate::Separated { witness, subset, .. } => {
                assert_eq!(witness.case, LocalCase::Separated);
                assert_eq!(subset.len(), 6);
            }
            c => panic!("unexpected certificate {c:?}"),
        }
    }

    #[test]
    fn nonsep_trivial_subsets() {
        let h = hesse_configuration();
        let r = non_separation_check(&h, &[]).unwrap();
        assert!(r.entries.is_empty());
        assert_eq!(r.empty_points, 9);
        let all: Vec<LineId> = h.ids().to_vec();
        let r = non_separation_check(&h, &all).unwrap();
        assert!(r.entries.is_empty());
        assert_eq!(r.full_points, 9);
    }

    #[test]
    fn pencil_is_not_essential() {
        let ids: Vec<LineId> = (0..4).collect();
        let names = ids.iter().map(|i| format!("H{i}")).collect();
        let b = Block { lines: ids.clone(), cyclic: Some(ids.clone()) };
        let p = Incidence::new(ids, names, vec![b]).unwrap();
        assert_eq!(non_separation_check(&p, &[0, 2]).unwrap_err(), NetError::NotEssential);
        assert!(search_nets(&p, 4).unwrap().is_empty());
    }

    #[test]
    fn non_cocycle_is_refused() {
        assert!(matches!(non_separation_check(&quad(), &[0]), Err(NetError::NotACocycle(_))));
    }

    #[test]
    fn bad_multiplicity_blocks_extraction() {
        let ids: Vec<LineId> = (0..6).collect();
        let names = ids.iter().map(|i| format!("H{i}")).collect();
        let b = Block { lines: ids.clone(), cyclic: None };
        let p = Incidence::new(ids, names, vec![b]).unwrap();
        assert!(matches!(extract_3nets(&p), Err(NetError::BadMultiplicity { .. })));
    }
}
