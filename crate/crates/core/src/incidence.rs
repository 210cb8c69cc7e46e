//! Combinatorial incidence data: which lines pass through which multiple
//! points, plus the cyclic order of the lines at each point when known.
//!
//! Everything algebraic (Orlik–Solomon blocks, cocycle tests, nets) runs on
//! an [`Incidence`], so non-realizable configurations can be fed in directly.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

pub type LineId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Sorted line ids through the point.
    pub lines: Vec<LineId>,
    /// Cyclic order of `lines` around the point, starting at the smallest id.
    pub cyclic: Option<Vec<LineId>>,
}

impl Block {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains(&self, id: LineId) -> bool {
        self.lines.binary_search(&id).is_ok()
    }

    /// Whether `p` and `q` are consecutive in the cyclic order.
    pub fn adjacent(&self, p: LineId, q: LineId) -> Option<bool> {
        let cyc = self.cyclic.as_ref()?;
        let n = cyc.len();
        let i = cyc.iter().position(|&x| x == p)?;
        let j = cyc.iter().position(|&x| x == q)?;
        Some((i + 1) % n == j || (j + 1) % n == i)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("line {0} appears twice")]
    DuplicateLine(LineId),
    #[error("block {0:?} mentions an unknown line")]
    UnknownLine(Vec<LineId>),
    #[error("block {0:?} has fewer than two lines")]
    TrivialBlock(Vec<LineId>),
    #[error("lines {0} and {1} meet in more than one block")]
    RepeatedPair(LineId, LineId),
    #[error("cyclic order {0:?} is not a permutation of its block")]
    BadCyclicOrder(Vec<LineId>),
}

/// Lines and multiple points of a planar (affine or projective) configuration.
///
/// Each pair of lines meets in at most one block. For a projective plane
/// configuration every pair meets exactly once; for an affine one, parallel
/// pairs do not meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    ids: Vec<LineId>,
    names: Vec<String>,
    blocks: Vec<Block>,
}

impl Incidence {
    pub fn new(
        ids: Vec<LineId>,
        names: Vec<String>,
        blocks: Vec<Block>,
    ) -> Result<Self, IncidenceError> {
        assert_eq!(ids.len(), names.len());
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by_key(|&i| ids[i]);
        let sorted_ids: Vec<LineId> = order.iter().map(|&i| ids[i]).collect();
        for w in sorted_ids.windows(2) {
            if w[0] == w[1] {
                return Err(IncidenceError::DuplicateLine(w[0]));
            }
        }
        let names = order.iter().map(|&i| names[i].clone()).collect();
        let mut seen = BTreeSet::new();
        let mut clean = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.lines.sort_unstable();
            b.lines.dedup();
            if b.lines.len() < 2 {
                return Err(IncidenceError::TrivialBlock(b.lines));
            }
            if b.lines.iter().any(|l| sorted_ids.binary_search(l).is_err()) {
                return Err(IncidenceError::UnknownLine(b.lines));
            }
            for (i, &p) in b.lines.iter().enumerate() {
                for &q in &b.lines[i + 1..] {
                    if !seen.insert((p, q)) {
                        return Err(IncidenceError::RepeatedPair(p, q));
                    }
                }
            }
            if let Some(c) = &b.cyclic {
                let mut s = c.clone();
                s.sort_unstable();
                if s != b.lines {
                    return Err(IncidenceError::BadCyclicOrder(c.clone()));
                }
                b.cyclic = Some(rotate_to_min(c));
            }
            clean.push(b);
        }
        clean.sort_by(|x, y| x.lines.cmp(&y.lines));
        Ok(Incidence { ids: sorted_ids, names, blocks: clean })
    }

    /// Sorted line ids.
    pub fn ids(&self) -> &[LineId] {
        &self.ids
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: LineId) -> &str {
        &self.names[self.index_of(id).expect("unknown line id")]
    }

    pub fn id_by_name(&self, name: &str) -> Option<LineId> {
        self.names.iter().position(|n| n == name).map(|i| self.ids[i])
    }

    /// Position of `id` in [`Self::ids`].
    pub fn index_of(&self, id: LineId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    /// Blocks in lexicographic order of their line sets.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_of_pair(&self, p: LineId, q: LineId) -> Option<&Block> {
        self.blocks.iter().find(|b| b.contains(p) && b.contains(q))
    }

    /// Σ (mult − 1) over all blocks: the rank of the degree-2 part.
    pub fn rank_two(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity() - 1).sum()
    }

    /// Whether every pair of lines meets in some block.
    pub fn is_projective_plane_closed(&self) -> bool {
        let pairs: usize = self.blocks.iter().map(|b| b.lines.len() * (b.lines.len() - 1) / 2).sum();
        pairs == self.ids.len() * (self.ids.len().saturating_sub(1)) / 2
    }

    /// Whether all lines go through one common block (a pencil).
    pub fn is_pencil(&self) -> bool {
        self.blocks.iter().any(|b| b.lines.len() == self.ids.len())
    }

    pub fn max_multiplicity(&self) -> usize {
        self.blocks.iter().map(Block::multiplicity).max().unwrap_or(0)
    }
}

fn rotate_to_min(c: &[LineId]) -> Vec<LineId> {
    let k = c.iter().enumerate().min_by_key(|&(_, v)| v).map(|(i, _)| i).unwrap_or(0);
    let mut out = c[k..].to_vec();
    out.extend_from_slice(&c[..k]);
    out
}

/// Two cyclic sequences are equal up to rotation and reversal.
pub fn same_cyclic_order(a: &[LineId], b: &[LineId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    let rev: Vec<LineId> = b.iter().rev().copied().collect();
    (0..n).any(|s| (0..n).all(|i| a[i] == b[(i + s) % n]) || (0..n).all(|i| a[i] == rev[(i + s) % n]))
}

/// The Hesse configuration: the 12 lines of the affine plane over F₃ with
/// its 9 points of multiplicity 4, lines grouped by direction into 4
/// classes of 3. Pairs of parallel lines are given a common double point
/// (at infinity), which makes it a projective (4,3)-net incidence.
///
/// This has no real realization. Cyclic orders are synthetic: at every
/// quadruple point the four directions are placed in direction order, which
/// puts classes 1 and 3 opposite each other.
pub fn hesse_configuration() -> Incidence {
    // direction classes: x = c, y = c, y = x + c, y = 2x + c over F₃
    let dirs: [(u8, u8); 4] = [(1, 0), (0, 1), (1, 2), (1, 1)];
    let mut lines = Vec::new();
    for (k, &(a, b)) in dirs.iter().enumerate() {
        for c in 0..3u8 {
            lines.push((k, a, b, c));
        }
    }
    let ids: Vec<LineId> = (1..=12).collect();
    let names = ids.iter().map(|i| format!("L{i}")).collect();
    let mut blocks = Vec::new();
    for x in 0..3u8 {
        for y in 0..3u8 {
            let through: Vec<LineId> = lines
                .iter()
                .enumerate()
                .filter(|(_, &(_, a, b, c))| (a * x + b * y) % 3 == c)
                .map(|(i, _)| i + 1)
                .collect();
            // one line per class, in class order
            blocks.push(Block { lines: through.clone(), cyclic: Some(through) });
        }
    }
    for k in 0..4 {
        let class: Vec<LineId> = (0..3).map(|c| 3 * k + c + 1).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                blocks.push(Block { lines: vec![class[i], class[j]], cyclic: None });
            }
        }
    }
    Incidence::new(ids, names, blocks).expect("Hesse configuration is consistent")
}

/// The (4,3)-net classes of [`hesse_configuration`], by direction.
pub fn hesse_classes() -> Vec<Vec<LineId>> {
    (0..4).map(|k| (0..3).map(|c| 3 * k + c + 1).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hesse_counts() {
        let h = hesse_configuration();
        assert_eq!(h.n(), 12);
        assert_eq!(h.blocks().iter().filter(|b| b.multiplicity() == 4).count(), 9);
        assert_eq!(h.blocks().iter().filter(|b| b.multiplicity() == 2).count(), 12);
        assert!(h.is_projective_plane_closed());
    }

    #[test]
    fn cyclic_equality_ignores_rotation_and_reversal() {
        assert!(same_cyclic_order(&[1, 2, 3, 4], &[3, 4, 1, 2]));
        assert!(same_cyclic_order(&[1, 2, 3, 4], &[4, 3, 2, 1]));
        assert!(!same_cyclic_order(&[1, 2, 3, 4], &[1, 3, 2, 4]));
    }

    #[test]
    fn repeated_pair_is_rejected() {
        let r = Incidence::new(
            vec![1, 2, 3],
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Block { lines: vec![1, 2], cyclic: None },
                Block { lines: vec![1, 2, 3], cyclic: None },
            ],
        );
        assert_eq!(r, Err(IncidenceError::RepeatedPair(1, 2)));
    }

    #[test]
    fn adjacency_in_four_cycle() {
        let b = Block { lines: vec![1, 2, 3, 4], cyclic: Some(vec![1, 3, 2, 4]) };
        assert_eq!(b.adjacent(1, 3), Some(true));
        assert_eq!(b.adjacent(1, 2), Some(false));
        assert_eq!(b.adjacent(4, 1), Some(true));
    }
}
