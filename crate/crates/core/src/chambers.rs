//! Chambers of an affine arrangement, generic flags, and the flag
//! classification of chambers into ch⁰, ch¹ and ch².

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{ser_scalar, Arrangement, FlagHint};
use crate::incidence::LineId;
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Point {
    #[serde(serialize_with = "ser_scalar")]
    pub x: ExactScalar,
    #[serde(serialize_with = "ser_scalar")]
    pub y: ExactScalar,
}

impl Point {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    fn along(&self, v: &Point, s: &ExactScalar) -> Point {
        Point { x: &self.x + &(s * &v.x), y: &self.y + &(s * &v.y) }
    }
}

/// A connected component of the complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// `signs[i]` is true when the chamber lies where `a·x + b·y > c` for line `i + 1`.
    pub signs: Vec<bool>,
    pub witness: Point,
}

/// Raw sign vector of a point on no line.
pub fn sign_vector(a: &Arrangement, p: &Point) -> Option<Vec<bool>> {
    a.lines()
        .iter()
        .map(|l| {
            let v = l.eval(&p.x, &p.y);
            (!v.is_zero()).then(|| v.is_positive())
        })
        .collect()
}

/// Lines separating two chambers, by id.
pub fn separation(c: &Chamber, d: &Chamber) -> Vec<LineId> {
    c.signs.iter().zip(&d.signs).enumerate().filter(|(_, (s, t))| s != t).map(|(i, _)| i + 1).collect()
}

/// `1 + n + Σ (mult − 1)` over affine multiple points.
pub fn expected_chamber_count(a: &Arrangement) -> usize {
    1 + a.n() + a.affine_points().iter().map(|p| p.multiplicity() - 1).sum::<usize>()
}

fn sample_between(sorted: &[ExactScalar]) -> Vec<ExactScalar> {
    let Some(first) = sorted.first() else { return vec![ExactScalar::zero()] };
    let one = ExactScalar::one();
    let mut out = vec![first - &one];
    out.extend(sorted.windows(2).map(|w| w[0].midpoint(&w[1])));
    out.push(sorted.last().expect("nonempty") + &one);
    out
}

/// All chambers, sorted by raw sign vector, each with an interior point.
///
/// The plane is cut into vertical slabs at the abscissae of all vertices
/// and vertical lines. Inside an open slab no two lines cross, so sampling
/// one vertical section per slab between consecutive lines meets every
/// chamber.
pub fn chambers(a: &Arrangement) -> Vec<Chamber> {
    let mut xs: Vec<ExactScalar> = a
        .affine_points()
        .into_iter()
        .map(|p| match p.location {
            crate::arrangement::Location::Affine { x, .. } => x,
            crate::arrangement::Location::Infinity { .. } => unreachable!("affine points only"),
        })
        .chain(a.lines().iter().filter(|l| l.is_vertical()).map(|l| l.c.clone()))
        .collect();
    xs.sort();
    xs.dedup();
    let mut found: BTreeMap<Vec<bool>, Point> = BTreeMap::new();
    for x in sample_between(&xs) {
        let mut ys: Vec<ExactScalar> = a.lines().iter().filter(|l| !l.is_vertical()).map(|l| l.y_at(&x)).collect();
        ys.sort();
        ys.dedup();
        for y in sample_between(&ys) {
            let p = Point::new(x.clone(), y);
            let s = sign_vector(a, &p).expect("samples avoid all lines");
            found.entry(s).or_insert(p);
        }
    }
    found.into_iter().map(|(signs, witness)| Chamber { signs, witness }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum FlagError {
    #[error("genericity: F0 lies on line {0}")]
    F0OnLine(LineId),
    #[error("genericity: F1 is parallel to line {0}")]
    ParallelToLine(LineId),
    #[error("genericity: F1 meets lines {0} and {1} in the same point")]
    CoincidentCrossings(LineId, LineId),
    #[error("near to infinity: line {0} crosses F1 at or before F0")]
    CrossingBeforeF0(LineId),
    #[error("near to infinity: F1 passes through or separates intersection points")]
    SeparatesIntersections,
    #[error("flag direction is zero")]
    ZeroDirection,
}

fn affine_vertices(a: &Arrangement) -> Vec<Point> {
    a.affine_points()
        .into_iter()
        .filter_map(|p| match p.location {
            crate::arrangement::Location::Affine { x, y } => Some(Point::new(x, y)),
            crate::arrangement::Location::Infinity { .. } => None,
        })
        .collect()
}

/// A point `F0` on an oriented line `F1`, generic for the arrangement and
/// beyond all its intersection points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub f0: Point,
    pub direction: Point,
    /// `order[k]` is the id of the line met (k+1)-th along F1, i.e. `H_{k+1}`.
    pub order: Vec<LineId>,
    /// Parameters along `F1` of the crossings, in flag order.
    #[serde(skip)]
    pub crossings: Vec<ExactScalar>,
}

impl Flag {
    /// Check all flag conditions and compute the induced numbering.
    pub fn validate(a: &Arrangement, f0: Point, direction: Point) -> Result<Flag, FlagError> {
        if direction.x.is_zero() && direction.y.is_zero() {
            return Err(FlagError::ZeroDirection);
        }
        let mut crossings = Vec::with_capacity(a.n());
        for l in a.lines() {
            let v = l.eval(&f0.x, &f0.y);
            if v.is_zero() {
                return Err(FlagError::F0OnLine(l.id));
            }
            let den = &(&l.a * &direction.x) + &(&l.b * &direction.y);
            if den.is_zero() {
                return Err(FlagError::ParallelToLine(l.id));
            }
            let s = &(-&v) / &den;
            if !s.is_positive() {
                return Err(FlagError::CrossingBeforeF0(l.id));
            }
            crossings.push((s, l.id));
        }
        crossings.sort();
        for w in crossings.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(FlagError::CoincidentCrossings(w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
            }
        }
        let mut side = None;
        for p in a.affine_points() {
            let crate::arrangement::Location::Affine { x, y } = p.location else { continue };
            let c = &(&direction.x * &(&y - &f0.y)) - &(&direction.y * &(&x - &f0.x));
            if c.is_zero() {
                return Err(FlagError::SeparatesIntersections);
            }
            match side {
                None => side = Some(c.is_positive()),
                Some(s) if s != c.is_positive() => return Err(FlagError::SeparatesIntersections),
                _ => {}
            }
        }
        let (crossings, order) = crossings.into_iter().unzip();
        Ok(Flag { f0, direction, order, crossings })
    }

    pub fn from_hint(a: &Arrangement, h: &FlagHint) -> Result<Flag, FlagError> {
        Self::validate(a, Point::new(h.x0.clone(), h.y0.clone()), Point::new(h.dx.clone(), h.dy.clone()))
    }

    /// Deterministic construction: direction `(1, k)` for the least `k ≥ 1`
    /// avoiding every line direction and every segment between
    /// intersection points, then [`Flag::along`].
    pub fn construct(a: &Arrangement) -> Flag {
        let pts = affine_vertices(a);
        let mut k = 1i64;
        loop {
            let v = Point::ints(1, k);
            let hits_segment = pts.iter().enumerate().any(|(i, p)| {
                pts[i + 1..].iter().any(|q| (&(&(&q.y - &p.y) * &v.x) - &(&v.y * &(&q.x - &p.x))).is_zero())
            });
            if !hits_segment {
                if let Some(f) = Self::along(a, v) {
                    return f;
                }
            }
            k += 1;
        }
    }

    /// The flag with direction `v`: `F1` one unit (in the normal
    /// coordinate) beyond the farthest intersection point, `F0` one unit
    /// before the first crossing. `None` when `v` is parallel to a line.
    pub fn along(a: &Arrangement, v: Point) -> Option<Flag> {
        if a.lines().iter().any(|l| (&(&l.a * &v.x) + &(&l.b * &v.y)).is_zero()) {
            return None;
        }
        let pts = affine_vertices(a);
        let w = Point::new(-&v.y, v.x.clone());
        let ww = &(&w.x * &w.x) + &(&w.y * &w.y);
        let t = pts
            .iter()
            .map(|p| &(&w.x * &p.x) + &(&w.y * &p.y))
            .min()
            .map(|m| &m - &ExactScalar::one())
            .unwrap_or_else(ExactScalar::zero);
        let origin = Point::new(&(&t * &w.x) / &ww, &(&t * &w.y) / &ww);
        let first = a
            .lines()
            .iter()
            .map(|l| {
                let num = &l.c - &(&(&l.a * &origin.x) + &(&l.b * &origin.y));
                &num / &(&(&l.a * &v.x) + &(&l.b * &v.y))
            })
            .min()
            .unwrap_or_else(ExactScalar::zero);
        let f0 = origin.along(&v, &(&first - &ExactScalar::one()));
        Some(Self::validate(a, f0, v).expect("constructed flag satisfies all conditions"))
    }

    /// The hinted flag if any, else the constructed one.
    pub fn choose(a: &Arrangement, hint: Option<&FlagHint>) -> Result<Flag, FlagError> {
        match hint {
            Some(h) => Self::from_hint(a, h),
            None => Ok(Self::construct(a)),
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// 1-based flag position of a line id.
    pub fn position(&self, id: LineId) -> usize {
        self.order.iter().position(|&x| x == id).expect("line in flag") + 1
    }

    /// Point on F1 at parameter `s`.
    pub fn point_at(&self, s: &ExactScalar) -> Point {
        self.f0.along(&self.direction, s)
    }
}

/// A chamber with its sign vector relative to the flag: `sigma[k]` is true
/// when the chamber is on the side of `H_{k+1}` not containing F0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagChamber {
    pub chamber: Chamber,
    pub sigma: Vec<bool>,
}

impl FlagChamber {
    /// Flag positions (1-based) separating two chambers.
    pub fn separating_positions(&self, other: &FlagChamber) -> Vec<usize> {
        self.sigma.iter().zip(&other.sigma).enumerate().filter(|(_, (s, t))| s != t).map(|(i, _)| i + 1).collect()
    }

    /// Whether the chamber lies on the far side of `H_pos` (1-based).
    pub fn plus(&self, pos: usize) -> bool {
        self.sigma[pos - 1]
    }
}

/// ch⁰ = {C_0}, ch¹ = (C_1, …, C_n), ch² = (D_1, …, D_b).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberClasses {
    pub flag: Flag,
    pub c0: FlagChamber,
    pub c: Vec<FlagChamber>,
    pub d: Vec<FlagChamber>,
}

/// Split the chambers by their incidence with the flag. ch² is ordered
/// lexicographically by flag-relative sign vector, `−` before `+`.
pub fn classify_chambers(a: &Arrangement, flag: &Flag) -> ChamberClasses {
    let base = sign_vector(a, &flag.f0).expect("F0 is on no line");
    let to_flag = |ch: Chamber| {
        let sigma = flag.order.iter().map(|&id| ch.signs[id - 1] != base[id - 1]).collect();
        FlagChamber { chamber: ch, sigma }
    };
    let mut all: Vec<FlagChamber> = chambers(a).into_iter().map(to_flag).collect();
    let n = flag.n();
    let one = ExactScalar::one();
    let mut take = |sigma: Vec<bool>, witness: Point| -> FlagChamber {
        let i = all.iter().position(|c| c.sigma == sigma).expect("every F1 segment lies in a chamber");
        let mut c = all.swap_remove(i);
        c.chamber.witness = witness;
        c
    };
    let c0 = take(vec![false; n], flag.f0.clone());
    let mut c = Vec::with_capacity(n);
    for i in 1..=n {
        let s = if i < n { flag.crossings[i - 1].midpoint(&flag.crossings[i]) } else { &flag.crossings[n - 1] + &one };
        let sigma = (0..n).map(|k| k < i).collect();
        c.push(take(sigma, flag.point_at(&s)));
    }
    all.sort_by(|x, y| x.sigma.cmp(&y.sigma));
    ChamberClasses { flag: flag.clone(), c0, c, d: all }
}

impl ChamberClasses {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// Index in ch² of the chamber containing `p`, if any.
    pub fn locate_d(&self, a: &Arrangement, p: &Point) -> Option<usize> {
        let s = sign_vector(a, p)?;
        self.d.iter().position(|d| d.chamber.signs == s)
    }

    /// Reorder ch² so that `D_{j+1}` is the chamber containing `points[j]`.
    pub fn relabel_d(&mut self, a: &Arrangement, points: &[Point]) -> Option<()> {
        if points.len() != self.d.len() {
            return None;
        }
        let idx: Vec<usize> = points.iter().map(|p| self.locate_d(a, p)).collect::<Option<_>>()?;
        let mut seen = idx.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != idx.len() {
            return None;
        }
        self.d = idx.into_iter().map(|i| self.d[i].clone()).collect();
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(lines: &[(i64, i64, i64)]) -> Arrangement {
        Arrangement::from_integer_lines(lines).unwrap()
    }

    #[test]
    fn parallel_pair_has_three_chambers() {
        let a = arr(&[(1, 0, 0), (1, 0, 1)]);
        assert_eq!(chambers(&a).len(), 3);
        let f = Flag::construct(&a);
        let cc = classify_chambers(&a, &f);
        // F1 crosses both lines, so the middle strip is C_1 and ch² is empty
        assert_eq!((cc.c.len(), cc.d.len()), (2, 0));
    }

    #[test]
    fn triangle_and_pencil_counts() {
        let tri = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        assert_eq!(chambers(&tri).len(), 7);
        let pencil = arr(&[(1, 0, 0), (0, 1, 0), (1, -1, 0)]);
        assert_eq!(chambers(&pencil).len(), 6);
        let cc = classify_chambers(&pencil, &Flag::construct(&pencil));
        assert_eq!(cc.d.len(), 2);
    }

    #[test]
    fn single_line_and_empty_poset() {
        let a = arr(&[(0, 1, 3)]);
        assert_eq!(chambers(&a).len(), 2);
        let cc = classify_chambers(&a, &Flag::construct(&a));
        assert!(cc.d.is_empty());
    }

    #[test]
    fn hint_on_a_line_fails_genericity() {
        let tri = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        let r = Flag::validate(&tri, Point::ints(0, 5), Point::ints(1, 0));
        assert_eq!(r, Err(FlagError::F0OnLine(1)));
    }

    #[test]
    fn constructed_flag_revalidates() {
        let tri = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        let f = Flag::construct(&tri);
        let g = Flag::validate(&tri, f.f0.clone(), f.direction.clone()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn separation_of_initial_segments() {
        let a = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, -1, 3)]);
        let cc = classify_chambers(&a, &Flag::construct(&a));
        for (i, ci) in cc.c.iter().enumerate() {
            let sep = separation(&cc.c0.chamber, &ci.chamber);
            let mut expect: Vec<LineId> = cc.flag.order[..=i].to_vec();
            expect.sort_unstable();
            assert_eq!(sep, expect);
        }
    }
}
