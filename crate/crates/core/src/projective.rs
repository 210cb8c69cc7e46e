//! Projective closure of an arrangement: homogeneous functionals, points of
//! the projective plane, cyclic orders of concurrent lines, and deconing.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::incidence::{Block, Incidence, LineId};
use crate::scalar::{ExactScalar, Field};

type Vec3 = [ExactScalar; 3];

/// A line of the projective plane as a functional on `(x, y, z)`, scaled so
/// its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjLine {
    pub id: LineId,
    pub name: String,
    #[serde(serialize_with = "ser_vec3")]
    pub f: Vec3,
}

fn ser_vec3<S: serde::Serializer>(v: &Vec3, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjPoint {
    #[serde(serialize_with = "ser_vec3")]
    pub coords: Vec3,
    pub lines: Vec<LineId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveArrangement {
    field: Field,
    lines: Vec<ProjLine>,
}

fn normalize(v: Vec3) -> Vec3 {
    let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero vector");
    v.map(|x| &x / &lead)
}

fn dot(u: &Vec3, v: &Vec3) -> ExactScalar {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn is_zero3(v: &Vec3) -> bool {
    v.iter().all(ExactScalar::is_zero)
}

/// Inverse of the matrix with the given rows, if invertible.
fn inverse3(rows: &[Vec3; 3]) -> Option<[Vec3; 3]> {
    // columns of the inverse are cross products of rows over the determinant
    let c0 = cross(&rows[1], &rows[2]);
    let c1 = cross(&rows[2], &rows[0]);
    let c2 = cross(&rows[0], &rows[1]);
    let det = dot(&rows[0], &c0);
    if det.is_zero() {
        return None;
    }
    let cols = [c0, c1, c2];
    Some(std::array::from_fn(|i| std::array::from_fn(|j| &cols[j][i] / &det)))
}

impl ProjectiveArrangement {
    pub fn new(field: Field, mut lines: Vec<ProjLine>) -> Self {
        for l in lines.iter_mut() {
            l.f = normalize(l.f.clone());
        }
        lines.sort_by_key(|l| l.id);
        ProjectiveArrangement { field, lines }
    }

    /// The cone: the affine lines with ids `1..=n` and the line at infinity
    /// `H0` with id 0.
    pub fn cone(a: &Arrangement) -> Self {
        // a deconed arrangement may already carry an `H0`
        let name = if a.id_by_name("H0").is_some() { "H0'" } else { "H0" };
        let mut lines = vec![ProjLine {
            id: 0,
            name: name.into(),
            f: [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::one()],
        }];
        lines.extend(Self::from_affine_lines(a).lines);
        ProjectiveArrangement { field: a.field(), lines }
    }

    /// The affine lines alone, seen projectively (ids `1..=n`).
    pub fn from_affine_lines(a: &Arrangement) -> Self {
        let lines = a
            .lines()
            .iter()
            .map(|l| ProjLine { id: l.id, name: l.name.clone(), f: normalize(l.functional()) })
            .collect();
        ProjectiveArrangement { field: a.field(), lines }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn ids(&self) -> Vec<LineId> {
        self.lines.iter().map(|l| l.id).collect()
    }

    pub fn line(&self, id: LineId) -> Option<&ProjLine> {
        self.lines.iter().find(|l| l.id == id)
    }

    pub fn id_by_name(&self, name: &str) -> Option<LineId> {
        self.lines.iter().find(|l| l.name == name).map(|l| l.id)
    }

    /// All points where two or more lines meet, sorted by incident set.
    pub fn points(&self) -> Vec<ProjPoint> {
        let mut by_pt: HashMap<Vec3, Vec<LineId>> = HashMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            for m in &self.lines[i + 1..] {
                let p = cross(&l.f, &m.f);
                if is_zero3(&p) {
                    continue;
                }
                let e = by_pt.entry(normalize(p)).or_default();
                for id in [l.id, m.id] {
                    if !e.contains(&id) {
                        e.push(id);
                    }
                }
            }
        }
        let mut pts: Vec<ProjPoint> = by_pt
            .into_iter()
            .map(|(coords, mut lines)| {
                lines.sort_unstable();
                ProjPoint { coords, lines }
            })
            .collect();
        pts.sort_by(|p, q| p.lines.cmp(&q.lines));
        pts
    }

    /// Lines through `p` in angular order, starting at the smallest id.
    ///
    /// The functionals vanishing at `p` form a plane; each line is a ray
    /// class in it, and the order of those classes around the half-turn is
    /// the cyclic order of the lines at `p` (well defined up to reversal).
    pub fn cyclic_order_at(&self, p: &[ExactScalar]) -> Vec<LineId> {
        let p: Vec3 = [p[0].clone(), p[1].clone(), p[2].clone()];
        // eliminate a coordinate where p is nonzero, preferring z
        let k = if !p[2].is_zero() { 2 } else if !p[1].is_zero() { 1 } else { 0 };
        let (i, j) = match k {
            2 => (0, 1),
            1 => (0, 2),
            _ => (1, 2),
        };
        let mut rays: Vec<(LineId, ExactScalar, ExactScalar)> = self
            .lines
            .iter()
            .filter(|l| dot(&l.f, &p).is_zero())
            .map(|l| {
                let (s, t) = (l.f[i].clone(), l.f[j].clone());
                if t.is_negative() || (t.is_zero() && s.is_negative()) {
                    (l.id, -&s, -&t)
                } else {
                    (l.id, s, t)
                }
            })
            .collect();
        rays.sort_by(|u, v| {
            let c = &(&u.1 * &v.2) - &(&u.2 * &v.1);
            match c.signum() {
                Ordering::Greater => Ordering::Less,
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => Ordering::Equal,
            }
        });
        let ids: Vec<LineId> = rays.into_iter().map(|r| r.0).collect();
        let start = ids.iter().enumerate().min_by_key(|&(_, v)| v).map(|(s, _)| s).unwrap_or(0);
        let mut out = ids[start..].to_vec();
        out.extend_from_slice(&ids[..start]);
        out
    }

    /// Incidence of all projective points, each with its cyclic order.
    pub fn incidence(&self) -> Incidence {
        let blocks = self
            .points()
            .into_iter()
            .map(|p| {
                let cyclic = Some(self.cyclic_order_at(&p.coords));
                Block { lines: p.lines, cyclic }
            })
            .collect();
        Incidence::new(self.ids(), self.lines.iter().map(|l| l.name.clone()).collect(), blocks)
            .expect("geometric incidence is consistent")
    }

    /// The affine arrangement obtained by sending line `id` to infinity.
    ///
    /// The remaining lines keep their names and relative order and are
    /// renumbered `1..=n−1`. Deconing the cone by `H0` returns the original.
    pub fn decone(&self, id: LineId) -> Option<Arrangement> {
        let fi = &self.line(id)?.f;
        let e = |k: usize| -> Vec3 { std::array::from_fn(|t| if t == k { ExactScalar::one() } else { ExactScalar::zero() }) };
        let tinv = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .find_map(|&(r, s)| inverse3(&[e(r), e(s), fi.clone()]))
            .expect("some coordinate pair completes a basis");
        let records = self
            .lines
            .iter()
            .filter(|l| l.id != id)
            .map(|l| {
                let g: Vec3 = std::array::from_fn(|c| {
                    &(&(&l.f[0] * &tinv[0][c]) + &(&l.f[1] * &tinv[1][c])) + &(&l.f[2] * &tinv[2][c])
                });
                let [a, b, z] = g;
                (l.name.clone(), a, b, -&z)
            })
            .collect();
        Some(Arrangement::new(self.field, records).expect("deconing keeps lines distinct"))
    }

    /// Multiset of point multiplicities, sorted.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.points().iter().map(|p| p.lines.len()).collect();
        m.sort_unstable();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::same_cyclic_order;

    fn tri3() -> Arrangement {
        Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]).unwrap()
    }

    #[test]
    fn decone_by_infinity_is_identity() {
        let a = tri3();
        let back = ProjectiveArrangement::cone(&a).decone(0).unwrap();
        assert_eq!(back.lines(), a.lines());
    }

    #[test]
    fn decone_preserves_multiplicities() {
        let a = tri3();
        let cone = ProjectiveArrangement::cone(&a);
        let d = cone.decone(1).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(ProjectiveArrangement::cone(&d).multiplicities(), cone.multiplicities());
        // the two lines meeting x = 0 become parallel to ... each other's partners
        assert_eq!(d.parallel_classes().len(), 3);
    }

    #[test]
    fn pencil_order_is_angular() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, -1, 0)]).unwrap();
        let p = ProjectiveArrangement::from_affine_lines(&a);
        let origin = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::one()];
        let c = p.cyclic_order_at(&origin);
        // directions: y=0 at 0, x=y at π/4, x=0 at π/2
        assert!(same_cyclic_order(&c, &[2, 3, 1]));
    }

    #[test]
    fn four_slopes_in_order() {
        // slopes 0, 1, ∞, −1 through the origin
        let a = Arrangement::from_integer_lines(&[(0, 1, 0), (1, -1, 0), (1, 0, 0), (1, 1, 0)]).unwrap();
        let p = ProjectiveArrangement::from_affine_lines(&a);
        let origin = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::one()];
        let c = p.cyclic_order_at(&origin);
        assert!(same_cyclic_order(&c, &[1, 2, 3, 4]));
        let inc = a.incidence();
        assert_eq!(inc.blocks()[0].adjacent(2, 4), Some(false));
    }

    #[test]
    fn cyclic_order_survives_change_of_chart() {
        // four lines through (1, 2) plus a line elsewhere; decone by that line
        let a = Arrangement::from_integer_lines(&[(1, 0, 1), (0, 1, 2), (1, 1, 3), (1, -2, -3), (1, 3, 0)]).unwrap();
        let cone = ProjectiveArrangement::cone(&a);
        let quad = cone.points().into_iter().find(|p| p.lines.len() == 4).unwrap();
        let before = cone.cyclic_order_at(&quad.coords);
        for i in [0, 5] {
            let d = cone.decone(i).unwrap();
            let dc = ProjectiveArrangement::cone(&d);
            let q = dc.points().into_iter().find(|p| p.lines.len() == 4).unwrap();
            // map back to original ids through names
            let after: Vec<LineId> = dc
                .cyclic_order_at(&q.coords)
                .into_iter()
                .map(|id| cone.id_by_name(&dc.line(id).unwrap().name).unwrap())
                .collect();
            assert!(same_cyclic_order(&before, &after), "{before:?} vs {after:?}");
        }
    }
}
