//! Affine line arrangements over ℚ or ℚ(√d): lines, the text format,
//! intersection points and parallel classes.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::incidence::{Block, Incidence, LineId};
use crate::projective::ProjectiveArrangement;
use crate::scalar::{quadratic_field, ExactScalar, Field, ScalarError, ScalarLiteral};

/// The line `a·x + b·y = c`, normalized so the first nonzero of `(a, b)` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Line {
    pub id: LineId,
    pub name: String,
    #[serde(serialize_with = "ser_scalar")]
    pub a: ExactScalar,
    #[serde(serialize_with = "ser_scalar")]
    pub b: ExactScalar,
    #[serde(serialize_with = "ser_scalar")]
    pub c: ExactScalar,
}

pub(crate) fn ser_scalar<S: serde::Serializer>(x: &ExactScalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Line {
    /// Normalized line; `None` when `(a, b) = (0, 0)`.
    pub fn new(id: LineId, name: impl Into<String>, a: ExactScalar, b: ExactScalar, c: ExactScalar) -> Option<Self> {
        let lead = if !a.is_zero() { a.clone() } else if !b.is_zero() { b.clone() } else { return None };
        Some(Line { id, name: name.into(), a: &a / &lead, b: &b / &lead, c: &c / &lead })
    }

    /// `a·x + b·y − c`; its sign tells the side of a point.
    pub fn eval(&self, x: &ExactScalar, y: &ExactScalar) -> ExactScalar {
        &(&(&self.a * x) + &(&self.b * y)) - &self.c
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        self.a == other.a && self.b == other.b
    }

    pub fn same_locus(&self, other: &Line) -> bool {
        self.is_parallel(other) && self.c == other.c
    }

    /// `y` at abscissa `x`, for a non-vertical line.
    pub fn y_at(&self, x: &ExactScalar) -> ExactScalar {
        &(&self.c - &(&self.a * x)) / &self.b
    }

    /// Homogeneous functional `(a, b, −c)` on `(x, y, 1)`.
    pub fn functional(&self) -> [ExactScalar; 3] {
        [self.a.clone(), self.b.clone(), -&self.c]
    }

    /// Meeting point with a non-parallel line.
    pub fn meet(&self, other: &Line) -> Option<(ExactScalar, ExactScalar)> {
        let det = &(&self.a * &other.b) - &(&other.a * &self.b);
        if det.is_zero() {
            return None;
        }
        let x = &(&(&self.c * &other.b) - &(&other.c * &self.b)) / &det;
        let y = &(&(&self.a * &other.c) - &(&other.a * &self.c)) / &det;
        Some((x, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagHint {
    #[serde(serialize_with = "ser_scalar")]
    pub x0: ExactScalar,
    #[serde(serialize_with = "ser_scalar")]
    pub y0: ExactScalar,
    #[serde(serialize_with = "ser_scalar")]
    pub dx: ExactScalar,
    #[serde(serialize_with = "ser_scalar")]
    pub dy: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Affine {
        #[serde(serialize_with = "ser_scalar")]
        x: ExactScalar,
        #[serde(serialize_with = "ser_scalar")]
        y: ExactScalar,
    },
    /// Direction class `(dx, dy)` of a parallel class, first nonzero 1.
    Infinity {
        #[serde(serialize_with = "ser_scalar")]
        dx: ExactScalar,
        #[serde(serialize_with = "ser_scalar")]
        dy: ExactScalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    pub location: Location,
    /// Sorted ids of the lines through the point; `0` is the line at infinity.
    pub incident: Vec<LineId>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Scalar { line: usize, source: ScalarError },
    #[error("line {line}: field declared twice with different values")]
    MixedField { line: usize },
    #[error("line {line}: scalar needs √d but the field is rational")]
    NeedsQuadratic { line: usize },
    #[error("line {line}: zero normal vector for `{name}`")]
    ZeroNormal { line: usize, name: String },
    #[error("line {line}: `{name}` duplicates `{other}`")]
    DuplicateLine { line: usize, name: String, other: String },
    #[error("line {line}: name `{name}` used twice")]
    DuplicateName { line: usize, name: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("lines `{0}` and `{1}` coincide")]
    DuplicateLine(String, String),
    #[error("zero normal vector for `{0}`")]
    ZeroNormal(String),
    #[error("scalar outside the declared field {0}")]
    WrongField(Field),
}

/// An ordered affine arrangement with ids `1..=n` in file order.
///
/// A *projective* arrangement file describes lines in some affine chart
/// whose line at infinity is not itself a member; see
/// [`Arrangement::is_projective`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    field: Field,
    lines: Vec<Line>,
    projective: bool,
    flag_hint: Option<FlagHint>,
}

impl Arrangement {
    /// Build from `(name, a, b, c)` records, assigning ids `1..=n`.
    pub fn new(
        field: Field,
        records: Vec<(String, ExactScalar, ExactScalar, ExactScalar)>,
    ) -> Result<Self, ArrangementError> {
        let mut lines: Vec<Line> = Vec::with_capacity(records.len());
        for (i, (name, a, b, c)) in records.into_iter().enumerate() {
            if ![&a, &b, &c].iter().all(|x| field.contains(x)) {
                return Err(ArrangementError::WrongField(field));
            }
            let line = Line::new(i + 1, name.clone(), a, b, c).ok_or(ArrangementError::ZeroNormal(name))?;
            if let Some(o) = lines.iter().find(|o| o.same_locus(&line)) {
                return Err(ArrangementError::DuplicateLine(o.name.clone(), line.name));
            }
            lines.push(line);
        }
        Ok(Arrangement { field, lines, projective: false, flag_hint: None })
    }

    /// Integer-coefficient convenience constructor; names are `H1, H2, …`.
    pub fn from_integer_lines(lines: &[(i64, i64, i64)]) -> Result<Self, ArrangementError> {
        let recs = lines
            .iter()
            .enumerate()
            .map(|(i, &(a, b, c))| (format!("H{}", i + 1), a.into(), b.into(), c.into()))
            .collect();
        Self::new(Field::Rational, recs)
    }

    pub fn with_flag_hint(mut self, hint: Option<FlagHint>) -> Self {
        self.flag_hint = hint;
        self
    }

    /// Mark the chart's line at infinity as not belonging to the arrangement.
    pub fn into_projective(mut self) -> Self {
        self.projective = true;
        self
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_arrangement(text)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, id: LineId) -> &Line {
        &self.lines[id - 1]
    }

    pub fn ids(&self) -> Vec<LineId> {
        (1..=self.lines.len()).collect()
    }

    pub fn id_by_name(&self, name: &str) -> Option<LineId> {
        self.lines.iter().find(|l| l.name == name).map(|l| l.id)
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn flag_hint(&self) -> Option<&FlagHint> {
        self.flag_hint.as_ref()
    }

    /// Groups of mutually parallel lines, ordered by smallest id.
    pub fn parallel_classes(&self) -> Vec<Vec<LineId>> {
        let mut classes: Vec<Vec<LineId>> = Vec::new();
        for l in &self.lines {
            match classes.iter_mut().find(|c| self.line(c[0]).is_parallel(l)) {
                Some(c) => c.push(l.id),
                None => classes.push(vec![l.id]),
            }
        }
        classes
    }

    /// Affine multiple points, sorted by their incident sets.
    pub fn affine_points(&self) -> Vec<IntersectionPoint> {
        let mut by_loc: HashMap<(ExactScalar, ExactScalar), Vec<LineId>> = HashMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            for m in &self.lines[i + 1..] {
                if let Some(p) = l.meet(m) {
                    let e = by_loc.entry(p).or_default();
                    for id in [l.id, m.id] {
                        if !e.contains(&id) {
                            e.push(id);
                        }
                    }
                }
            }
        }
        let mut pts: Vec<IntersectionPoint> = by_loc
            .into_iter()
            .map(|((x, y), mut inc)| {
                inc.sort_unstable();
                IntersectionPoint { location: Location::Affine { x, y }, incident: inc }
            })
            .collect();
        pts.sort_by(|p, q| p.incident.cmp(&q.incident));
        pts
    }

    /// Multiple points; with `with_infinity`, also one point per parallel
    /// class on the line at infinity (id 0).
    pub fn intersection_poset(&self, with_infinity: bool) -> Vec<IntersectionPoint> {
        let mut pts = self.affine_points();
        if with_infinity {
            for class in self.parallel_classes() {
                let l = self.line(class[0]);
                let (dx, dy) = if l.b.is_zero() {
                    (ExactScalar::zero(), ExactScalar::one())
                } else {
                    (ExactScalar::one(), -&(&l.a / &l.b))
                };
                let mut inc = vec![0];
                inc.extend(class);
                pts.push(IntersectionPoint { location: Location::Infinity { dx, dy }, incident: inc });
            }
        }
        pts
    }

    /// Affine incidence: ids `1..=n`, blocks at affine multiple points.
    pub fn incidence(&self) -> Incidence {
        let proj = ProjectiveArrangement::from_affine_lines(self);
        let blocks = self
            .affine_points()
            .into_iter()
            .map(|p| {
                let cyclic = match &p.location {
                    Location::Affine { x, y } => Some(proj.cyclic_order_at(&[x.clone(), y.clone(), ExactScalar::one()])),
                    Location::Infinity { .. } => None,
                };
                Block { lines: p.incident, cyclic }
            })
            .collect();
        Incidence::new(self.ids(), self.lines.iter().map(|l| l.name.clone()).collect(), blocks)
            .expect("geometric incidence is consistent")
    }

    /// The projective closure: the cone (with `H0`) for affine files, the
    /// bare lines for projective ones.
    pub fn projectivize(&self) -> ProjectiveArrangement {
        if self.projective {
            ProjectiveArrangement::from_affine_lines(self)
        } else {
            ProjectiveArrangement::cone(self)
        }
    }

    /// Render in the text format accepted by [`Arrangement::parse`].
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field {}", self.field);
        if self.projective {
            let _ = writeln!(s, "projective");
        }
        for l in &self.lines {
            let _ = writeln!(s, "line {} {} {} {}", l.name, fmt_scalar(&l.a), fmt_scalar(&l.b), fmt_scalar(&l.c));
        }
        if let Some(h) = &self.flag_hint {
            let _ = writeln!(s, "flag {} {} {} {}", fmt_scalar(&h.x0), fmt_scalar(&h.y0), fmt_scalar(&h.dx), fmt_scalar(&h.dy));
        }
        s
    }
}

/// Scalar token without spaces, so it survives whitespace splitting.
fn fmt_scalar(x: &ExactScalar) -> String {
    x.to_string().replace(' ', "")
}

fn parse_arrangement(text: &str) -> Result<Arrangement, ParseError> {
    let mut field: Option<Field> = None;
    let mut projective = false;
    let mut raw_lines: Vec<(usize, String, [ScalarLiteral; 3])> = Vec::new();
    let mut raw_flag: Option<(usize, [ScalarLiteral; 4])> = None;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokenize(body);
        let Some(head) = toks.first() else { continue };
        let syntax = |msg: &str| ParseError::Syntax { line: ln, msg: msg.to_string() };
        let scalar = |t: &str| t.parse::<ScalarLiteral>().map_err(|e| ParseError::Scalar { line: ln, source: e });
        match head.as_str() {
            "field" => {
                let f = match toks.get(1).map(String::as_str) {
                    Some("rational") if toks.len() == 2 => Field::Rational,
                    Some("quadratic") if toks.len() == 3 => {
                        let d: u32 = toks[2].parse().map_err(|_| syntax("expected `field quadratic <d>`"))?;
                        quadratic_field(d).map_err(|e| ParseError::Scalar { line: ln, source: e })?
                    }
                    _ => return Err(syntax("expected `field rational` or `field quadratic <d>`")),
                };
                if field.is_some_and(|g| g != f) {
                    return Err(ParseError::MixedField { line: ln });
                }
                field = Some(f);
            }
            "projective" => {
                if toks.len() != 1 {
                    return Err(syntax("`projective` takes no arguments"));
                }
                projective = true;
            }
            "line" => {
                if toks.len() != 5 {
                    return Err(syntax("expected `line <name> <a> <b> <c>`"));
                }
                raw_lines.push((ln, toks[1].clone(), [scalar(&toks[2])?, scalar(&toks[3])?, scalar(&toks[4])?]));
            }
            "flag" => {
                if toks.len() != 5 {
                    return Err(syntax("expected `flag <x0> <y0> <dx> <dy>`"));
                }
                if raw_flag.is_some() {
                    return Err(syntax("more than one flag"));
                }
                raw_flag = Some((ln, [scalar(&toks[1])?, scalar(&toks[2])?, scalar(&toks[3])?, scalar(&toks[4])?]));
            }
            other => return Err(syntax(&format!("unknown record `{other}`"))),
        }
    }

    let field = field.unwrap_or(Field::Rational);
    let realize = |ln: usize, l: &ScalarLiteral| l.in_field(field).ok_or(ParseError::NeedsQuadratic { line: ln });

    let mut lines: Vec<Line> = Vec::with_capacity(raw_lines.len());
    for (ln, name, [a, b, c]) in &raw_lines {
        if lines.iter().any(|l| &l.name == name) {
            return Err(ParseError::DuplicateName { line: *ln, name: name.clone() });
        }
        let line = Line::new(lines.len() + 1, name.clone(), realize(*ln, a)?, realize(*ln, b)?, realize(*ln, c)?)
            .ok_or_else(|| ParseError::ZeroNormal { line: *ln, name: name.clone() })?;
        if let Some(o) = lines.iter().find(|o| o.same_locus(&line)) {
            return Err(ParseError::DuplicateLine { line: *ln, name: name.clone(), other: o.name.clone() });
        }
        lines.push(line);
    }
    let flag_hint = match raw_flag {
        None => None,
        Some((ln, [x0, y0, dx, dy])) => Some(FlagHint {
            x0: realize(ln, &x0)?,
            y0: realize(ln, &y0)?,
            dx: realize(ln, &dx)?,
            dy: realize(ln, &dy)?,
        }),
    };
    Ok(Arrangement { field, lines, projective, flag_hint })
}

/// Split a record into tokens. A detached `w` is glued onto the preceding
/// token (so `1/2+3/4 w` reads as one scalar) only when the record would
/// otherwise have too many fields.
fn tokenize(body: &str) -> Vec<String> {
    let plain: Vec<String> = body.split_whitespace().map(str::to_string).collect();
    let expected = match plain.first().map(String::as_str) {
        Some("line" | "flag") => 5,
        _ => return plain,
    };
    if plain.len() <= expected {
        return plain;
    }
    let mut out: Vec<String> = Vec::new();
    for t in plain {
        let glue = t == "w" && out.len() > 2 && out.last().is_some_and(|l| !l.ends_with('w'));
        if glue {
            out.last_mut().expect("nonempty").push('w');
        } else {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI3: &str = "field rational\nline H1 1 0 0\nline H2 0 1 0\nline H3 1 1 1\n";

    #[test]
    fn triangle_parses() {
        let a = Arrangement::parse(TRI3).unwrap();
        assert_eq!(a.n(), 3);
        assert_eq!(a.affine_points().len(), 3);
        assert!(a.affine_points().iter().all(|p| p.multiplicity() == 2));
    }

    #[test]
    fn duplicate_line_is_rejected() {
        let e = Arrangement::parse("field rational\nline a 1 0 0\nline b 2 0 0\n").unwrap_err();
        assert!(matches!(e, ParseError::DuplicateLine { .. }));
    }

    #[test]
    fn zero_normal_and_bad_scalars() {
        assert!(matches!(
            Arrangement::parse("field rational\nline a 0 0 1\n"),
            Err(ParseError::ZeroNormal { .. })
        ));
        assert!(matches!(Arrangement::parse("line a 1/0 0 1\n"), Err(ParseError::Scalar { .. })));
        assert!(matches!(
            Arrangement::parse("field rational\nline a 1 w 1\n"),
            Err(ParseError::NeedsQuadratic { .. })
        ));
        assert!(matches!(
            Arrangement::parse("field rational\nfield quadratic 2\n"),
            Err(ParseError::MixedField { .. })
        ));
    }

    #[test]
    fn detached_root_symbol_is_merged() {
        let a = Arrangement::parse("field quadratic 2\nline a 1 1 1/2+3/4 w\nline b 1 -1 -1 w\n").unwrap();
        assert_eq!(a.line(1).c.irrational_part().to_string(), "3/4");
        assert_eq!(a.line(2).c.irrational_part().to_string(), "-1");
    }

    #[test]
    fn round_trip_through_text() {
        let a = Arrangement::parse("field quadratic 2\nline a 2 1 1/2+3/4w\nline b 0 3 -w\nflag 0 1/3 1 0\n").unwrap();
        let b = Arrangement::parse(&a.to_file_string()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pencil_has_one_triple_point() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (0, 1, 0), (1, -1, 0)]).unwrap();
        let pts = a.intersection_poset(false);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity(), 3);
    }

    #[test]
    fn infinity_points_follow_parallel_classes() {
        let a = Arrangement::from_integer_lines(&[(1, 0, 0), (1, 0, 1), (0, 1, 0)]).unwrap();
        let inf: Vec<Vec<LineId>> = a
            .intersection_poset(true)
            .into_iter()
            .filter(|p| matches!(p.location, Location::Infinity { .. }))
            .map(|p| p.incident)
            .collect();
        assert_eq!(inf, vec![vec![0, 1, 2], vec![0, 3]]);
    }
}
