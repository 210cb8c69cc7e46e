//! Exact scalars in ℚ or a real quadratic field ℚ(√d).
//!
//! Every coordinate, line coefficient and witness point in the crate is an
//! [`ExactScalar`]; signs and comparisons are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The coordinate field of an arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    /// ℚ(√d) for a squarefree `d > 1`.
    Quadratic(u32),
}

impl Field {
    pub fn root(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }
    }

    /// Whether `x` lives in this field.
    pub fn contains(self, x: &ExactScalar) -> bool {
        x.root == 0 || x.root == self.root()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Quadratic(d) => write!(f, "quadratic {d}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` is not squarefree or is not greater than 1")]
    BadRoot(u32),
}

/// `rat + irr·√root`. `root == 0` iff the irrational part vanishes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    rat: BigRational,
    irr: BigRational,
    root: u32,
}

fn is_squarefree(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn join_roots(a: u32, b: u32) -> u32 {
    match (a, b) {
        (0, r) | (r, 0) => r,
        (r, s) if r == s => r,
        (r, s) => panic!("mixed quadratic fields √{r} and √{s}"),
    }
}

impl ExactScalar {
    fn normalized(rat: BigRational, irr: BigRational, root: u32) -> Self {
        if irr.is_zero() {
            ExactScalar { rat, irr, root: 0 }
        } else {
            ExactScalar { rat, irr, root }
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(rat: BigRational) -> Self {
        ExactScalar { rat, irr: BigRational::zero(), root: 0 }
    }

    /// `rat + irr·√root`; panics unless `root` is squarefree and > 1.
    pub fn quadratic(rat: BigRational, irr: BigRational, root: u32) -> Self {
        assert!(is_squarefree(root), "√{root} is not a quadratic irrationality");
        Self::normalized(rat, irr, root)
    }

    /// √d itself.
    pub fn sqrt_of(d: u32) -> Self {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irr
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.irr.is_zero() && self.rat.is_one()
    }

    /// Exact sign, with √d taken positive.
    pub fn signum(&self) -> Ordering {
        let p = self.rat.cmp(&BigRational::zero());
        let q = self.irr.cmp(&BigRational::zero());
        if q == Ordering::Equal {
            return p;
        }
        if p == Ordering::Equal || p == q {
            return q;
        }
        // opposite signs: compare rat² with irr²·d
        let d = BigRational::from_integer(BigInt::from(self.root));
        let lhs = &self.rat * &self.rat;
        let rhs = &self.irr * &self.irr * d;
        if lhs > rhs {
            p
        } else {
            q
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn conjugate(&self) -> Self {
        ExactScalar { rat: self.rat.clone(), irr: -&self.irr, root: self.root }
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let root = join_roots(self.root, rhs.root);
        let d = BigRational::from_integer(BigInt::from(root));
        let norm = &rhs.rat * &rhs.rat - &rhs.irr * &rhs.irr * d;
        let num = self * &rhs.conjugate();
        Some(Self::normalized(num.rat / &norm, num.irr / &norm, root))
    }

    /// Midpoint of two scalars.
    pub fn midpoint(&self, other: &Self) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let s = self + other;
        Self::normalized(&s.rat * &half, &s.irr * &half, s.root)
    }

    /// Floating approximation; used only for diagnostics and SVG-free summaries.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        let i = self.irr.to_f64().unwrap_or(f64::NAN);
        r + i * (self.root as f64).sqrt()
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let root = join_roots(self.root, rhs.root);
        ExactScalar::normalized(&self.rat + &rhs.rat, &self.irr + &rhs.irr, root)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let root = join_roots(self.root, rhs.root);
        ExactScalar::normalized(&self.rat - &rhs.rat, &self.irr - &rhs.irr, root)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let root = join_roots(self.root, rhs.root);
        let d = BigRational::from_integer(BigInt::from(root));
        let rat = &self.rat * &rhs.rat + &self.irr * &rhs.irr * d;
        let irr = &self.rat * &rhs.irr + &self.irr * &rhs.rat;
        ExactScalar::normalized(rat, irr, root)
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { rat: -&self.rat, irr: -&self.irr, root: self.root }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 0 {
            return write!(f, "{}", fmt_ratio(&self.rat));
        }
        if self.rat.is_zero() {
            return write!(f, "{} w", fmt_ratio(&self.irr));
        }
        let sign = if self.irr.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{} w", fmt_ratio(&self.rat), sign, fmt_ratio(&self.irr.abs()))
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 0 {
            write!(f, "{}", fmt_ratio(&self.rat))
        } else {
            write!(f, "{}{:+}·√{}", fmt_ratio(&self.rat), self.irr, self.root)
        }
    }
}

fn parse_ratio(s: &str, whole: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Malformed(whole.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ScalarError::ZeroDenominator(whole.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// A parsed literal together with whether it used the `w` (= √d) symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarLiteral {
    pub rat: BigRational,
    pub irr: Option<BigRational>,
}

impl ScalarLiteral {
    /// Realize the literal in `field`; `None` if it needs √d but the field is ℚ.
    pub fn in_field(&self, field: Field) -> Option<ExactScalar> {
        match (&self.irr, field) {
            (None, _) => Some(ExactScalar::rational(self.rat.clone())),
            (Some(i), _) if i.is_zero() => Some(ExactScalar::rational(self.rat.clone())),
            (Some(_), Field::Rational) => None,
            (Some(i), Field::Quadratic(d)) => {
                Some(ExactScalar::quadratic(self.rat.clone(), i.clone(), d))
            }
        }
    }
}

impl FromStr for ScalarLiteral {
    type Err = ScalarError;

    /// Accepts `p/q`, `p/q+r/s w`, `r/s w`, `w`, `-w` (spaces before `w` allowed).
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ScalarError::Malformed(input.to_string()));
        }
        let Some(body) = s.strip_suffix('w') else {
            return Ok(ScalarLiteral { rat: parse_ratio(&s, input)?, irr: None });
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (rat_str, irr_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let irr = match irr_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_ratio(other.strip_prefix('+').unwrap_or(other), input)?,
        };
        Ok(ScalarLiteral { rat: parse_ratio(rat_str, input)?, irr: Some(irr) })
    }
}

/// Validate the `d` of a `field quadratic d` header.
pub fn quadratic_field(d: u32) -> Result<Field, ScalarError> {
    if is_squarefree(d) {
        Ok(Field::Quadratic(d))
    } else {
        Err(ScalarError::BadRoot(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q2(p: i64, q: i64) -> ExactScalar {
        ExactScalar::quadratic(
            BigRational::from_integer(p.into()),
            BigRational::from_integer(q.into()),
            2,
        )
    }

    #[test]
    fn sign_of_sqrt2_combinations() {
        // √2 - 1 > 0, 1 - √2 < 0, 3 - 2√2 > 0, 2√2 - 3 < 0
        assert!(q2(-1, 1).is_positive());
        assert!(q2(1, -1).is_negative());
        assert!(q2(3, -2).is_positive());
        assert!(q2(-3, 2).is_negative());
        assert_eq!(q2(0, 0).signum(), Ordering::Equal);
    }

    #[test]
    fn inverse_of_silver_ratio() {
        // 1/(√2 - 1) = √2 + 1
        let x = ExactScalar::one() / q2(-1, 1);
        assert_eq!(x, q2(1, 1));
        assert_eq!(q2(1, 1) * q2(-1, 1), ExactScalar::one());
    }

    #[test]
    fn parse_literals() {
        let lit: ScalarLiteral = "1/2+3/4 w".parse().unwrap();
        assert_eq!(lit.rat, BigRational::new(1.into(), 2.into()));
        assert_eq!(lit.irr, Some(BigRational::new(3.into(), 4.into())));
        let lit: ScalarLiteral = "-w".parse().unwrap();
        assert_eq!(lit.irr, Some(-BigRational::one()));
        assert!(lit.rat.is_zero());
        let lit: ScalarLiteral = "-3/2".parse().unwrap();
        assert_eq!(lit.irr, None);
        let lit: ScalarLiteral = "1-w".parse().unwrap();
        assert_eq!(lit.in_field(Field::Quadratic(2)), Some(q2(1, -1)));
        assert!(lit.in_field(Field::Rational).is_none());
        assert!("1/0".parse::<ScalarLiteral>().is_err());
        assert!("abc".parse::<ScalarLiteral>().is_err());
        assert!("".parse::<ScalarLiteral>().is_err());
    }

    #[test]
    fn display_parses_back() {
        for x in [q2(1, -1), q2(0, 3), ExactScalar::from_ratio(-7, 3), q2(-2, 5)] {
            let lit: ScalarLiteral = x.to_string().parse().unwrap();
            assert_eq!(lit.in_field(Field::Quadratic(2)).unwrap(), x);
        }
    }

    #[test]
    fn squarefree_roots() {
        assert!(quadratic_field(2).is_ok());
        assert!(quadratic_field(6).is_ok());
        assert!(quadratic_field(4).is_err());
        assert!(quadratic_field(1).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms_hold(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
            let x = q2(a, b);
            let y = q2(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            // order agrees with the floating embedding away from ties
            let fx = x.approx();
            let fy = y.approx();
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
        }
    }
}
