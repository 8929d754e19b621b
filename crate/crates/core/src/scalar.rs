//! Exact-or-floating scalars and intervals with open/closed endpoints.
//!
//! Exponent arithmetic stays in `Ratio<i64>` as long as every input is
//! rational, so thresholds such as `8/7` or `2/(2 - 4/3) = 3` come out exact.
//! Anything involving a computed edge exponent degrades to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Num {
    Exact(Rational),
    Approx(f64),
}

impl Num {
    pub const ZERO: Num = Num::Exact(Ratio::new_raw(0, 1));
    pub const ONE: Num = Num::Exact(Ratio::new_raw(1, 1));

    pub fn int(v: i64) -> Num {
        Num::Exact(Ratio::from_integer(v))
    }

    pub fn ratio(n: i64, d: i64) -> Num {
        Num::Exact(Ratio::new(n, d))
    }

    pub fn float(v: f64) -> Num {
        Num::Approx(v)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Num::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Num::Approx(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Num::Exact(_))
    }

    fn combine(
        self,
        other: Num,
        exact: impl Fn(&Rational, &Rational) -> Option<Rational>,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Num {
        if let (Num::Exact(a), Num::Exact(b)) = (self, other) {
            if let Some(r) = exact(&a, &b) {
                return Num::Exact(r);
            }
        }
        Num::Approx(approx(self.to_f64(), other.to_f64()))
    }

    pub fn recip(self) -> Num {
        Num::ONE / self
    }

    pub fn max(self, other: Num) -> Num {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Num) -> Num {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Num::Exact(r) => r.is_zero(),
            Num::Approx(v) => v == 0.0,
        }
    }

    pub fn signum(self) -> Ordering {
        self.partial_cmp(&Num::ZERO).unwrap_or(Ordering::Equal)
    }
}

impl std::ops::Add for Num {
    type Output = Num;
    fn add(self, o: Num) -> Num {
        self.combine(o, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl std::ops::Sub for Num {
    type Output = Num;
    fn sub(self, o: Num) -> Num {
        self.combine(o, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl std::ops::Mul for Num {
    type Output = Num;
    fn mul(self, o: Num) -> Num {
        self.combine(o, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl std::ops::Div for Num {
    type Output = Num;
    fn div(self, o: Num) -> Num {
        self.combine(
            o,
            |a, b| if b.is_zero() { None } else { a.checked_div(b) },
            |a, b| a / b,
        )
    }
}

impl std::ops::Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        match self {
            Num::Exact(r) => Num::Exact(-r),
            Num::Approx(v) => Num::Approx(-v),
        }
    }
}

impl PartialOrd for Num {
    fn partial_cmp(&self, other: &Num) -> Option<Ordering> {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl From<i64> for Num {
    fn from(v: i64) -> Num {
        Num::int(v)
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Num {
        Num::Approx(v)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Num::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Num::Approx(v) => match f.precision() {
                Some(p) => write!(f, "{v:.p$}"),
                None => write!(f, "{v}"),
            },
        }
    }
}

/// Parses `7`, `-3/2` or a decimal literal such as `1.37`; decimals are
/// read as the exact rational they denote.
impl FromStr for Num {
    type Err = Error;

    fn from_str(s: &str) -> Result<Num, Error> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse number {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Num::ratio(n, d));
        }
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Num::int(v));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let negative = mantissa.starts_with('-');
        let digits = mantissa.trim_start_matches(['-', '+']);
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let exact = (|| {
            let scale = i32::try_from(frac_part.len()).ok()? - exponent;
            let numer: i64 = format!("{int_part}{frac_part}").parse().ok()?;
            let pow = |e: i32| 10i64.checked_pow(e.unsigned_abs());
            let r = if scale >= 0 {
                Ratio::new(numer, pow(scale)?)
            } else {
                Ratio::from_integer(numer.checked_mul(pow(scale)?)?)
            };
            Some(if negative { -r } else { r })
        })();
        match exact {
            Some(r) => Ok(Num::Exact(r)),
            None => s.parse::<f64>().map(Num::Approx).map_err(|_| bad()),
        }
    }
}

/// Interval endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: Num,
    pub closed: bool,
}

impl Bound {
    pub fn open(value: Num) -> Bound {
        Bound { value, closed: false }
    }

    pub fn closed(value: Num) -> Bound {
        Bound { value, closed: true }
    }
}

/// Real interval; a missing endpoint is unbounded on that side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<Bound>,
    pub hi: Option<Bound>,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: None, hi: None };

    pub fn new(lo: Option<Bound>, hi: Option<Bound>) -> Interval {
        Interval { lo, hi }
    }

    pub fn open(a: Num, b: Num) -> Interval {
        Interval::new(Some(Bound::open(a)), Some(Bound::open(b)))
    }

    pub fn closed(a: Num, b: Num) -> Interval {
        Interval::new(Some(Bound::closed(a)), Some(Bound::closed(b)))
    }

    pub fn above(lo: Bound) -> Interval {
        Interval::new(Some(lo), None)
    }

    pub fn below(hi: Bound) -> Interval {
        Interval::new(None, Some(hi))
    }

    pub fn point(v: Num) -> Interval {
        Interval::closed(v, v)
    }

    pub fn empty() -> Interval {
        Interval::open(Num::ZERO, Num::ZERO)
    }

    pub fn contains(&self, x: Num) -> bool {
        let lo_ok = match self.lo {
            None => true,
            Some(b) => match x.partial_cmp(&b.value) {
                Some(Ordering::Greater) => true,
                Some(Ordering::Equal) => b.closed,
                _ => false,
            },
        };
        let hi_ok = match self.hi {
            None => true,
            Some(b) => match x.partial_cmp(&b.value) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => b.closed,
                _ => false,
            },
        };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) => match a.value.partial_cmp(&b.value) {
                Some(Ordering::Less) => false,
                Some(Ordering::Equal) => !(a.closed && b.closed),
                _ => true,
            },
            _ => false,
        }
    }

    /// `self ⊆ other` (both treated as point sets).
    pub fn is_subset(&self, other: &Interval) -> bool {
        if self.is_empty() {
            return true;
        }
        let lo_ok = match (self.lo, other.lo) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => match a.value.partial_cmp(&b.value) {
                Some(Ordering::Greater) => true,
                Some(Ordering::Equal) => b.closed || !a.closed,
                _ => false,
            },
        };
        let hi_ok = match (self.hi, other.hi) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => match a.value.partial_cmp(&b.value) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => b.closed || !a.closed,
                _ => false,
            },
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = match (self.lo, other.lo) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(match a.value.partial_cmp(&b.value) {
                Some(Ordering::Greater) => a,
                Some(Ordering::Less) => b,
                _ => Bound { value: a.value, closed: a.closed && b.closed },
            }),
        };
        let hi = match (self.hi, other.hi) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(match a.value.partial_cmp(&b.value) {
                Some(Ordering::Less) => a,
                Some(Ordering::Greater) => b,
                _ => Bound { value: a.value, closed: a.closed && b.closed },
            }),
        };
        Interval { lo, hi }
    }

    /// `{ q : constant + slope * q ∈ self }`.
    pub fn affine_preimage(&self, constant: Num, slope: Num) -> Interval {
        match slope.signum() {
            Ordering::Equal => {
                if self.contains(constant) {
                    Interval::ALL
                } else {
                    Interval::empty()
                }
            }
            Ordering::Greater => Interval {
                lo: self.lo.map(|b| Bound { value: (b.value - constant) / slope, closed: b.closed }),
                hi: self.hi.map(|b| Bound { value: (b.value - constant) / slope, closed: b.closed }),
            },
            Ordering::Less => Interval {
                lo: self.hi.map(|b| Bound { value: (b.value - constant) / slope, closed: b.closed }),
                hi: self.lo.map(|b| Bound { value: (b.value - constant) / slope, closed: b.closed }),
            },
        }
    }

    /// Image under `q -> 1/q` of the part of `self` inside `(0, ∞)`.
    pub fn reciprocal(&self) -> Interval {
        let positive = self.intersect(&Interval::above(Bound::open(Num::ZERO)));
        if positive.is_empty() {
            return Interval::empty();
        }
        let hi = match positive.lo {
            Some(b) if !b.value.is_zero() => Some(Bound { value: b.value.recip(), closed: b.closed }),
            _ => None,
        };
        let lo = match positive.hi {
            Some(b) => Some(Bound { value: b.value.recip(), closed: b.closed }),
            None => Some(Bound::open(Num::ZERO)),
        };
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let show = |f: &mut fmt::Formatter<'_>, v: Num| match f.precision() {
            Some(p) => write!(f, "{v:.p$}"),
            None => write!(f, "{v}"),
        };
        match self.lo {
            Some(b) => {
                write!(f, "{}", if b.closed { "[" } else { "(" })?;
                show(f, b.value)?;
            }
            None => write!(f, "(-inf")?,
        }
        write!(f, ", ")?;
        match self.hi {
            Some(b) => {
                show(f, b.value)?;
                write!(f, "{}", if b.closed { "]" } else { ")" })
            }
            None => write!(f, "inf)"),
        }
    }
}

/// `value + eps * ε` for an arbitrarily small positive `ε`, `eps ∈ {-1, 0, 1}`.
///
/// Comparisons are lexicographic, so `x + ε <= y` holds exactly when `x < y`,
/// and a strict lower bound `mu > b` is the value `b + ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsNum {
    pub value: Num,
    pub eps: i8,
}

impl EpsNum {
    pub fn exact(value: Num) -> EpsNum {
        EpsNum { value, eps: 0 }
    }

    pub fn plus_eps(value: Num) -> EpsNum {
        EpsNum { value, eps: 1 }
    }

    pub fn minus_eps(value: Num) -> EpsNum {
        EpsNum { value, eps: -1 }
    }

    pub fn to_f64(self) -> f64 {
        self.value.to_f64()
    }

    pub fn scale(self, factor: Num) -> EpsNum {
        let sign = match factor.signum() {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        };
        EpsNum { value: self.value * factor, eps: self.eps * sign }
    }

    pub fn max(self, other: EpsNum) -> EpsNum {
        if other > self { other } else { self }
    }

    pub fn min(self, other: EpsNum) -> EpsNum {
        if other < self { other } else { self }
    }
}

impl From<Num> for EpsNum {
    fn from(value: Num) -> EpsNum {
        EpsNum::exact(value)
    }
}

impl std::ops::Add for EpsNum {
    type Output = EpsNum;
    fn add(self, o: EpsNum) -> EpsNum {
        EpsNum { value: self.value + o.value, eps: (self.eps + o.eps).signum() }
    }
}

impl std::ops::Sub for EpsNum {
    type Output = EpsNum;
    fn sub(self, o: EpsNum) -> EpsNum {
        self + (-o)
    }
}

impl std::ops::Neg for EpsNum {
    type Output = EpsNum;
    fn neg(self) -> EpsNum {
        EpsNum { value: -self.value, eps: -self.eps }
    }
}

impl PartialOrd for EpsNum {
    fn partial_cmp(&self, other: &EpsNum) -> Option<Ordering> {
        match self.value.partial_cmp(&other.value)? {
            Ordering::Equal => Some(self.eps.cmp(&other.eps)),
            o => Some(o),
        }
    }
}

impl fmt::Display for EpsNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.p$}", self.value)?,
            None => write!(f, "{}", self.value)?,
        }
        match self.eps {
            1 => write!(f, "+ε"),
            -1 => write!(f, "-ε"),
            _ => Ok(()),
        }
    }
}

/// Accepts a [`Num`] optionally followed by `+eps`, `-eps`, `+ε` or `-ε`.
impl FromStr for EpsNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<EpsNum, Error> {
        let t = s.trim();
        for (suffix, eps) in [("+eps", 1), ("-eps", -1), ("+ε", 1), ("-ε", -1)] {
            if let Some(head) = t.strip_suffix(suffix) {
                return Ok(EpsNum { value: head.parse()?, eps });
            }
        }
        Ok(EpsNum::exact(t.parse()?))
    }
}

impl Interval {
    pub fn contains_eps(&self, x: EpsNum) -> bool {
        let lo_ok = self.lo.map_or(true, |b| {
            let b = EpsNum::exact(b.value);
            x > b || (b.closed_eq(x) && self.lo.unwrap().closed)
        });
        let hi_ok = self.hi.map_or(true, |b| {
            let b = EpsNum::exact(b.value);
            x < b || (b.closed_eq(x) && self.hi.unwrap().closed)
        });
        lo_ok && hi_ok
    }

    /// `{ q : constant + slope * q ∈ self }` with an infinitesimal constant.
    pub fn affine_preimage_eps(&self, constant: EpsNum, slope: Num) -> Interval {
        if slope.is_zero() {
            return if self.contains_eps(constant) { Interval::ALL } else { Interval::empty() };
        }
        // move the infinitesimal into the endpoint openness
        let shift = |b: Bound, upper: bool| {
            let closed = match (constant.eps, upper) {
                (0, _) => b.closed,
                (e, false) => e > 0,
                (e, true) => e < 0,
            };
            Bound { value: b.value, closed }
        };
        let adjusted = Interval { lo: self.lo.map(|b| shift(b, false)), hi: self.hi.map(|b| shift(b, true)) };
        adjusted.affine_preimage(constant.value, slope)
    }
}

impl EpsNum {
    fn closed_eq(&self, other: EpsNum) -> bool {
        self.partial_cmp(&other) == Some(Ordering::Equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let mu = Num::ratio(4, 3);
        let s = Num::int(2) / (Num::int(2) - mu);
        assert_eq!(s, Num::int(3));
        assert_eq!(Num::ratio(1, 3) + Num::float(0.5), Num::float(1.0 / 3.0 + 0.5));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("1.37".parse::<Num>().unwrap(), Num::ratio(137, 100));
        assert_eq!("8/7".parse::<Num>().unwrap(), Num::ratio(8, 7));
        assert_eq!("-2".parse::<Num>().unwrap(), Num::int(-2));
        assert_eq!("2.5e1".parse::<Num>().unwrap(), Num::int(25));
        assert!("abc".parse::<Num>().is_err());
        assert!("1/0".parse::<Num>().is_err());
    }

    #[test]
    fn interval_membership_respects_openness() {
        let i = Interval::new(Some(Bound::open(Num::int(2))), Some(Bound::closed(Num::int(3))));
        assert!(!i.contains(Num::int(2)));
        assert!(i.contains(Num::int(3)));
        assert_eq!(i.to_string(), "(2, 3]");
        assert!(Interval::open(Num::ONE, Num::ONE).is_empty());
        assert!(!Interval::point(Num::ONE).is_empty());
    }

    #[test]
    fn reciprocal_maps_q_to_s() {
        // 1/s in [1/3, 1/2) gives s in (2, 3]
        let q = Interval::new(Some(Bound::closed(Num::ratio(1, 3))), Some(Bound::open(Num::ratio(1, 2))));
        assert_eq!(q.reciprocal().to_string(), "(2, 3]");
        let q = Interval::new(Some(Bound::open(Num::ZERO)), Some(Bound::open(Num::ratio(1, 2))));
        assert_eq!(q.reciprocal().to_string(), "(2, inf)");
    }

    #[test]
    fn preimage_flips_for_negative_slope() {
        // 1 - 3q <= 0  <=>  q >= 1/3
        let i = Interval::below(Bound::closed(Num::ZERO)).affine_preimage(Num::ONE, Num::int(-3));
        assert_eq!(i.to_string(), "[1/3, inf)");
    }

    #[test]
    fn infinitesimals_compare_lexicographically() {
        let half = Num::ratio(1, 2);
        assert!(EpsNum::plus_eps(half) > EpsNum::exact(half));
        assert!(EpsNum::plus_eps(half) < EpsNum::exact(Num::ratio(501, 1000)));
        assert!(!(EpsNum::plus_eps(half) <= EpsNum::exact(half)));
        assert_eq!("1/4+eps".parse::<EpsNum>().unwrap(), EpsNum::plus_eps(Num::ratio(1, 4)));
        assert_eq!(EpsNum::plus_eps(half).scale(Num::int(-2)), EpsNum::minus_eps(Num::int(-1)));
        assert_eq!(EpsNum::plus_eps(half).to_string(), "1/2+ε");
    }

    #[test]
    fn strict_bound_closes_the_preimage() {
        // 1 - mu < 2q for every mu > 1/2  <=>  q >= 1/4
        let one_minus_mu = EpsNum::exact(Num::ONE) - EpsNum::plus_eps(Num::ratio(1, 2));
        let set = Interval::above(Bound::open(Num::ZERO)).affine_preimage_eps(-one_minus_mu, Num::int(2));
        assert_eq!(set, Interval::above(Bound::closed(Num::ratio(1, 4))));
        assert!(Interval::above(Bound::open(Num::ZERO)).contains_eps(EpsNum::plus_eps(Num::ZERO)));
        assert!(!Interval::below(Bound::closed(Num::ZERO)).contains_eps(EpsNum::plus_eps(Num::ZERO)));
    }
}
