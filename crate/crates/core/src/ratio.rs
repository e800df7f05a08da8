//! Exact rationals for bound values. Equality and ordering are decided by
//! integer cross-multiplication; nothing on that path touches floats.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational `num / den` in lowest terms with `den >= 1`.
///
/// Bound values are non-negative; a slack can be negative when a bound is
/// violated, so the numerator is signed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatio")]
pub struct ExactRatio {
    num: i128,
    den: i128,
}

#[derive(Deserialize)]
struct RawRatio {
    num: i128,
    den: i128,
}

impl TryFrom<RawRatio> for ExactRatio {
    type Error = Error;

    fn try_from(raw: RawRatio) -> Result<Self> {
        ExactRatio::new(raw.num, raw.den)
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const OVERFLOW: Error = Error::Overflow {
    what: "exact rational",
};

impl ExactRatio {
    pub const ZERO: ExactRatio = ExactRatio { num: 0, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        let (num, den) = if den < 0 {
            (num.checked_neg().ok_or(OVERFLOW)?, den.checked_neg().ok_or(OVERFLOW)?)
        } else {
            (num, den)
        };
        let g = gcd(num, den).max(1);
        Ok(ExactRatio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(v: i128) -> Self {
        ExactRatio { num: v, den: 1 }
    }

    /// `num / den` for unsigned inputs, as produced by the bound sums.
    pub fn from_parts(num: u128, den: u128) -> Result<Self> {
        let num = i128::try_from(num).map_err(|_| OVERFLOW)?;
        let den = i128::try_from(den).map_err(|_| OVERFLOW)?;
        ExactRatio::new(num, den)
    }

    pub fn num(self) -> i128 {
        self.num
    }

    pub fn den(self) -> i128 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let g = gcd(self.den, rhs.den);
        let l = (self.den / g).checked_mul(rhs.den).ok_or(OVERFLOW)?;
        let a = self.num.checked_mul(l / self.den).ok_or(OVERFLOW)?;
        let b = rhs.num.checked_mul(l / rhs.den).ok_or(OVERFLOW)?;
        ExactRatio::new(a.checked_add(b).ok_or(OVERFLOW)?, l)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(ExactRatio {
            num: rhs.num.checked_neg().ok_or(OVERFLOW)?,
            den: rhs.den,
        })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = (self.num / g1).checked_mul(rhs.num / g2).ok_or(OVERFLOW)?;
        let den = (self.den / g2).checked_mul(rhs.den / g1).ok_or(OVERFLOW)?;
        ExactRatio::new(num, den)
    }

    /// Compares `self` against the integer `count` without division.
    pub fn cmp_integer(self, count: u128) -> Ordering {
        match i128::try_from(count) {
            Ok(c) => match c.checked_mul(self.den) {
                Some(scaled) => self.num.cmp(&scaled),
                None => Ordering::Less,
            },
            Err(_) => Ordering::Less,
        }
    }

    /// `self - count`.
    pub fn minus_integer(self, count: u128) -> Result<Self> {
        let c = i128::try_from(count).map_err(|_| OVERFLOW)?;
        self.checked_sub(ExactRatio::integer(c))
    }

    /// Lossy decimal view for human-readable output only.
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => cmp_fractions(self.num, self.den, other.num, other.den),
        }
    }
}

/// Exact comparison of `a/b` and `c/d` (`b, d > 0`) by continued fractions,
/// for operands whose cross products would overflow.
fn cmp_fractions(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    let (qa, ra) = (a.div_euclid(b), a.rem_euclid(b));
    let (qc, rc) = (c.div_euclid(d), c.rem_euclid(d));
    match qa.cmp(&qc) {
        Ordering::Equal => match (ra == 0, rc == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // ra/b vs rc/d  <=>  d/rc vs b/ra, reversed
            (false, false) => cmp_fractions(d, rc, b, ra),
        },
        ord => ord,
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn normalises() {
        assert_eq!(r(6, 4), r(3, 2));
        assert_eq!(r(3, -6), r(-1, 2));
        assert_eq!(r(0, 7), ExactRatio::ZERO);
        assert_eq!((r(10, 4).num(), r(10, 4).den()), (5, 2));
        assert!(ExactRatio::new(1, 0).is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(r(1, 3).checked_add(r(1, 6)).unwrap(), r(1, 2));
        assert_eq!(r(1, 3).checked_sub(r(1, 2)).unwrap(), r(-1, 6));
        assert_eq!(r(2, 3).checked_mul(r(9, 4)).unwrap(), r(3, 2));
        assert!(r(i128::MAX, 1).checked_add(r(1, 1)).is_err());
    }

    #[test]
    fn integer_comparison() {
        assert_eq!(r(5, 3).cmp_integer(1), Ordering::Greater);
        assert_eq!(r(4, 1).cmp_integer(4), Ordering::Equal);
        assert_eq!(r(1, 3).cmp_integer(1), Ordering::Less);
        assert_eq!(r(16, 3).minus_integer(5).unwrap(), r(1, 3));
    }

    #[test]
    fn ordering_without_overflow() {
        let big = r(i128::MAX, 3);
        let bigger = r(i128::MAX - 1, 2);
        assert_eq!(big.cmp(&bigger), Ordering::Less);
        assert_eq!(bigger.cmp(&big), Ordering::Greater);
        assert_eq!(big.cmp(&big), Ordering::Equal);
    }

    #[test]
    fn display_and_json() {
        assert_eq!(r(5, 3).to_string(), "5/3");
        assert_eq!(r(4, 1).to_string(), "4");
        let json = serde_json::to_string(&r(5, 3)).unwrap();
        assert_eq!(json, r#"{"num":5,"den":3}"#);
        let back: ExactRatio = serde_json::from_str(r#"{"num":10,"den":6}"#).unwrap();
        assert_eq!(back, r(5, 3));
        assert!(serde_json::from_str::<ExactRatio>(r#"{"num":1,"den":0}"#).is_err());
    }

    proptest! {
        #[test]
        fn ordering_matches_cross_products(a in -1000i128..1000, b in 1i128..1000, c in -1000i128..1000, d in 1i128..1000) {
            let (x, y) = (r(a, b), r(c, d));
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x.checked_sub(y).unwrap().checked_add(y).unwrap(), x);
        }
    }
}
