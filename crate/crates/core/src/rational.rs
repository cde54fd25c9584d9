//! Exact half-integers.
//!
//! All width and criticality arithmetic lives in `½ℤ`; a [`Half`] stores the
//! doubled value so that every operation is exact integer arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An exact element of `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const ONE: Half = Half(2);

    /// Builds from the doubled value: `from_twice(3)` is `3/2`.
    pub const fn from_twice(twice: i64) -> Half {
        Half(twice)
    }

    pub const fn from_int(n: i64) -> Half {
        Half(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, when integral.
    pub fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub const fn abs(self) -> Half {
        Half(self.0.abs())
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Parses `"3"`, `"-1/2"`, or `"7/2"`. Denominator must divide 2.
    pub fn parse(s: &str) -> Result<Half> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
            match d {
                1 => Ok(Half::from_int(n)),
                2 => Ok(Half::from_twice(n)),
                -1 => Ok(Half::from_int(-n)),
                -2 => Ok(Half::from_twice(-n)),
                _ => Err(Error::Parse(format!(
                    "`{s}` is not a half-integer (denominator must divide 2)"
                ))),
            }
        } else {
            let n: i64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("`{s}` is not an integer or half-integer")))?;
            Ok(Half::from_int(n))
        }
    }
}

impl From<i64> for Half {
    fn from(n: i64) -> Half {
        Half::from_int(n)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl Mul<i64> for Half {
    type Output = Half;
    fn mul(self, rhs: i64) -> Half {
        Half(self.0 * rhs)
    }
}

/// Halving; only exact divisions by 2 (`Half::from_int(x) / 2`) stay in `½ℤ`,
/// so this panics when the result would leave `½ℤ`.
impl Div<i64> for Half {
    type Output = Half;
    fn div(self, rhs: i64) -> Half {
        assert!(rhs == 2 && self.0 % 2 == 0, "division leaves ½ℤ");
        Half(self.0 / 2)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(Half::parse("3").unwrap(), Half::from_int(3));
        assert_eq!(Half::parse("-1/2").unwrap(), Half::from_twice(-1));
        assert_eq!(Half::parse("7/2").unwrap(), Half::from_twice(7));
        assert!(Half::parse("1/3").is_err());
        assert_eq!(Half::from_twice(-5).to_string(), "-5/2");
        assert_eq!(Half::from_int(4).to_string(), "4");
    }

    #[test]
    fn arithmetic() {
        let a = Half::from_twice(3); // 3/2
        let b = Half::from_int(1);
        assert_eq!(a + b, Half::from_twice(5));
        assert_eq!(a - b, Half::from_twice(1));
        assert_eq!(-a, Half::from_twice(-3));
        assert_eq!(a * 2, Half::from_int(3));
        assert!(!a.is_integer());
        assert_eq!((a + a).as_integer(), Some(3));
    }
}
