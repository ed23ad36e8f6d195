//! Exact scalars: rationals, optionally with a degree-one term in the formal
//! parameter `a` used by the D(2,1;a) family.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Exact rational number.
pub type Rat = Ratio<i64>;

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => s.parse::<i64>().ok().map(Rat::from_integer),
    }
}

/// Render a rational as `p` or `p/q` (the wire format for form values).
pub fn rat_string(r: Rat) -> String {
    if r.denom() == &1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A value `c + k·a` with rational `c`, `k` and `a` the formal D(2,1;a)
/// parameter. Everything outside D(2,1;a) keeps `k = 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Scalar {
    pub c: Rat,
    pub k: Rat,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        c: Rat::new_raw(0, 1),
        k: Rat::new_raw(0, 1),
    };

    pub fn rat(c: Rat) -> Self {
        Scalar { c, k: Rat::zero() }
    }

    pub fn int(n: i64) -> Self {
        Scalar::rat(Rat::from_integer(n))
    }

    /// `k·a` term alone.
    pub fn formal_a(k: Rat) -> Self {
        Scalar { c: Rat::zero(), k }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.k.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.k.is_zero()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        self.is_rational().then_some(self.c)
    }

    /// Substitute a rational value for the formal parameter.
    pub fn eval(&self, a: Rat) -> Rat {
        self.c + self.k * a
    }

    pub fn scale(&self, r: Rat) -> Scalar {
        Scalar {
            c: self.c * r,
            k: self.k * r,
        }
    }

    /// `self / other` when the quotient is a plain rational, i.e. when
    /// `self = λ·other`. Returns `None` otherwise (or when `other = 0`).
    pub fn try_div(&self, other: &Scalar) -> Option<Rat> {
        if other.is_zero() {
            return None;
        }
        // self = λ·other requires c1·k2 == c2·k1 (proportional coordinates).
        if self.c * other.k != other.c * self.k {
            return None;
        }
        let lambda = if !other.c.is_zero() {
            self.c / other.c
        } else {
            self.k / other.k
        };
        Some(lambda)
    }

    /// Product, defined only when it stays degree ≤ 1 in `a`.
    pub fn try_mul(&self, other: &Scalar) -> Option<Scalar> {
        if !self.k.is_zero() && !other.k.is_zero() {
            return None;
        }
        Some(Scalar {
            c: self.c * other.c,
            k: self.c * other.k + self.k * other.c,
        })
    }

    /// Deterministic total order (lexicographic on coordinates); used only
    /// for canonical sorting, not for sign reasoning.
    pub fn canonical_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        (self.k, self.c).cmp(&(other.k, other.c))
    }

    /// Wire format: "p/q" for rationals, "p/q + r/s*a" otherwise.
    pub fn display_string(&self) -> String {
        if self.k.is_zero() {
            rat_string(self.c)
        } else if self.c.is_zero() {
            format!("{}*a", rat_string(self.k))
        } else if self.k.is_negative() {
            format!("{} - {}*a", rat_string(self.c), rat_string(-self.k))
        } else {
            format!("{} + {}*a", rat_string(self.c), rat_string(self.k))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_string())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            c: self.c + rhs.c,
            k: self.k + rhs.k,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.c += rhs.c;
        self.k += rhs.k;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            c: self.c - rhs.c,
            k: self.k - rhs.k,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: -self.c,
            k: -self.k,
        }
    }
}

impl Mul<i64> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: i64) -> Scalar {
        self.scale(Rat::from_integer(rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let half = Scalar::rat(Rat::new(1, 2));
        let third = Scalar::rat(Rat::new(1, 3));
        assert_eq!((half + third).as_rat(), Some(Rat::new(5, 6)));
        assert_eq!((half - half).as_rat(), Some(Rat::zero()));
    }

    #[test]
    fn formal_parameter_cancels() {
        // -(1+a)/2 + 1/2 + a/2 = 0 : the D(2,1;a) isotropy computation.
        let x = Scalar {
            c: Rat::new(-1, 2),
            k: Rat::new(-1, 2),
        };
        let y = Scalar::rat(Rat::new(1, 2));
        let z = Scalar::formal_a(Rat::new(1, 2));
        assert!((x + y + z).is_zero());
    }

    #[test]
    fn try_div_detects_proportionality() {
        let x = Scalar {
            c: Rat::from_integer(-2),
            k: Rat::from_integer(-2),
        }; // -2 - 2a
        let y = Scalar {
            c: Rat::from_integer(1),
            k: Rat::from_integer(1),
        }; // 1 + a
        assert_eq!(x.try_div(&y), Some(Rat::from_integer(-2)));
        let z = Scalar::formal_a(Rat::from_integer(2));
        assert_eq!(z.try_div(&y), None);
        assert_eq!(x.try_div(&Scalar::ZERO), None);
    }

    #[test]
    fn try_mul_degree_guard() {
        let a = Scalar::formal_a(Rat::from_integer(1));
        assert!(a.try_mul(&a).is_none());
        assert_eq!(
            a.try_mul(&Scalar::int(3)),
            Some(Scalar::formal_a(Rat::from_integer(3)))
        );
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/4"), Some(Rat::new(3, 4)));
        assert_eq!(parse_rat("-2"), Some(Rat::from_integer(-2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(rat_string(Rat::new(-3, 4)), "-3/4");
        assert_eq!(rat_string(Rat::from_integer(5)), "5");
    }
}
