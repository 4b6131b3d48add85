use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus of the prime-field accelerator.
pub const DEFAULT_PRIME: u64 = 32003;

/// Which exact field the computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum FieldKind {
    #[default]
    Rational,
    Prime(u64),
}

impl FieldKind {
    /// Prime field with modulus `p`; `p` must be an odd prime.
    pub fn prime(p: u64) -> Result<Self> {
        if p <= 2 || !is_prime(p) {
            return Err(Error::Parameter(format!("{p} is not an odd prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Parameter(format!("modulus {p} too large (need p < 2^31)")));
        }
        Ok(FieldKind::Prime(p))
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElem {
        match self {
            FieldKind::Rational => FieldElem::Q(BigRational::from_integer(BigInt::from(v))),
            FieldKind::Prime(p) => FieldElem::P { v: v.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> FieldElem {
        assert!(den != 0, "zero denominator");
        self.from_i64(num) * self.from_i64(den).inv()
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar: an arbitrary-precision rational or a residue mod p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    P { v: u64, p: u64 },
}

impl FieldElem {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElem::Q(_) => FieldKind::Rational,
            FieldElem::P { p, .. } => FieldKind::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_one(),
            FieldElem::P { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        match self {
            FieldElem::Q(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                FieldElem::Q(q.recip())
            }
            FieldElem::P { v, p } => {
                assert!(*v != 0, "inverse of zero");
                FieldElem::P { v: pow_mod(*v, p - 2, *p), p: *p }
            }
        }
    }

    /// The rational value, if this element lives in the rational field.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Q(q) => Some(q),
            FieldElem::P { .. } => None,
        }
    }

    /// Small integer value, when the element is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElem::Q(q) if q.is_integer() => i64::try_from(q.to_integer()).ok(),
            FieldElem::Q(_) => None,
            FieldElem::P { v, .. } => Some(*v as i64),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mismatch() -> ! {
    panic!("field elements from different fields combined")
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::P { v: a, p }, FieldElem::P { v: b, p: q }) if p == q => {
                FieldElem::P { v: (a + b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a - b),
            (FieldElem::P { v: a, p }, FieldElem::P { v: b, p: q }) if p == q => {
                FieldElem::P { v: (a + p - b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::P { v: a, p }, FieldElem::P { v: b, p: q }) if p == q => {
                FieldElem::P { v: a * b % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::P { v, p } => FieldElem::P { v: (p - v) % p, p: *p },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::P { v, .. } => {
                write!(f, "{v}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_and_multiplicative_inverses() {
        for kind in [FieldKind::Rational, FieldKind::Prime(DEFAULT_PRIME)] {
            for v in [-7i64, -1, 1, 2, 5, 12345] {
                let a = kind.from_i64(v);
                assert!((&a + &(-&a)).is_zero());
                assert!((&a * &a.inv()).is_one());
            }
        }
    }

    #[test]
    fn prime_mode_rejects_bad_moduli() {
        assert!(FieldKind::prime(2).is_err());
        assert!(FieldKind::prime(15).is_err());
        assert!(FieldKind::prime(32003).is_ok());
    }

    #[test]
    fn rational_display() {
        let f = FieldKind::Rational;
        assert_eq!(f.from_ratio(3, -6).to_string(), "-1/2");
        assert_eq!(f.from_i64(4).to_string(), "4");
    }
}
