//! Exact arithmetic in the real quadratic field `Q(sqrt 2)`.
//!
//! Every coordinate of the binary octahedral group lies in this field, so
//! carrying it exactly makes all group-theoretic checks downstream exact
//! rather than approximate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// An element `a + b*sqrt(2)` with `a`, `b` reduced rationals.
///
/// Equality and ordering are structural on the reduced pair `(a, b)`;
/// [`QSqrt2::numeric_cmp`] compares field elements by real value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    /// The rational `n/d`, as an element of the field.
    pub fn rational(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        QSqrt2 {
            a: BigRational::new(BigInt::from(n), BigInt::from(d)),
            b: BigRational::zero(),
        }
    }

    /// The multiple `(n/d)*sqrt(2)`.
    pub fn rational_sqrt2(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        QSqrt2 {
            a: BigRational::zero(),
            b: BigRational::new(BigInt::from(n), BigInt::from(d)),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(n, 1)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `1/sqrt(2) = sqrt(2)/2`.
    pub fn inv_sqrt2() -> Self {
        Self::rational_sqrt2(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    /// Field inverse; `None` for zero.
    ///
    /// `(a + b sqrt2)^-1 = (a - b sqrt2) / (a^2 - 2 b^2)`; the denominator
    /// vanishes only at zero because sqrt 2 is irrational.
    pub fn recip(&self) -> Option<QSqrt2> {
        if self.is_zero() {
            return None;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let d = &self.a * &self.a - two * &self.b * &self.b;
        debug_assert!(!d.is_zero());
        Some(QSqrt2 {
            a: &self.a / &d,
            b: -&self.b / &d,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().expect("rational out of f64 range");
        let b = self.b.to_f64().expect("rational out of f64 range");
        a + b * std::f64::consts::SQRT_2
    }

    /// Ordering by real value (not the structural `Ord`).
    pub fn numeric_cmp(&self, other: &QSqrt2) -> Ordering {
        let da = &self.a - &other.a;
        let db = &self.b - &other.b;
        // sign of da + db*sqrt(2)
        match (da.is_zero(), db.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return sign_ord(&db),
            (false, true) => return sign_ord(&da),
            _ => {}
        }
        if da.is_positive() == db.is_positive() {
            return sign_ord(&da);
        }
        // opposite signs: compare a^2 against 2 b^2
        let two = BigRational::from_integer(BigInt::from(2));
        let lhs = &da * &da;
        let rhs = two * &db * &db;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sign_ord(&da),
            Ordering::Less => sign_ord(&db),
            Ordering::Equal => Ordering::Equal, // impossible for nonzero db
        }
    }

    pub fn is_positive(&self) -> bool {
        self.numeric_cmp(&QSqrt2::zero()) == Ordering::Greater
    }
}

fn sign_ord(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_zero() {
        Ordering::Equal
    } else {
        Ordering::Less
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + 2 b1 b2 + (a1 b2 + a2 b1) s
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $f:ident),*) => {$(
        impl $trait for QSqrt2 {
            type Output = QSqrt2;
            fn $f(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        -&self
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt2", self.b)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

/// Serializes as `[a_num, a_den, b_num, b_den]`.
impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts = [
            self.a.numer(),
            self.a.denom(),
            self.b.numer(),
            self.b.denom(),
        ];
        let mut seq = serializer.serialize_seq(Some(4))?;
        for p in parts {
            let v = p.to_i64().ok_or_else(|| {
                serde::ser::Error::custom("Q(sqrt2) component exceeds i64 range")
            })?;
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}
