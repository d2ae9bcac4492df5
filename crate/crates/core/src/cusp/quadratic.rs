//! Exact arithmetic in a real quadratic field Q(√d).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `p + q·√d` with `d` square-free. When `q = 0` the field tag is reset to
/// `d = 1`, so structural equality is equality of real numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    p: BigRational,
    q: BigRational,
    d: u64,
}

/// Splits `n > 0` as `k²·m` with `m` square-free; returns `(k, m)`.
pub fn square_free_split(n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut m = n;
    let mut f = 2u64;
    while f.saturating_mul(f) <= m {
        while m.is_multiple_of(f * f) {
            m /= f * f;
            k *= f;
        }
        f += 1;
    }
    (k, m)
}

impl QuadraticReal {
    /// `p + q√d`. `d` must be square-free and positive; use [`Self::surd`]
    /// for arbitrary radicands.
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Result<Self> {
        if d == 0 || square_free_split(d).0 != 1 {
            return Err(Error::Modulus {
                input: format!("sqrt({d})"),
                reason: "radicand must be a positive square-free integer".into(),
            });
        }
        Ok(Self::normalized(p, q, d))
    }

    fn normalized(p: BigRational, q: BigRational, d: u64) -> Self {
        if q.is_zero() {
            QuadraticReal { p, q, d: 1 }
        } else if d == 1 {
            QuadraticReal { p: p + q, q: BigRational::zero(), d: 1 }
        } else {
            QuadraticReal { p, q, d }
        }
    }

    pub fn rational(p: BigRational) -> Self {
        Self::normalized(p, BigRational::zero(), 1)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    /// `√n` for any `n ≥ 0`, with square factors pulled out.
    pub fn surd(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (k, m) = square_free_split(n);
        Self::normalized(
            BigRational::zero(),
            BigRational::from_integer(k.into()),
            m,
        )
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// Field tag; 1 for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// -1, 0 or 1, decided exactly.
    pub fn signum(&self) -> i8 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sp >= 0 && sq >= 0 {
            return (sp + sq).signum();
        }
        if sp <= 0 && sq <= 0 {
            return -1;
        }
        // opposite signs: compare p² with q²d
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * BigRational::from_integer(self.d.into());
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// The common field of two values, if any.
    pub fn field_with(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, e) | (e, 1) => Ok(e),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::FieldMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        Ok(Self::normalized(&self.p + &other.p, &self.q + &other.q, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        let dd = BigRational::from_integer(d.into());
        Ok(Self::normalized(
            &self.p * &other.p + &self.q * &other.q * dd,
            &self.p * &other.q + &self.q * &other.p,
            d,
        ))
    }

    /// Multiplicative inverse via the conjugate. `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(self.d.into());
        Some(Self::normalized(&self.p / &norm, -(&self.q / &norm), self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.recip().ok_or_else(|| Error::Modulus {
            input: format!("{self}/{other}"),
            reason: "division by zero".into(),
        })?;
        self.checked_mul(&inv)
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        // floor(p) + floor(q√d) is within one of the answer
        let mut k = self.p.floor().to_integer();
        if !self.q.is_zero() {
            let x = &self.q * &self.q * BigRational::from_integer(self.d.into());
            let s = x.floor().to_integer().sqrt();
            let exact = BigRational::from_integer(&s * &s) == x;
            k += if self.q.is_positive() {
                s
            } else if exact {
                -s
            } else {
                -s - 1
            };
        }
        let at = |k: &BigInt| Self::rational(BigRational::from_integer(k.clone()));
        while (self - &at(&k)).signum() < 0 {
            k -= 1;
        }
        while (self - &at(&(&k + 1))).signum() >= 0 {
            k += 1;
        }
        k
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * (self.d as f64).sqrt()
    }

    /// True when the printed form has two terms.
    pub fn is_compound(&self) -> bool {
        !self.p.is_zero() && !self.q.is_zero()
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadraticReal {
    /// `p`, `q*sqrt(d)` or `p+q*sqrt(d)`, with `q = ±1` written as `±sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        if !self.p.is_zero() {
            write!(f, "{}", self.p)?;
            if self.q.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.q.is_one() {
            write!(f, "sqrt({})", self.d)
        } else if (-&self.q).is_one() {
            write!(f, "-sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", self.q, self.d)
        }
    }
}

impl Neg for &QuadraticReal {
    type Output = QuadraticReal;
    fn neg(self) -> QuadraticReal {
        QuadraticReal::normalized(-&self.p, -&self.q, self.d)
    }
}

impl Neg for QuadraticReal {
    type Output = QuadraticReal;
    fn neg(self) -> QuadraticReal {
        -&self
    }
}

// The operator forms panic when the fields differ; mixing fields is a logic
// error inside this crate, where every value of a modulus shares one field.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadraticReal> for &QuadraticReal {
            type Output = QuadraticReal;
            fn $method(self, rhs: &QuadraticReal) -> QuadraticReal {
                self.$checked(rhs).expect("operands in one quadratic field")
            }
        }
        impl $trait<QuadraticReal> for QuadraticReal {
            type Output = QuadraticReal;
            fn $method(self, rhs: QuadraticReal) -> QuadraticReal {
                (&self).$checked(&rhs).expect("operands in one quadratic field")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);
