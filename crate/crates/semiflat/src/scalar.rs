//! Exact scalar arithmetic: arbitrary-precision rationals, a single real
//! quadratic extension Q(sqrt(D)) with the embedding sqrt(D) > 0, and the
//! complexification of either.
//!
//! Every coefficient in the crate lives in this tower. Signs and zero tests
//! are decided exactly (integer comparisons), never by floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

/// Convenience constructor for small rational literals.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine sqrt({left}) with sqrt({right}); one quadratic extension per computation")]
    MixedRadicands { left: u64, right: u64 },
    #[error("invalid radicand {0}: need a squarefree integer >= 2")]
    InvalidRadicand(u64),
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

/// Reduce `n >= 2` to `(d, s)` with `n = s^2 * d` and `d` squarefree.
fn squarefree_kernel(n: u64) -> (u64, u64) {
    let mut d = n;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (d, s)
}

/// Which field the scalars of a computation live in: the rationals, or a
/// real quadratic extension by a fixed squarefree radicand.
///
/// A context mostly acts as a validated constructor; each [`Scalar`] carries
/// its own radicand so that arithmetic can reject accidental mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldContext {
    radicand: Option<u64>,
}

impl FieldContext {
    pub fn rational() -> Self {
        FieldContext { radicand: None }
    }

    /// Quadratic extension Q(sqrt(d)); `d` must be squarefree and >= 2.
    pub fn quadratic(d: u64) -> Result<Self, ScalarError> {
        let (kernel, scale) = match d {
            0 | 1 => return Err(ScalarError::InvalidRadicand(d)),
            _ => squarefree_kernel(d),
        };
        if scale != 1 || kernel != d {
            return Err(ScalarError::InvalidRadicand(d));
        }
        Ok(FieldContext { radicand: Some(d) })
    }

    /// Context containing sqrt(n) for arbitrary `n >= 2`: reduces to the
    /// squarefree kernel and returns the context together with the integer
    /// scale `s` such that sqrt(n) = s * sqrt(kernel).
    pub fn splitting(n: u64) -> Result<(Self, u64), ScalarError> {
        if n < 2 {
            return Err(ScalarError::InvalidRadicand(n));
        }
        let (kernel, scale) = squarefree_kernel(n);
        if kernel == 1 {
            // n is a perfect square; sqrt(n) is rational.
            return Ok((FieldContext::rational(), scale));
        }
        Ok((FieldContext { radicand: Some(kernel) }, scale))
    }

    pub fn radicand(&self) -> Option<u64> {
        self.radicand
    }

    /// The generator sqrt(D) of a quadratic context; `None` in the rational one.
    pub fn sqrt(&self) -> Option<Scalar> {
        self.radicand.map(|d| Scalar {
            a: Rational::zero(),
            b: Rational::one(),
            d: Some(d),
        })
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.d.is_none() || s.d == self.radicand
    }
}

/// An element a + b*sqrt(D) of the scalar tower. Rationals have `b = 0` and
/// no radicand; the invariant `b != 0 => d = Some(_)` and `b = 0 => d = None`
/// is maintained by every constructor and operation, so equal field elements
/// compare equal regardless of how they were produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    d: Option<u64>,
}

impl Scalar {
    fn normalized(a: Rational, b: Rational, d: Option<u64>) -> Self {
        if b.is_zero() {
            Scalar { a, b, d: None }
        } else {
            debug_assert!(d.is_some(), "irrational part without a radicand");
            Scalar { a, b, d }
        }
    }

    pub fn zero() -> Self {
        Scalar::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero(), d: None }
    }

    /// a + b*sqrt(D) in the given quadratic context.
    pub fn quadratic(a: Rational, b: Rational, ctx: &FieldContext) -> Self {
        Scalar::normalized(a, b, ctx.radicand)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<u64> {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if this scalar has no irrational part.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn join_radicand(&self, other: &Scalar) -> Result<Option<u64>, ScalarError> {
        match (self.d, other.d) {
            (None, r) => Ok(r),
            (l, None) => Ok(l),
            (Some(l), Some(r)) if l == r => Ok(Some(l)),
            (Some(l), Some(r)) => Err(ScalarError::MixedRadicands { left: l, right: r }),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.join_radicand(other)?;
        Ok(Scalar::normalized(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.join_radicand(other)?;
        Ok(Scalar::normalized(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.join_radicand(other)?;
        // (a + b s)(a' + b' s) = a a' + b b' D + (a b' + b a') s
        let mut a = &self.a * &other.a;
        if let Some(rad) = d {
            let bb = &self.b * &other.b;
            if !bb.is_zero() {
                a += bb * Rational::from(BigInt::from(rad));
            }
        }
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Scalar::normalized(a, b, d))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.checked_inv()?)
    }

    /// Multiplicative inverse: conjugate over the field norm a^2 - b^2 D.
    /// The norm vanishes only at zero because D is squarefree (not a square).
    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self.d {
            None => Ok(Scalar::from_rational(self.a.recip())),
            Some(rad) => {
                let norm = &self.a * &self.a
                    - &self.b * &self.b * Rational::from(BigInt::from(rad));
                debug_assert!(!norm.is_zero());
                Ok(Scalar::normalized(&self.a / &norm, -&self.b / &norm, self.d))
            }
        }
    }

    /// Galois conjugate a - b*sqrt(D); the identity on rationals.
    pub fn galois_conj(&self) -> Scalar {
        Scalar::normalized(self.a.clone(), -&self.b, self.d)
    }

    /// Exact sign under the embedding sqrt(D) > 0: -1, 0 or +1.
    ///
    /// For mixed-sign a, b the result compares a^2 against b^2 D, which
    /// decides |a| vs |b| sqrt(D) without leaving the rationals.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = sign_of(&self.b);
        if sa == sb || sa == 0 {
            return sb;
        }
        if sb == 0 {
            return sa;
        }
        // Opposite strict signs: the sum has the sign of the larger square.
        let rad = Rational::from(BigInt::from(self.d.expect("radicand present")));
        let cmp = (&self.a * &self.a).cmp(&(&self.b * &self.b * rad));
        match cmp {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0, // impossible for squarefree D, kept total
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic in one field context")
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-&self.a, -&self.b, self.d)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Total order within one field context; `None` across different radicands.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(match diff.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let d = self.d.expect("radicand present");
        let surd = |b: &Rational, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if b.is_one() {
                write!(f, "sqrt({d})")
            } else {
                write!(f, "{b}*sqrt({d})")
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
            return surd(&self.b.abs(), f);
        }
        write!(f, "{}", self.a)?;
        write!(f, "{}", if self.b.is_negative() { " - " } else { " + " })?;
        surd(&self.b.abs(), f)
    }
}

/// Wire format: rationals as exact "p/q" strings, radicand as an integer.
/// `b` and `D` are omitted for plain rationals and round-trip bit-exactly.
#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    d: Option<u64>,
}

fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    Rational::from_str(text).map_err(|_| ScalarError::BadRational(text.to_owned()))
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            a: self.a.to_string(),
            b: (!self.b.is_zero()).then(|| self.b.to_string()),
            d: self.d,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let a = parse_rational(&repr.a).map_err(D::Error::custom)?;
        let b = match &repr.b {
            Some(text) => parse_rational(text).map_err(D::Error::custom)?,
            None => Rational::zero(),
        };
        if !b.is_zero() {
            let d = repr.d.ok_or_else(|| D::Error::custom("missing radicand D"))?;
            FieldContext::quadratic(d).map_err(D::Error::custom)?;
            return Ok(Scalar::normalized(a, b, Some(d)));
        }
        Ok(Scalar::from_rational(a))
    }
}

/// Complexification re + im*i of the real tower. Conjugation is the complex
/// one; the Galois conjugate acts on both parts separately when needed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl CScalar {
    pub fn zero() -> Self {
        CScalar { re: Scalar::zero(), im: Scalar::zero() }
    }

    pub fn one() -> Self {
        CScalar { re: Scalar::one(), im: Scalar::zero() }
    }

    pub fn i() -> Self {
        CScalar { re: Scalar::zero(), im: Scalar::one() }
    }

    pub fn from_int(n: i64) -> Self {
        CScalar::from(Scalar::from_int(n))
    }

    pub fn from_rational(a: Rational) -> Self {
        CScalar::from(Scalar::from_rational(a))
    }

    pub fn new(re: Scalar, im: Scalar) -> Self {
        CScalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> CScalar {
        CScalar { re: self.re.clone(), im: -&self.im }
    }

    /// |z|^2 = re^2 + im^2, a nonnegative real scalar.
    pub fn norm_sq(&self) -> Scalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn checked_add(&self, o: &CScalar) -> Result<CScalar, ScalarError> {
        Ok(CScalar {
            re: self.re.checked_add(&o.re)?,
            im: self.im.checked_add(&o.im)?,
        })
    }

    pub fn checked_sub(&self, o: &CScalar) -> Result<CScalar, ScalarError> {
        Ok(CScalar {
            re: self.re.checked_sub(&o.re)?,
            im: self.im.checked_sub(&o.im)?,
        })
    }

    pub fn checked_mul(&self, o: &CScalar) -> Result<CScalar, ScalarError> {
        Ok(CScalar {
            re: self.re.checked_mul(&o.re)?.checked_sub(&self.im.checked_mul(&o.im)?)?,
            im: self.re.checked_mul(&o.im)?.checked_add(&self.im.checked_mul(&o.re)?)?,
        })
    }

    pub fn checked_inv(&self) -> Result<CScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(CScalar {
            re: self.re.checked_div(&n)?,
            im: (-&self.im).checked_div(&n)?,
        })
    }

    pub fn checked_div(&self, o: &CScalar) -> Result<CScalar, ScalarError> {
        self.checked_mul(&o.checked_inv()?)
    }

    pub fn scale_rational(&self, r: &Rational) -> CScalar {
        let s = Scalar::from_rational(r.clone());
        CScalar { re: &self.re * &s, im: &self.im * &s }
    }
}

impl From<Scalar> for CScalar {
    fn from(re: Scalar) -> Self {
        CScalar { re, im: Scalar::zero() }
    }
}

macro_rules! cscalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &CScalar {
            type Output = CScalar;
            fn $method(self, rhs: &CScalar) -> CScalar {
                self.$checked(rhs).expect("scalar arithmetic in one field context")
            }
        }
        impl $trait for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: CScalar) -> CScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

cscalar_binop!(Add, add, checked_add);
cscalar_binop!(Sub, sub, checked_sub);
cscalar_binop!(Mul, mul, checked_mul);
cscalar_binop!(Div, div, checked_div);

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_str = if self.im == Scalar::one() {
            "i".to_owned()
        } else if self.im == Scalar::from_int(-1) {
            "-i".to_owned()
        } else if self.im.is_rational() {
            format!("{}i", self.im)
        } else {
            format!("({})i", self.im)
        };
        if self.re.is_zero() {
            return write!(f, "{im_str}");
        }
        if let Some(negated) = im_str.strip_prefix('-') {
            write!(f, "{} - {}", self.re, negated)
        } else {
            write!(f, "{} + {}", self.re, im_str)
        }
    }
}
