//! Coefficient rings: exact rationals and approximate complex numbers.
//!
//! Symbolic objects ([`NCPoly`](crate::NCPoly), [`CyclicPoly`](crate::CyclicPoly), ...)
//! are generic over a [`Coeff`] type.  The default is the exact rational field
//! [`Rational`]; [`Complex64`] is used where a module explicitly accepts
//! floating-point complex data (representation schemes, nonabelian McKay).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Build a rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Build the integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A coefficient ring usable inside symbolic polynomials.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this ring is exact.
    const EXACT: bool;
    /// Embed an exact rational.
    fn from_rational(q: &Rational) -> Self;
    /// Convert to the tagged I/O representation.
    fn to_scalar(&self) -> Scalar;
    /// Convert from the tagged I/O representation, refusing lossy conversions.
    fn from_scalar(s: &Scalar) -> Result<Self>;
    /// Convert to a complex double (lossy for big rationals).
    fn to_complex(&self) -> Complex64;
    /// Render for human-readable output.
    fn render(&self) -> String;
}

impl Coeff for Rational {
    const EXACT: bool = true;
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Complex(_) => Err(Error::Domain(
                "complex coefficient where an exact rational is required".into(),
            )),
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Complex(*self)
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        Ok(s.to_complex())
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn render(&self) -> String {
        if self.im.abs() <= 1e-12 * self.re.abs().max(1.0) {
            fmt_float(self.re)
        } else {
            let im = fmt_float(self.im.abs());
            format!("({}{}{}i)", fmt_float(self.re), if self.im < 0.0 { "-" } else { "+" }, im)
        }
    }
}

/// Display form of a float: integers without a fractional part, otherwise
/// twelve decimals with trailing zeros trimmed.
fn fmt_float(x: f64) -> String {
    if (x - x.round()).abs() <= 1e-12 * x.abs().max(1.0) {
        return format!("{}", x.round() as i64);
    }
    let s = format!("{x:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Lossy conversion of a rational to `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators/denominators before dividing.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Tagged scalar used at I/O boundaries.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    /// Exact rational, reduced, positive denominator.
    Rational(Rational),
    /// Complex double.
    Complex(Complex64),
}

impl Scalar {
    /// The scalar as a complex double.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => r.to_complex(),
            Scalar::Complex(c) => *c,
        }
    }
}

impl Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Complex(c) => write!(f, "{}", c.render()),
        }
    }
}

/// An integer in JSON: a number, or a decimal string for big values.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(n) => Ok(BigInt::from(*n)),
            JsonInt::Big(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Json(format!("`{}` is not an integer", s))),
        }
    }
    fn from_bigint(n: &BigInt) -> JsonInt {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Rational {
        num: JsonInt,
        #[serde(default = "one_int")]
        den: JsonInt,
    },
    Complex {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    Int(i64),
}

fn one_int() -> JsonInt {
    JsonInt::Small(1)
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(r) => JsonScalar::Rational {
                num: JsonInt::from_bigint(r.numer()),
                den: JsonInt::from_bigint(r.denom()),
            }
            .serialize(s),
            Scalar::Complex(c) => JsonScalar::Complex { re: c.re, im: c.im }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match JsonScalar::deserialize(d)? {
            JsonScalar::Rational { num, den } => {
                let n = num.to_bigint().map_err(D::Error::custom)?;
                let dd = den.to_bigint().map_err(D::Error::custom)?;
                if dd.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Scalar::Rational(Rational::new(n, dd)))
            }
            JsonScalar::Complex { re, im } => Ok(Scalar::Complex(Complex64::new(re, im))),
            JsonScalar::Int(n) => Ok(Scalar::Rational(qi(n))),
        }
    }
}

/// Render a coefficient in front of a monomial: `""` for 1, `"-"` for −1.
pub(crate) fn coeff_prefix<K: Coeff>(c: &K) -> (bool, String) {
    let neg = if K::EXACT {
        let r = c.to_scalar();
        matches!(r, Scalar::Rational(ref r) if r.is_negative())
    } else {
        let z = c.to_complex();
        z.im.abs() <= 1e-12 * z.re.abs().max(1.0) && z.re < 0.0
    };
    let mag = if neg { -c.clone() } else { c.clone() };
    let r = mag.render();
    let s = if mag.is_one() || r == "1" { String::new() } else { r };
    (neg, s)
}
