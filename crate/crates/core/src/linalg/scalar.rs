//! Exact scalars over the rationals and the Gaussian rationals.
//!
//! A [`Scalar`] carries its field tag. Arithmetic between a rational and a
//! Gaussian rational promotes to the Gaussian field; matrices reject mixed
//! tags at construction so promotion only happens in scalar-level code.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The two exact fields in use: `Q` and `Q(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rat,
    #[serde(rename = "Qi")]
    GaussRat,
}

impl Field {
    pub fn join(self, other: Field) -> Field {
        if self == Field::GaussRat || other == Field::GaussRat {
            Field::GaussRat
        } else {
            Field::Rat
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rat => f.write_str("Q"),
            Field::GaussRat => f.write_str("Qi"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    /// Real and imaginary parts.
    Gauss(BigRational, BigRational),
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        match field {
            Field::Rat => Scalar::Rat(BigRational::zero()),
            Field::GaussRat => Scalar::Gauss(BigRational::zero(), BigRational::zero()),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: Field, v: i64) -> Self {
        Self::from_ratio(field, v, 1)
    }

    /// `num/den` in the given field. Panics on a zero denominator.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Self {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        match field {
            Field::Rat => Scalar::Rat(q),
            Field::GaussRat => Scalar::Gauss(q, BigRational::zero()),
        }
    }

    pub fn gauss(re: BigRational, im: BigRational) -> Self {
        Scalar::Gauss(re, im)
    }

    pub fn gauss_int(re: i64, im: i64) -> Self {
        Scalar::Gauss(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn imaginary_unit() -> Self {
        Scalar::Gauss(BigRational::zero(), BigRational::one())
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rat,
            Scalar::Gauss(..) => Field::GaussRat,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Gauss(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Gauss(a, b) => a.is_one() && b.is_zero(),
        }
    }

    pub fn re(&self) -> BigRational {
        match self {
            Scalar::Rat(q) => q.clone(),
            Scalar::Gauss(a, _) => a.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            Scalar::Rat(_) => BigRational::zero(),
            Scalar::Gauss(_, b) => b.clone(),
        }
    }

    /// Re-tag into `field`. Fails when dropping a nonzero imaginary part.
    pub fn to_field(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (Scalar::Rat(q), Field::GaussRat) => Ok(Scalar::Gauss(q.clone(), BigRational::zero())),
            (Scalar::Gauss(a, b), Field::Rat) => {
                if b.is_zero() {
                    Ok(Scalar::Rat(a.clone()))
                } else {
                    Err(Error::Field(format!("{self} is not rational")))
                }
            }
            _ => Ok(self.clone()),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Gauss(a, b) => Scalar::Gauss(a.clone(), -b),
        }
    }

    /// `|z|^2`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        match self {
            Scalar::Rat(q) => q * q,
            Scalar::Gauss(a, b) => a * a + b * b,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Gauss(a, b) => {
                let n = a * a + b * b;
                Scalar::Gauss(a / &n, -(b / &n))
            }
        })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn q(v: &BigRational) -> f64 {
            use num_traits::ToPrimitive;
            v.to_f64().unwrap_or(f64::NAN)
        }
        match self {
            Scalar::Rat(a) => (q(a), 0.0),
            Scalar::Gauss(a, b) => (q(a), q(b)),
        }
    }

    fn parts(&self) -> (&BigRational, Option<&BigRational>) {
        match self {
            Scalar::Rat(q) => (q, None),
            Scalar::Gauss(a, b) => (a, Some(b)),
        }
    }
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    gauss: impl Fn(&BigRational, &BigRational, &BigRational, &BigRational) -> (BigRational, BigRational),
) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(rat(x, y)),
        _ => {
            let zero = BigRational::zero();
            let (ar, ai) = a.parts();
            let (br, bi) = b.parts();
            let (r, i) = gauss(ar, ai.unwrap_or(&zero), br, bi.unwrap_or(&zero));
            Scalar::Gauss(r, i)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| x + y, |a, b, c, d| (a + c, b + d))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| x - y, |a, b, c, d| (a - c, b - d))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        binop(
            self,
            rhs,
            |x, y| x * y,
            |a, b, c, d| {
                if b.is_zero() && d.is_zero() {
                    (a * c, BigRational::zero())
                } else {
                    (a * c - b * d, a * d + b * c)
                }
            },
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Gauss(a, b) => Scalar::Gauss(-a, -b),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p/q` for rationals (plain `p` for integers) and `a/b+c/d*i` for Gaussian
/// rationals with zero parts omitted.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => f.write_str(&fmt_rational(q)),
            Scalar::Gauss(a, b) => {
                if b.is_zero() {
                    return f.write_str(&fmt_rational(a));
                }
                let im = format!("{}*i", fmt_rational(&b.abs()));
                if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{im}")
                    } else {
                        f.write_str(&im)
                    }
                } else {
                    let sign = if b.is_negative() { '-' } else { '+' };
                    write!(f, "{}{}{}", fmt_rational(a), sign, im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Scalar {
    /// Parse a scalar string into the requested field.
    pub fn parse(s: &str, field: Field) -> Result<Scalar> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if !t.ends_with('i') {
            return Scalar::Rat(parse_rational(&t)?).to_field(field);
        }
        if field == Field::Rat {
            return Err(Error::Parse(format!("{s:?} is not rational")));
        }
        let body = t.trim_end_matches('i').trim_end_matches('*');
        // split between real and imaginary part at the last sign not in front
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.trim_start_matches('+'))?,
        };
        Ok(Scalar::Gauss(parse_rational(re)?, im))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let field = if s.trim_end().ends_with('i') { Field::GaussRat } else { Field::Rat };
        Scalar::parse(&s, field).map_err(serde::de::Error::custom)
    }
}
