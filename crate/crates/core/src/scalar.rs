//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Linear algebra, the simplex method and the double description method are
//! written once against [`Scalar`]. Instantiated with [`Rational`] every
//! comparison is exact; instantiated with `f64`/`f32` comparisons use a small
//! absolute tolerance.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    /// Tolerance-aware sign. Exact types compare against zero directly.
    fn sign(&self) -> Ordering;

    fn to_f64(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Rescale a direction vector to a canonical representative of its ray.
    ///
    /// Exact types produce the primitive integer vector; floating types
    /// divide by the largest absolute entry.
    fn normalize_direction(v: &mut [Self]);

    fn is_negligible(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn is_strictly_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_strictly_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn sign(&self) -> Ordering {
                if self.abs() <= $eps {
                    Ordering::Equal
                } else if *self > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn normalize_direction(v: &mut [Self]) {
                let m = v.iter().fold(0.0 as $t, |m, x| m.max(x.abs()));
                if m > 0.0 {
                    v.iter_mut().for_each(|x| *x /= m);
                }
            }
        }
    };
}

float_scalar!(f64, 1e-12);
float_scalar!(f32, 1e-6);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn sign(&self) -> Ordering {
        self.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn normalize_direction(v: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in v.iter() {
            lcm = lcm.lcm(x.denom());
        }
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        let mut gcd = BigInt::zero();
        for x in &ints {
            gcd = gcd.gcd(x);
        }
        if gcd.is_zero() {
            return;
        }
        for (slot, x) in v.iter_mut().zip(ints) {
            *slot = BigRational::from_integer(x / &gcd);
        }
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, `"p"` or a terminating decimal such as `"0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(&digits).map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Rational {
    BigRational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn best_rational_approx(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let target = rational_from_f64(x);
    let max_den = BigInt::from(max_den.max(1));
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            // Best semiconvergent that still fits.
            let t = (&max_den - &q0) / &q1;
            let cand_semi = BigRational::new(&p0 + &t * &p1, &q0 + &t * &q1);
            let cand_conv = BigRational::new(p1.clone(), q1.clone());
            let d_semi = (&cand_semi - &target).abs();
            let d_conv = (&cand_conv - &target).abs();
            return if d_semi < d_conv { cand_semi } else { cand_conv };
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return BigRational::new(p1, q1);
        }
        rest = frac.recip();
    }
}

/// The rational with the smallest denominator among the continued-fraction
/// convergents of `x` that lies within `eps` of `x`.
pub fn simplest_rational_within(x: f64, eps: f64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let target = rational_from_f64(x);
    let eps = rational_from_f64(eps.abs());
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let p2 = &p0 + &a * &p1;
        let q2 = &q0 + &a * &q1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let cand = BigRational::new(p1.clone(), q1.clone());
        if (&cand - &target).abs() <= eps {
            return cand;
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return cand;
        }
        rest = frac.recip();
    }
}

/// Round to the nearest multiple of `1/den`.
pub fn round_to_denominator(x: f64, den: u64) -> Rational {
    let scaled = rational_from_f64(x) * BigRational::from_integer(BigInt::from(den));
    BigRational::new(scaled.round().to_integer(), BigInt::from(den))
}

pub fn cmp_zero<T: Scalar>(x: &T) -> Ordering {
    x.sign()
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod matrix {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            m: &[Vec<Rational>],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(m.len()))?;
            for row in m {
                let row: Vec<String> = row.iter().map(format_rational).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
            let m = Vec::<Vec<String>>::deserialize(d)?;
            m.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_rational(s).map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn format_round_trip() {
        for r in [rat(40, 41), int(3), rat(-5, 12), int(0)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn best_approx_recovers_small_fractions() {
        assert_eq!(best_rational_approx(5.0 / 12.0 + 1e-11, 1_000_000), rat(5, 12));
        assert_eq!(best_rational_approx(0.975609756097561, 1000), rat(40, 41));
        assert_eq!(best_rational_approx(-0.5, 10), rat(-1, 2));
        assert_eq!(best_rational_approx(3.0, 10), int(3));
        let pi = best_rational_approx(std::f64::consts::PI, 1000);
        assert_eq!(pi, rat(355, 113));
    }

    #[test]
    fn simplest_within_tolerance() {
        assert_eq!(simplest_rational_within(205.0 / 1716.0 + 3e-9, 1e-7), rat(205, 1716));
        assert_eq!(simplest_rational_within(0.3333, 1e-3), rat(1, 3));
        assert_eq!(simplest_rational_within(-2.0, 1e-9), int(-2));
    }

    #[test]
    fn primitive_directions() {
        let mut v = vec![rat(1, 2), rat(-3, 4), int(0)];
        Rational::normalize_direction(&mut v);
        assert_eq!(v, vec![int(2), int(-3), int(0)]);
        let mut f = vec![2.0f64, -4.0];
        f64::normalize_direction(&mut f);
        assert_eq!(f, vec![0.5, -1.0]);
    }

    #[test]
    fn float_sign_tolerance() {
        assert_eq!(1e-14f64.sign(), Ordering::Equal);
        assert_eq!((-1e-3f64).sign(), Ordering::Less);
        assert_eq!(rat(-1, 1_000_000_000).sign(), Ordering::Less);
    }
}
